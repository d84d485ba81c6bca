#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>
#include <vector>

#include "gedembed/errors.hpp"
#include "gedembed/rng.hpp"
#include "gedembed/tensor/grad_check.hpp"
#include "gedembed/tensor/tape.hpp"
#include "gedembed/tensor/tensor.hpp"

using namespace gedembed;

namespace {

Tensor random_tensor(int r, int c, Rng& rng, double lo = -1.0, double hi = 1.0) {
  Tensor t(r, c);
  for (auto& v : t.data) v = rng.uniform_real(lo, hi);
  return t;
}

using Builder = std::function<Var(Tape&, const std::vector<Var>&)>;

// Runs the finite-difference check for a scalar graph built from `params`.
GradCheckReport check_builder(const Builder& build, const std::vector<Tensor>& params,
                              double step = 1e-6, double tol = 1e-4) {
  auto value = [&](const std::vector<Tensor>& p) {
    Tape tape;
    std::vector<Var> vars;
    for (size_t i = 0; i < p.size(); ++i) vars.push_back(tape.param(p[i], static_cast<int>(i)));
    return tape.value(build(tape, vars)).scalar_value();
  };
  auto grads = [&](const std::vector<Tensor>& p) {
    Tape tape;
    std::vector<Var> vars;
    for (size_t i = 0; i < p.size(); ++i) vars.push_back(tape.param(p[i], static_cast<int>(i)));
    GradientMap gm = tape.backward(build(tape, vars));
    std::vector<Tensor> out;
    for (size_t i = 0; i < p.size(); ++i) {
      const Tensor* g = gm.find(static_cast<int>(i));
      out.push_back(g ? *g : Tensor(p[i].rows, p[i].cols));
    }
    return out;
  };
  return finite_diff_check(value, grads, params, step, tol);
}

// Reduces any tensor to a scalar with nonzero gradient everywhere.
Var reduce_to_scalar(Var v) {
  return row_sum(transpose(row_sum(square(v))));
}

}  // namespace

TEST_CASE("rng streams are purpose-separated and reproducible") {
  CHECK(derive_seed(7, "split") == derive_seed(7, "split"));
  CHECK(derive_seed(7, "split") != derive_seed(7, "init"));
  CHECK(derive_seed(7, "split", 0) != derive_seed(7, "split", 1));
  CHECK(derive_seed(7, "split") != derive_seed(8, "split"));

  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
}

TEST_CASE("rng bounded stays in range and hits every value") {
  Rng rng(1);
  std::vector<int> seen(5, 0);
  for (int i = 0; i < 2000; ++i) {
    uint64_t v = rng.bounded(5);
    REQUIRE(v < 5);
    ++seen[static_cast<size_t>(v)];
  }
  for (int count : seen) CHECK(count > 300);
}

TEST_CASE("rng uniform_real covers [0,1)") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    double v = rng.uniform_real();
    REQUIRE(v >= 0.0);
    REQUIRE(v < 1.0);
  }
}

TEST_CASE("tensor construction validates shape") {
  CHECK_THROWS_AS(Tensor(2, 2, {1.0, 2.0}), Error);
  Tensor id = Tensor::identity(3);
  CHECK(id.at(0, 0) == 1.0);
  CHECK(id.at(0, 1) == 0.0);
  CHECK(Tensor::scalar(4.0).scalar_value() == 4.0);
}

TEST_CASE("relu clamps negatives to zero") {
  Tape tape;
  Var x = tape.constant(Tensor::row({-1.0, 0.0, 2.0}));
  const Tensor& out = tape.value(relu(x));
  CHECK(out.data == std::vector<double>{0.0, 0.0, 2.0});
}

TEST_CASE("sigmoid of zero is one half") {
  Tape tape;
  Var x = tape.constant(Tensor::scalar(0.0));
  CHECK(tape.value(sigmoid(x)).scalar_value() == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("matmul by identity is identity") {
  Tape tape;
  Rng rng(5);
  Tensor a = random_tensor(3, 4, rng);
  Var out = matmul(tape.constant(Tensor::identity(3)), tape.constant(a));
  CHECK(max_abs_diff(tape.value(out), a) == 0.0);
}

TEST_CASE("squared l2 row difference of unit offset is one") {
  Tape tape;
  Var a = tape.constant(Tensor::row({1.0, 0.0}));
  Var b = tape.constant(Tensor::row({0.0, 0.0}));
  CHECK(tape.value(squared_l2_rowdiff(a, b)).scalar_value() == 1.0);
}

TEST_CASE("backward of square at 3 gives 6") {
  Tape tape;
  Var x = tape.param(Tensor::scalar(3.0), 0);
  GradientMap gm = tape.backward(square(x));
  REQUIRE(gm.find(0) != nullptr);
  CHECK(gm.find(0)->scalar_value() == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("backward of sigmoid at 0 gives quarter") {
  Tape tape;
  Var x = tape.param(Tensor::scalar(0.0), 0);
  GradientMap gm = tape.backward(sigmoid(x));
  CHECK(gm.find(0)->scalar_value() == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("parameter used twice accumulates gradient") {
  Tape tape;
  Var x = tape.param(Tensor::scalar(1.5), 0);
  GradientMap gm = tape.backward(add(x, x));
  CHECK(gm.find(0)->scalar_value() == 2.0);
}

TEST_CASE("backward requires a scalar loss") {
  Tape tape;
  Var x = tape.param(Tensor::row({1.0, 2.0}), 0);
  CHECK_THROWS_AS(tape.backward(x), Error);
}

TEST_CASE("shape mismatch is rejected") {
  Tape tape;
  Var a = tape.constant(Tensor(2, 3, 1.0));
  Var b = tape.constant(Tensor(3, 2, 1.0));
  CHECK_THROWS_AS(add(a, b), Error);
  CHECK_THROWS_AS(mul(a, b), Error);
  CHECK_THROWS_AS(matmul(a, a), Error);
}

TEST_CASE("non-finite forward output raises a numeric error") {
  Tape tape;
  Var huge = tape.constant(Tensor::scalar(1e308));
  CHECK_THROWS_AS(mul(huge, huge), Error);
  try {
    Tape t2;
    Var h = t2.constant(Tensor::scalar(1e308));
    mul(h, h);
  } catch (const Error& e) {
    CHECK(e.category() == ErrorCategory::numeric);
  }
}

TEST_CASE("three layer mlp gradient matches finite differences") {
  Rng rng(11);
  std::vector<Tensor> params = {
      random_tensor(4, 6, rng), random_tensor(1, 6, rng), random_tensor(6, 5, rng),
      random_tensor(1, 5, rng), random_tensor(5, 1, rng), random_tensor(1, 1, rng),
  };
  Tensor input = random_tensor(1, 4, rng, 0.1, 1.0);
  Builder mlp = [&](Tape& tape, const std::vector<Var>& p) {
    Var x = tape.constant(input);
    Var h1 = relu(add(matmul(x, p[0]), p[1]));
    Var h2 = relu(add(matmul(h1, p[2]), p[3]));
    Var out = add(matmul(h2, p[4]), p[5]);
    return square(out);
  };
  GradCheckReport report = check_builder(mlp, params, 1e-6, 1e-5);
  CHECK(report.passed);
  CHECK(report.max_rel_err < 1e-5);
}

TEST_CASE("every kernel op passes a finite difference check") {
  Rng rng(17);
  auto offset = [&](int r, int c) { return random_tensor(r, c, rng, 0.2, 1.2); };

  SUBCASE("matmul") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(matmul(p[0], p[1]));
          }, {offset(3, 4), offset(4, 2)}).passed);
  }
  SUBCASE("add and sub") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(sub(add(p[0], p[1]), p[2]));
          }, {offset(2, 3), offset(2, 3), offset(2, 3)}).passed);
  }
  SUBCASE("scale") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(scale(p[0], -1.7));
          }, {offset(2, 3)}).passed);
  }
  SUBCASE("scalar_mul") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(scalar_mul(p[0], p[1]));
          }, {offset(1, 1), offset(2, 3)}).passed);
  }
  SUBCASE("mul") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(mul(p[0], p[1]));
          }, {offset(2, 3), offset(2, 3)}).passed);
  }
  SUBCASE("relu away from the kink") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(relu(p[0]));
          }, {offset(2, 3)}).passed);
  }
  SUBCASE("sigmoid") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(sigmoid(p[0]));
          }, {offset(2, 3)}).passed);
  }
  SUBCASE("concat_cols") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(concat_cols({p[0], p[1], p[2]}));
          }, {offset(2, 2), offset(2, 3), offset(2, 1)}).passed);
  }
  SUBCASE("row_sum row_mean col_mean") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(row_sum(p[0]));
          }, {offset(3, 4)}).passed);
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(row_mean(p[0]));
          }, {offset(3, 4)}).passed);
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(col_mean(p[0]));
          }, {offset(3, 4)}).passed);
  }
  SUBCASE("tile_rows") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(tile_rows(p[0], 4));
          }, {offset(1, 3)}).passed);
  }
  SUBCASE("transpose") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(transpose(p[0]));
          }, {offset(2, 5)}).passed);
  }
  SUBCASE("squared_l2_rowdiff") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return squared_l2_rowdiff(p[0], p[1]);
          }, {offset(1, 4), offset(1, 4)}).passed);
  }
  SUBCASE("dot") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return dot(p[0], p[1]);
          }, {offset(1, 4), offset(1, 4)}).passed);
  }
  SUBCASE("square") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(square(p[0]));
          }, {offset(2, 3)}).passed);
  }
  SUBCASE("take_row") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return reduce_to_scalar(take_row(p[0], 1));
          }, {offset(3, 4)}).passed);
  }
  SUBCASE("softmax cross entropy") {
    CHECK(check_builder([](Tape&, const std::vector<Var>& p) {
            return softmax_xent(p[0], 2);
          }, {offset(1, 5)}).passed);
  }
}

TEST_CASE("backward twice on one tape gives identical gradients") {
  Rng rng(23);
  Tape tape;
  Var w = tape.param(random_tensor(3, 3, rng), 0);
  Var x = tape.constant(random_tensor(1, 3, rng));
  Var loss = reduce_to_scalar(sigmoid(matmul(x, w)));
  GradientMap g1 = tape.backward(loss);
  GradientMap g2 = tape.backward(loss);
  REQUIRE(g1.find(0) != nullptr);
  REQUIRE(g2.find(0) != nullptr);
  CHECK(max_abs_diff(*g1.find(0), *g2.find(0)) == 0.0);
}

TEST_CASE("concat gradient slices match per-input gradients") {
  Rng rng(29);
  Tensor a = random_tensor(2, 2, rng), b = random_tensor(2, 3, rng);
  Tensor weights = random_tensor(2, 5, rng);

  Tape tape;
  Var va = tape.param(a, 0);
  Var vb = tape.param(b, 1);
  Var cat = concat_cols({va, vb});
  Var loss = reduce_to_scalar(mul(cat, tape.constant(weights)));
  GradientMap gm = tape.backward(loss);

  // Same loss with the concatenated tensor as one parameter.
  Tensor joined(2, 5);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) joined.at(r, c) = a.at(r, c);
    for (int c = 0; c < 3; ++c) joined.at(r, 2 + c) = b.at(r, c);
  }
  Tape tape2;
  Var vj = tape2.param(joined, 0);
  GradientMap gm2 = tape2.backward(reduce_to_scalar(mul(vj, tape2.constant(weights))));

  const Tensor& ga = *gm.find(0);
  const Tensor& gb = *gm.find(1);
  const Tensor& gj = *gm2.find(0);
  for (int r = 0; r < 2; ++r) {
    for (int c = 0; c < 2; ++c) CHECK(ga.at(r, c) == doctest::Approx(gj.at(r, c)).epsilon(1e-12));
    for (int c = 0; c < 3; ++c)
      CHECK(gb.at(r, c) == doctest::Approx(gj.at(r, 2 + c)).epsilon(1e-12));
  }
}

TEST_CASE("finite difference checker accepts x squared at 1") {
  auto value = [](const std::vector<Tensor>& p) { return p[0].scalar_value() * p[0].scalar_value(); };
  auto grads = [](const std::vector<Tensor>& p) {
    return std::vector<Tensor>{Tensor::scalar(2.0 * p[0].scalar_value())};
  };
  GradCheckReport report = finite_diff_check(value, grads, {Tensor::scalar(1.0)}, 1e-6, 1e-6);
  CHECK(report.passed);
}

TEST_CASE("finite difference checker accepts a dead relu region") {
  auto value = [](const std::vector<Tensor>& p) { return std::max(0.0, p[0].scalar_value()); };
  auto grads = [](const std::vector<Tensor>&) { return std::vector<Tensor>{Tensor::scalar(0.0)}; };
  GradCheckReport report = finite_diff_check(value, grads, {Tensor::scalar(-2.0)}, 1e-6, 1e-6);
  CHECK(report.passed);
}

TEST_CASE("finite difference checker rejects a wrong gradient") {
  auto value = [](const std::vector<Tensor>& p) {
    Tape tape;
    return tape.value(sigmoid(tape.param(p[0], 0))).scalar_value();
  };
  auto grads = [](const std::vector<Tensor>& p) {
    Tape tape;
    GradientMap gm = tape.backward(sigmoid(tape.param(p[0], 0)));
    Tensor g = *gm.find(0);
    g.data[0] = -g.data[0];
    return std::vector<Tensor>{g};
  };
  GradCheckReport report = finite_diff_check(value, grads, {Tensor::scalar(0.7)}, 1e-6, 1e-4);
  CHECK_FALSE(report.passed);
}

TEST_CASE("finite difference checker validates the step") {
  auto value = [](const std::vector<Tensor>&) { return 0.0; };
  auto grads = [](const std::vector<Tensor>&) { return std::vector<Tensor>{Tensor::scalar(0.0)}; };
  CHECK_THROWS_AS(finite_diff_check(value, grads, {Tensor::scalar(0.0)}, 0.0, 1e-4), Error);
}
