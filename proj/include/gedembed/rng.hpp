#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace gedembed {

// Derives an independent stream seed from (root, purpose, counter). Every
// random decision in the pipeline draws from a purpose-named stream so that
// adding a stage never shifts another stage's stream.
uint64_t derive_seed(uint64_t root, std::string_view purpose, uint64_t counter = 0);

// Deterministic RNG. The raw engine output is specified bit-exactly by the
// standard; the distribution helpers below are hand-rolled so results do not
// depend on the standard library implementation.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  static Rng derived(uint64_t root, std::string_view purpose, uint64_t counter = 0) {
    return Rng(derive_seed(root, purpose, counter));
  }

  uint64_t next_u64() { return engine_(); }

  // Unbiased integer in [0, n); n >= 1.
  uint64_t bounded(uint64_t n);

  // Inclusive range [lo, hi].
  int64_t uniform_int(int64_t lo, int64_t hi);

  // Uniform in [0, 1) with 53 random bits.
  double uniform_real();

  // Uniform in [lo, hi).
  double uniform_real(double lo, double hi);

  bool bernoulli(double p) { return uniform_real() < p; }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (size_t i = v.size(); i > 1; --i) {
      size_t j = static_cast<size_t>(bounded(i));
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace gedembed
