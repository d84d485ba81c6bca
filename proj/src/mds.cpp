#include "gedembed/eval/mds.hpp"

#include <Eigen/Dense>
#include <cmath>

#include "gedembed/errors.hpp"

namespace gedembed {

Projection project_2d(const std::vector<GraphEmbedding>& embeddings) {
  size_t n = embeddings.size();
  if (n < 2) throw_validation("project_2d: need at least 2 embeddings");
  int d = embeddings.front().dim();
  for (const GraphEmbedding& e : embeddings)
    if (e.dim() != d) throw_validation("project_2d: inconsistent embedding dims");

  Eigen::MatrixXd sq(n, n);
  bool any_distinct = false;
  for (size_t i = 0; i < n; ++i) {
    sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 0.0;
    for (size_t j = i + 1; j < n; ++j) {
      double dist = predict_distance(embeddings[i], embeddings[j]);
      if (dist > 0.0) any_distinct = true;
      sq(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = dist;
      sq(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = dist;
    }
  }

  Projection out;
  out.coords.assign(n, {0.0, 0.0});
  if (!any_distinct) {
    out.degenerate = true;
    return out;
  }

  Eigen::Index en = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd j =
      Eigen::MatrixXd::Identity(en, en) - Eigen::MatrixXd::Constant(en, en, 1.0 / double(n));
  Eigen::MatrixXd b = -0.5 * j * sq * j;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw_numeric("project_2d: eigendecomposition failed");

  // Eigenvalues arrive ascending; the top two sit at the end.
  for (int axis = 0; axis < 2; ++axis) {
    Eigen::Index col = en - 1 - axis;
    double lambda = solver.eigenvalues()(col);
    if (lambda <= 0.0) continue;
    double s = std::sqrt(lambda);
    Eigen::VectorXd v = solver.eigenvectors().col(col);
    Eigen::Index flip_at = 0;
    v.cwiseAbs().maxCoeff(&flip_at);
    double sign = v(flip_at) < 0.0 ? -1.0 : 1.0;
    for (size_t i = 0; i < n; ++i)
      out.coords[i][static_cast<size_t>(axis)] =
          sign * s * v(static_cast<Eigen::Index>(i));
  }
  return out;
}

}  // namespace gedembed
