#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gedembed/model/model.hpp"
#include "gedembed/tensor/tensor.hpp"

namespace gedembed {

struct LogRegConfig {
  double l2 = 1e-4;
  int epochs = 500;
  double lr = 0.1;
  std::uint64_t seed = 0;  // kept for interface stability; zero init is deterministic

  void validate() const;
};

struct LogRegModel {
  std::vector<std::string> classes;  // sorted; logit column order
  Tensor w;                          // D x C
  Tensor b;                          // 1 x C
};

// Multinomial logistic regression fit by full-batch gradient descent from a
// zero initialization. The objective is mean cross-entropy plus (l2/2)|w|^2
// (biases unpenalized), which is strictly convex for l2 > 0.
LogRegModel logreg_train(const std::vector<GraphEmbedding>& embeddings,
                         const std::vector<std::string>& labels, const LogRegConfig& cfg);

// The regularized objective of the model on a labeled set.
double logreg_objective(const LogRegModel& model, const std::vector<GraphEmbedding>& embeddings,
                        const std::vector<std::string>& labels, double l2);

std::vector<double> logreg_logits(const LogRegModel& model, const GraphEmbedding& h);

// Argmax class; logit ties resolve to the earliest (lexicographically
// smallest) class.
std::string logreg_predict(const LogRegModel& model, const GraphEmbedding& h);

double classification_accuracy(const LogRegModel& model,
                               const std::vector<GraphEmbedding>& embeddings,
                               const std::vector<std::string>& labels);

}  // namespace gedembed
