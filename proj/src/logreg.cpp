#include "gedembed/eval/logreg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "gedembed/errors.hpp"

namespace gedembed {

void LogRegConfig::validate() const {
  if (l2 < 0.0 || !std::isfinite(l2)) throw_config("logreg: l2 must be >= 0");
  if (epochs < 0) throw_config("logreg: epochs must be >= 0");
  if (!(lr > 0.0) || !std::isfinite(lr)) throw_config("logreg: lr must be positive");
}

namespace {

struct Problem {
  int n = 0, d = 0, c = 0;
  std::vector<std::string> classes;
  std::vector<int> y;
  const std::vector<GraphEmbedding>* x = nullptr;
};

Problem build_problem(const std::vector<GraphEmbedding>& embeddings,
                      const std::vector<std::string>& labels) {
  if (embeddings.empty()) throw_validation("logreg: empty training set");
  if (embeddings.size() != labels.size())
    throw_validation("logreg: embedding and label counts differ");
  Problem p;
  p.n = static_cast<int>(embeddings.size());
  p.d = embeddings.front().dim();
  for (const GraphEmbedding& e : embeddings)
    if (e.dim() != p.d) throw_validation("logreg: inconsistent embedding dims");
  std::set<std::string> classes(labels.begin(), labels.end());
  p.classes.assign(classes.begin(), classes.end());
  p.c = static_cast<int>(p.classes.size());
  std::unordered_map<std::string, int> index;
  for (int i = 0; i < p.c; ++i) index[p.classes[static_cast<size_t>(i)]] = i;
  for (const std::string& l : labels) p.y.push_back(index.at(l));
  p.x = &embeddings;
  return p;
}

// Row logits for one embedding under (w, b).
std::vector<double> row_logits(const Tensor& w, const Tensor& b, const GraphEmbedding& h) {
  if (h.dim() != w.rows) throw_validation("logreg: embedding dim does not match the model");
  std::vector<double> z(static_cast<size_t>(w.cols), 0.0);
  for (int c = 0; c < w.cols; ++c) {
    double s = b.at(0, c);
    for (int r = 0; r < w.rows; ++r) s += h.h[static_cast<size_t>(r)] * w.at(r, c);
    z[static_cast<size_t>(c)] = s;
  }
  return z;
}

// Softmax in place with the max-shift, returning log(sum exp(z - max)) + max.
double softmax_inplace(std::vector<double>& z) {
  double mx = *std::max_element(z.begin(), z.end());
  double sum = 0.0;
  for (double& v : z) {
    v = std::exp(v - mx);
    sum += v;
  }
  for (double& v : z) v /= sum;
  return std::log(sum) + mx;
}

}  // namespace

LogRegModel logreg_train(const std::vector<GraphEmbedding>& embeddings,
                         const std::vector<std::string>& labels, const LogRegConfig& cfg) {
  cfg.validate();
  Problem p = build_problem(embeddings, labels);
  if (p.c < 2) throw_validation("logreg: training data has a single class");

  LogRegModel model;
  model.classes = p.classes;
  model.w = Tensor(p.d, p.c);
  model.b = Tensor(1, p.c);

  Tensor gw(p.d, p.c), gb(1, p.c);
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::fill(gw.data.begin(), gw.data.end(), 0.0);
    std::fill(gb.data.begin(), gb.data.end(), 0.0);
    for (int i = 0; i < p.n; ++i) {
      const GraphEmbedding& h = embeddings[static_cast<size_t>(i)];
      std::vector<double> prob = row_logits(model.w, model.b, h);
      softmax_inplace(prob);
      prob[static_cast<size_t>(p.y[static_cast<size_t>(i)])] -= 1.0;
      for (int c = 0; c < p.c; ++c) {
        double g = prob[static_cast<size_t>(c)] / p.n;
        gb.at(0, c) += g;
        for (int r = 0; r < p.d; ++r) gw.at(r, c) += g * h.h[static_cast<size_t>(r)];
      }
    }
    for (size_t j = 0; j < model.w.data.size(); ++j)
      model.w.data[j] -= cfg.lr * (gw.data[j] + cfg.l2 * model.w.data[j]);
    for (size_t j = 0; j < model.b.data.size(); ++j) model.b.data[j] -= cfg.lr * gb.data[j];
  }
  return model;
}

double logreg_objective(const LogRegModel& model, const std::vector<GraphEmbedding>& embeddings,
                        const std::vector<std::string>& labels, double l2) {
  if (embeddings.empty()) throw_validation("logreg: empty evaluation set");
  if (embeddings.size() != labels.size())
    throw_validation("logreg: embedding and label counts differ");
  std::unordered_map<std::string, int> index;
  for (size_t i = 0; i < model.classes.size(); ++i) index[model.classes[i]] = static_cast<int>(i);
  double total = 0.0;
  for (size_t i = 0; i < embeddings.size(); ++i) {
    auto it = index.find(labels[i]);
    if (it == index.end()) throw_validation("logreg: label '" + labels[i] + "' not in the model");
    std::vector<double> z = row_logits(model.w, model.b, embeddings[i]);
    double zy = z[static_cast<size_t>(it->second)];
    double lse = softmax_inplace(z);
    total += lse - zy;
  }
  double reg = 0.0;
  for (double v : model.w.data) reg += v * v;
  return total / static_cast<double>(embeddings.size()) + 0.5 * l2 * reg;
}

std::vector<double> logreg_logits(const LogRegModel& model, const GraphEmbedding& h) {
  return row_logits(model.w, model.b, h);
}

std::string logreg_predict(const LogRegModel& model, const GraphEmbedding& h) {
  std::vector<double> z = row_logits(model.w, model.b, h);
  size_t best = 0;
  for (size_t c = 1; c < z.size(); ++c)
    if (z[c] > z[best]) best = c;
  return model.classes[best];
}

double classification_accuracy(const LogRegModel& model,
                               const std::vector<GraphEmbedding>& embeddings,
                               const std::vector<std::string>& labels) {
  if (embeddings.empty()) throw_validation("accuracy: empty evaluation set");
  if (embeddings.size() != labels.size())
    throw_validation("accuracy: embedding and label counts differ");
  int hits = 0;
  for (size_t i = 0; i < embeddings.size(); ++i)
    if (logreg_predict(model, embeddings[i]) == labels[i]) ++hits;
  return static_cast<double>(hits) / static_cast<double>(embeddings.size());
}

}  // namespace gedembed
