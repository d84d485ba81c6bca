#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "gedembed/dataset_io.hpp"
#include "gedembed/errors.hpp"
#include "gedembed/eval/exports.hpp"
#include "gedembed/eval/logreg.hpp"
#include "gedembed/eval/mds.hpp"
#include "gedembed/eval/metrics.hpp"
#include "gedembed/ged/astar.hpp"
#include "gedembed/ged/bipartite.hpp"
#include "gedembed/ged/hed.hpp"
#include "gedembed/ged/pairs.hpp"
#include "gedembed/model/checkpoint.hpp"
#include "gedembed/pipeline.hpp"
#include "gedembed/synth.hpp"
#include "gedembed/train/trainer.hpp"

namespace py = pybind11;
using namespace gedembed;

namespace {

const LabelVocab* vocab_ptr(const std::optional<LabelVocab>& v) { return v ? &*v : nullptr; }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Graph-level embeddings that preserve edit-distance proximity";

  py::register_exception<Error>(m, "GedembedError");

  py::class_<LabeledGraph>(m, "LabeledGraph")
      .def(py::init<int, std::vector<std::string>, std::vector<std::pair<int, int>>,
                    std::optional<std::string>>(),
           py::arg("gid"), py::arg("labels"), py::arg("edges"),
           py::arg("glabel") = std::nullopt)
      .def_property_readonly("gid", &LabeledGraph::gid)
      .def_property_readonly("num_nodes", &LabeledGraph::num_nodes)
      .def_property_readonly("num_edges", &LabeledGraph::num_edges)
      .def_property_readonly("labels", &LabeledGraph::labels)
      .def_property_readonly("edges", &LabeledGraph::edges)
      .def_property_readonly("glabel", &LabeledGraph::glabel)
      .def("neighbors", &LabeledGraph::neighbors, py::arg("node"))
      .def("has_edge", &LabeledGraph::has_edge, py::arg("u"), py::arg("v"))
      .def("__repr__", [](const LabeledGraph& g) {
        return "LabeledGraph(gid=" + std::to_string(g.gid()) +
               ", nodes=" + std::to_string(g.num_nodes()) +
               ", edges=" + std::to_string(g.num_edges()) + ")";
      });

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def(py::init([](std::vector<LabeledGraph> graphs) {
             Dataset ds;
             ds.graphs = std::move(graphs);
             return ds;
           }),
           py::arg("graphs"))
      .def_readwrite("graphs", &Dataset::graphs)
      .def("__len__", &Dataset::size)
      .def("by_gid", &Dataset::by_gid, py::arg("gid"))
      .def("is_unlabeled", &Dataset::is_unlabeled);

  py::class_<DatasetSplits>(m, "DatasetSplits")
      .def_readonly("train", &DatasetSplits::train)
      .def_readonly("val", &DatasetSplits::val)
      .def_readonly("test", &DatasetSplits::test);

  py::class_<LabelVocab>(m, "LabelVocab")
      .def_readonly("labels", &LabelVocab::labels)
      .def_property_readonly("onehot_width", &LabelVocab::onehot_width)
      .def("index_of", &LabelVocab::index_of, py::arg("label"));

  m.def("load_dataset", &load_dataset, py::arg("path"));
  m.def("save_dataset", &save_dataset, py::arg("dataset"), py::arg("path"));
  m.def(
      "synth",
      [](const std::vector<std::string>& specs, const std::vector<std::string>& alphabet,
         std::uint64_t seed) {
        std::vector<FamilySpec> parsed;
        for (const std::string& token : specs) {
          FamilySpec spec = parse_family_spec(token);
          spec.alphabet = alphabet;
          parsed.push_back(spec);
        }
        return synth_generate(parsed, seed);
      },
      py::arg("specs"), py::arg("alphabet") = std::vector<std::string>{"A"},
      py::arg("seed") = 0);
  m.def(
      "split_dataset",
      [](const Dataset& ds, double train, double val, double test, std::uint64_t seed) {
        SplitSpec spec;
        spec.train = train;
        spec.val = val;
        spec.test = test;
        spec.seed = seed;
        return split_dataset(ds, spec);
      },
      py::arg("dataset"), py::arg("train") = 0.6, py::arg("val") = 0.2, py::arg("test") = 0.2,
      py::arg("seed") = 0);
  m.def("build_label_vocab", &build_label_vocab, py::arg("dataset"));

  py::class_<GedResult>(m, "GedResult")
      .def_readonly("value", &GedResult::value)
      .def_property_readonly("bound",
                             [](const GedResult& r) { return std::string(to_string(r.bound)); })
      .def_property_readonly("solver",
                             [](const GedResult& r) { return std::string(to_string(r.solver)); })
      .def("__repr__", [](const GedResult& r) {
        return "GedResult(value=" + std::to_string(r.value) + ", bound=" + to_string(r.bound) +
               ", solver=" + to_string(r.solver) + ")";
      });

  m.def(
      "ged",
      [](const LabeledGraph& g1, const LabeledGraph& g2, const std::string& algo, int beam_width,
         int node_limit, long long expansion_limit) {
        if (algo == "astar") return ged_exact_astar(g1, g2, node_limit, expansion_limit);
        if (algo == "beam") return ged_beam(g1, g2, beam_width);
        if (algo == "bipartite") return ged_bipartite(g1, g2);
        if (algo == "hed") return hed_lower(g1, g2);
        if (algo == "ensemble") return ged_ensemble(g1, g2, beam_width);
        throw_config("unknown solver '" + algo +
                     "' (expected astar, beam, bipartite, hed, ensemble)");
      },
      py::arg("g1"), py::arg("g2"), py::arg("algo") = "astar", py::arg("beam_width") = 100,
      py::arg("node_limit") = kDefaultNodeLimit,
      py::arg("expansion_limit") = kDefaultExpansionLimit);
  m.def("nged", &nged, py::arg("ged"), py::arg("n1"), py::arg("n2"));

  py::class_<PairRecord>(m, "PairRecord")
      .def(py::init<>())
      .def_readwrite("gid_i", &PairRecord::gid_i)
      .def_readwrite("gid_j", &PairRecord::gid_j)
      .def_readwrite("ged", &PairRecord::ged)
      .def_readwrite("nged", &PairRecord::nged)
      .def_readwrite("sim", &PairRecord::sim);

  py::class_<PairTable>(m, "PairTable")
      .def(py::init<>())
      .def_readwrite("records", &PairTable::records)
      .def("__len__", [](const PairTable& t) { return t.records.size(); })
      .def(
          "find",
          [](const PairTable& t, int gid_a, int gid_b) -> std::optional<PairRecord> {
            const PairRecord* rec = t.find(gid_a, gid_b);
            if (!rec) return std::nullopt;
            return *rec;
          },
          py::arg("gid_a"), py::arg("gid_b"));

  m.def(
      "ground_truth_pairs",
      [](const Dataset& ds, const std::string& algo, int beam_width, int node_limit,
         long long expansion_limit, long long pair_budget, std::uint64_t seed, int jobs) {
        PairJobConfig cfg;
        if (algo == "astar")
          cfg.solver = GedSolver::astar;
        else if (algo == "beam")
          cfg.solver = GedSolver::beam;
        else if (algo == "bipartite")
          cfg.solver = GedSolver::bipartite;
        else if (algo == "hed")
          cfg.solver = GedSolver::hed;
        else if (algo == "ensemble")
          cfg.solver = GedSolver::ensemble;
        else
          throw_config("unknown solver '" + algo + "'");
        cfg.beam_width = beam_width;
        cfg.node_limit = node_limit;
        cfg.expansion_limit = expansion_limit;
        cfg.pair_budget = pair_budget;
        cfg.seed = seed;
        cfg.jobs = jobs;
        return ground_truth_pairs(ds, cfg);
      },
      py::arg("dataset"), py::arg("algo") = "ensemble", py::arg("beam_width") = 100,
      py::arg("node_limit") = kDefaultNodeLimit,
      py::arg("expansion_limit") = kDefaultExpansionLimit, py::arg("pair_budget") = -1,
      py::arg("seed") = 0, py::arg("jobs") = 1);
  m.def("save_pair_table", &save_pair_table, py::arg("table"), py::arg("path"));
  m.def("load_pair_table", &load_pair_table, py::arg("path"));

  py::class_<ModelConfig>(m, "ModelConfig")
      .def(py::init<>())
      .def_readwrite("gin_dims", &ModelConfig::gin_dims)
      .def_readwrite("epsilon_value", &ModelConfig::epsilon_value)
      .def_readwrite("head_hidden", &ModelConfig::head_hidden)
      .def_readwrite("embed_dim", &ModelConfig::embed_dim)
      .def_readwrite("input_dim", &ModelConfig::input_dim)
      .def_property(
          "pooling", [](const ModelConfig& c) { return std::string(to_string(c.pooling)); },
          [](ModelConfig& c, const std::string& s) { c.pooling = parse_pooling(s); })
      .def_property(
          "epsilon_mode",
          [](const ModelConfig& c) { return std::string(to_string(c.epsilon_mode)); },
          [](ModelConfig& c, const std::string& s) { c.epsilon_mode = parse_epsilon_mode(s); });

  py::class_<ModelParams>(m, "ModelParams");

  py::class_<GraphEmbedding>(m, "GraphEmbedding")
      .def(py::init([](int gid, std::vector<double> h) {
             GraphEmbedding e;
             e.gid = gid;
             e.h = std::move(h);
             return e;
           }),
           py::arg("gid"), py::arg("h"))
      .def_readwrite("gid", &GraphEmbedding::gid)
      .def_readwrite("h", &GraphEmbedding::h)
      .def_property_readonly("dim", &GraphEmbedding::dim);

  m.def("predict_distance", &predict_distance, py::arg("a"), py::arg("b"));
  m.def("predict_similarity", &predict_similarity, py::arg("a"), py::arg("b"));
  m.def(
      "embed_dataset",
      [](const Dataset& split, const std::optional<LabelVocab>& vocab, ModelParams& params,
         const ModelConfig& cfg) { return embed_dataset(split, vocab_ptr(vocab), params, cfg); },
      py::arg("split"), py::arg("vocab"), py::arg("params"), py::arg("config"));

  py::class_<TrainConfig>(m, "TrainConfig")
      .def(py::init<>())
      .def_readwrite("batch_pairs", &TrainConfig::batch_pairs)
      .def_readwrite("iterations", &TrainConfig::iterations)
      .def_readwrite("lr", &TrainConfig::lr)
      .def_readwrite("beta1", &TrainConfig::beta1)
      .def_readwrite("beta2", &TrainConfig::beta2)
      .def_readwrite("adam_eps", &TrainConfig::adam_eps)
      .def_readwrite("seed", &TrainConfig::seed)
      .def_readwrite("checkpoint_every", &TrainConfig::checkpoint_every)
      .def_readwrite("val_pair_cap", &TrainConfig::val_pair_cap)
      .def_readwrite("use_raw_ged", &TrainConfig::use_raw_ged)
      .def_property(
          "loss_mode", [](const TrainConfig& c) { return std::string(to_string(c.loss_mode)); },
          [](TrainConfig& c, const std::string& s) { c.loss_mode = parse_loss_mode(s); })
      .def(
          "set_fine_tune",
          [](TrainConfig& c, long long start_iter, std::vector<int> class_head_dims, double lr) {
            FineTunePhase ft;
            ft.start_iter = start_iter;
            ft.class_head_dims = std::move(class_head_dims);
            ft.lr = lr;
            c.fine_tune = ft;
          },
          py::arg("start_iter"), py::arg("class_head_dims") = std::vector<int>{64},
          py::arg("lr") = 0.001)
      .def("clear_fine_tune", [](TrainConfig& c) { c.fine_tune.reset(); });

  py::class_<TrainHistoryEntry>(m, "TrainHistoryEntry")
      .def_readonly("iter", &TrainHistoryEntry::iter)
      .def_readonly("train_loss", &TrainHistoryEntry::train_loss)
      .def_readonly("val_loss", &TrainHistoryEntry::val_loss);

  py::class_<TrainHistory>(m, "TrainHistory")
      .def_readonly("entries", &TrainHistory::entries)
      .def_readonly("best_iter", &TrainHistory::best_iter);

  py::class_<TrainResult>(m, "TrainResult")
      .def_readonly("params", &TrainResult::params)
      .def_readonly("history", &TrainResult::history);

  m.def(
      "train",
      [](const Dataset& train_split, const Dataset& val_split, const PairTable& train_pairs,
         const PairTable& val_pairs, const std::optional<LabelVocab>& vocab,
         const TrainConfig& cfg, const ModelConfig& model_cfg) {
        return train(train_split, val_split, train_pairs, val_pairs, vocab_ptr(vocab), cfg,
                     model_cfg);
      },
      py::arg("train_split"), py::arg("val_split"), py::arg("train_pairs"),
      py::arg("val_pairs"), py::arg("vocab"), py::arg("config"), py::arg("model_config"));
  m.def("save_train_history", &save_train_history, py::arg("history"), py::arg("path"));

  py::class_<Checkpoint>(m, "Checkpoint")
      .def_readonly("config", &Checkpoint::config)
      .def_readonly("params", &Checkpoint::params)
      .def_readonly("vocab", &Checkpoint::vocab)
      .def_property_readonly("meta_json",
                             [](const Checkpoint& c) { return c.meta.dump(); });

  m.def(
      "save_checkpoint",
      [](const std::string& path, const ModelParams& params, const ModelConfig& cfg,
         const std::optional<LabelVocab>& vocab) { save_checkpoint(path, params, cfg, vocab); },
      py::arg("path"), py::arg("params"), py::arg("config"), py::arg("vocab") = std::nullopt);
  m.def("load_checkpoint", &load_checkpoint, py::arg("path"));

  m.def("kendall_tau_b", &kendall_tau_b, py::arg("x"), py::arg("y"));
  m.def("precision_at_k", &precision_at_k, py::arg("true_scores"), py::arg("pred_scores"),
        py::arg("k"));

  py::class_<EvalReport>(m, "EvalReport")
      .def_readonly("tau", &EvalReport::tau)
      .def_readonly("p_at_k", &EvalReport::p_at_k)
      .def_readonly("k_used", &EvalReport::k_used)
      .def_readonly("mse", &EvalReport::mse)
      .def_readonly("accuracy", &EvalReport::accuracy);

  py::class_<RankedItem>(m, "RankedItem")
      .def_readonly("gid", &RankedItem::gid)
      .def_readonly("score", &RankedItem::score);

  py::class_<Ranking>(m, "Ranking")
      .def_readonly("query_gid", &Ranking::query_gid)
      .def_readonly("items", &Ranking::items);

  py::class_<RankEval>(m, "RankEval")
      .def_readonly("report", &RankEval::report)
      .def_readonly("rankings", &RankEval::rankings);

  m.def(
      "evaluate_rankings",
      [](const std::vector<GraphEmbedding>& queries, const std::vector<GraphEmbedding>& corpus,
         const PairTable& table, const std::string& mode, int k) {
        return evaluate_rankings(queries, corpus, table, parse_loss_mode(mode), k);
      },
      py::arg("queries"), py::arg("corpus"), py::arg("table"), py::arg("mode") = "distance",
      py::arg("k") = 10);

  py::class_<LogRegConfig>(m, "LogRegConfig")
      .def(py::init<>())
      .def_readwrite("l2", &LogRegConfig::l2)
      .def_readwrite("epochs", &LogRegConfig::epochs)
      .def_readwrite("lr", &LogRegConfig::lr)
      .def_readwrite("seed", &LogRegConfig::seed);

  py::class_<LogRegModel>(m, "LogRegModel").def_readonly("classes", &LogRegModel::classes);

  m.def("logreg_train", &logreg_train, py::arg("embeddings"), py::arg("labels"),
        py::arg("config") = LogRegConfig{});
  m.def("logreg_predict", &logreg_predict, py::arg("model"), py::arg("embedding"));
  m.def("classification_accuracy", &classification_accuracy, py::arg("model"),
        py::arg("embeddings"), py::arg("labels"));

  py::class_<Projection>(m, "Projection")
      .def_readonly("coords", &Projection::coords)
      .def_readonly("degenerate", &Projection::degenerate);

  m.def("project_2d", &project_2d, py::arg("embeddings"));

  m.def("save_embeddings_csv", &save_embeddings_csv, py::arg("embeddings"), py::arg("path"));
  m.def("load_embeddings_csv", &load_embeddings_csv, py::arg("path"));

  py::class_<CheckResult>(m, "CheckResult")
      .def_readonly("name", &CheckResult::name)
      .def_readonly("passed", &CheckResult::passed)
      .def_readonly("detail", &CheckResult::detail);

  py::class_<CheckReport>(m, "CheckReport")
      .def_readonly("checks", &CheckReport::checks)
      .def("all_passed", &CheckReport::all_passed);

  m.def("self_check", &self_check, py::arg("seed") = 0);
}
