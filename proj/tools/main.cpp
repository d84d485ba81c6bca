#include <cstdint>
#include <cstdio>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gedembed/dataset_io.hpp"
#include "gedembed/errors.hpp"
#include "gedembed/eval/exports.hpp"
#include "gedembed/eval/logreg.hpp"
#include "gedembed/eval/mds.hpp"
#include "gedembed/ged/astar.hpp"
#include "gedembed/ged/pairs.hpp"
#include "gedembed/model/checkpoint.hpp"
#include "gedembed/pipeline.hpp"
#include "gedembed/synth.hpp"
#include "gedembed/train/trainer.hpp"

namespace {

using namespace gedembed;

GedSolver parse_solver(const std::string& token) {
  if (token == "astar") return GedSolver::astar;
  if (token == "beam") return GedSolver::beam;
  if (token == "bipartite") return GedSolver::bipartite;
  if (token == "hed") return GedSolver::hed;
  if (token == "ensemble") return GedSolver::ensemble;
  throw_config("unknown solver '" + token + "' (expected astar, beam, bipartite, hed, ensemble)");
}

nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_validation("cannot open config file: " + path);
  try {
    nlohmann::json j;
    in >> j;
    return j;
  } catch (const nlohmann::json::exception& e) {
    throw_parse(path + ": " + e.what());
  }
}

void require_keys(const nlohmann::json& j, std::initializer_list<const char*> allowed,
                  const std::string& where) {
  if (!j.is_object()) throw_config(where + " must be a JSON object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) known = true;
    if (!known) throw_config("unknown key '" + it.key() + "' in " + where);
  }
}

// Config file values override library defaults; explicitly passed flags
// override the file in turn.
void apply_train_json(const nlohmann::json& j, TrainConfig& tc, ModelConfig& mc) {
  require_keys(j,
               {"batch_pairs", "iterations", "lr", "beta1", "beta2", "adam_eps", "loss_mode",
                "seed", "checkpoint_every", "val_pair_cap", "use_raw_ged", "fine_tune", "model"},
               "config");
  try {
    if (j.contains("batch_pairs")) tc.batch_pairs = j["batch_pairs"].get<int>();
    if (j.contains("iterations")) tc.iterations = j["iterations"].get<long long>();
    if (j.contains("lr")) tc.lr = j["lr"].get<double>();
    if (j.contains("beta1")) tc.beta1 = j["beta1"].get<double>();
    if (j.contains("beta2")) tc.beta2 = j["beta2"].get<double>();
    if (j.contains("adam_eps")) tc.adam_eps = j["adam_eps"].get<double>();
    if (j.contains("loss_mode")) tc.loss_mode = parse_loss_mode(j["loss_mode"].get<std::string>());
    if (j.contains("seed")) tc.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("checkpoint_every")) tc.checkpoint_every = j["checkpoint_every"].get<long long>();
    if (j.contains("val_pair_cap")) tc.val_pair_cap = j["val_pair_cap"].get<int>();
    if (j.contains("use_raw_ged")) tc.use_raw_ged = j["use_raw_ged"].get<bool>();
    if (j.contains("fine_tune") && !j["fine_tune"].is_null()) {
      const nlohmann::json& f = j["fine_tune"];
      require_keys(f, {"start_iter", "class_head_dims", "lr"}, "config.fine_tune");
      FineTunePhase ft;
      if (f.contains("start_iter")) ft.start_iter = f["start_iter"].get<long long>();
      if (f.contains("class_head_dims"))
        ft.class_head_dims = f["class_head_dims"].get<std::vector<int>>();
      if (f.contains("lr")) ft.lr = f["lr"].get<double>();
      tc.fine_tune = ft;
    }
    if (j.contains("model")) {
      const nlohmann::json& m = j["model"];
      require_keys(
          m, {"gin_dims", "epsilon_mode", "epsilon_value", "pooling", "head_hidden", "embed_dim"},
          "config.model");
      if (m.contains("gin_dims")) mc.gin_dims = m["gin_dims"].get<std::vector<int>>();
      if (m.contains("epsilon_mode"))
        mc.epsilon_mode = parse_epsilon_mode(m["epsilon_mode"].get<std::string>());
      if (m.contains("epsilon_value")) mc.epsilon_value = m["epsilon_value"].get<double>();
      if (m.contains("pooling")) mc.pooling = parse_pooling(m["pooling"].get<std::string>());
      if (m.contains("head_hidden")) mc.head_hidden = m["head_hidden"].get<std::vector<int>>();
      if (m.contains("embed_dim")) mc.embed_dim = m["embed_dim"].get<int>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw_config(std::string("bad config value: ") + e.what());
  }
}

void apply_logreg_json(const nlohmann::json& j, LogRegConfig& cfg) {
  require_keys(j, {"l2", "epochs", "lr", "seed"}, "config");
  try {
    if (j.contains("l2")) cfg.l2 = j["l2"].get<double>();
    if (j.contains("epochs")) cfg.epochs = j["epochs"].get<int>();
    if (j.contains("lr")) cfg.lr = j["lr"].get<double>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw_config(std::string("bad config value: ") + e.what());
  }
}

std::vector<std::string> split_glabels(const Dataset& ds) {
  std::vector<std::string> out;
  for (const LabeledGraph& g : ds.graphs) {
    if (!g.glabel()) throw_validation("graph " + std::to_string(g.gid()) + " has no glabel");
    out.push_back(*g.glabel());
  }
  return out;
}

void print_report(const EvalReport& report) {
  if (report.tau)
    std::printf("tau %.6f\n", *report.tau);
  else
    std::printf("tau undefined\n");
  std::printf("p_at_k %.6f\n", report.p_at_k);
  std::printf("k %d\n", report.k_used);
  std::printf("mse %.6f\n", report.mse);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph-level embeddings that preserve edit-distance proximity"};
  app.require_subcommand(1);
  int rc = 0;

  // synth
  auto* synth = app.add_subcommand("synth", "generate a synthetic graph corpus");
  std::string synth_out;
  std::vector<std::string> synth_specs;
  std::vector<std::string> synth_alphabet = {"A"};
  std::uint64_t synth_seed = 0;
  synth->add_option("--out", synth_out, "output dataset JSONL")->required();
  synth->add_option("--spec", synth_specs, "family spec family:count:lo..hi (repeatable)")
      ->required();
  synth->add_option("--alphabet", synth_alphabet, "node label alphabet")->delimiter(',');
  synth->add_option("--seed", synth_seed, "generator seed");
  synth->callback([&]() {
    std::vector<FamilySpec> specs;
    for (const std::string& token : synth_specs) {
      FamilySpec spec = parse_family_spec(token);
      spec.alphabet = synth_alphabet;
      specs.push_back(spec);
    }
    Dataset ds = synth_generate(specs, synth_seed);
    save_dataset(ds, synth_out);
    std::printf("wrote %d graphs to %s\n", ds.size(), synth_out.c_str());
  });

  // ged
  auto* ged = app.add_subcommand("ged", "label graph pairs with edit distances");
  std::string ged_dataset, ged_out, ged_algo = "ensemble", ged_split = "all";
  int ged_beam_width = 100;
  int ged_node_limit = kDefaultNodeLimit;
  long long ged_expansions = kDefaultExpansionLimit;
  long long ged_budget = -1;
  std::uint64_t ged_seed = 0, ged_split_seed = 0;
  int ged_jobs = 1;
  ged->add_option("--dataset", ged_dataset, "dataset JSONL")->required();
  ged->add_option("--out", ged_out, "output pair CSV")->required();
  ged->add_option("--algo", ged_algo, "astar|beam|bipartite|hed|ensemble");
  ged->add_option("--beam-width", ged_beam_width, "beam width");
  ged->add_option("--node-limit", ged_node_limit, "astar node-count cap");
  ged->add_option("--expansion-limit", ged_expansions, "astar expansion cap");
  ged->add_option("--pair-budget", ged_budget, "max pairs to label (negative keeps all)");
  ged->add_option("--seed", ged_seed, "pair sampling seed");
  ged->add_option("--jobs", ged_jobs, "solver worker threads");
  ged->add_option("--split", ged_split, "train|val|test|all");
  ged->add_option("--split-seed", ged_split_seed, "dataset split seed");
  ged->callback([&]() {
    Dataset ds = load_dataset(ged_dataset);
    Dataset slice = select_split(ds, parse_split_name(ged_split), ged_split_seed);
    PairJobConfig cfg;
    cfg.solver = parse_solver(ged_algo);
    cfg.beam_width = ged_beam_width;
    cfg.node_limit = ged_node_limit;
    cfg.expansion_limit = ged_expansions;
    cfg.pair_budget = ged_budget;
    cfg.seed = ged_seed;
    cfg.jobs = ged_jobs;
    PairTable table = ground_truth_pairs(slice, cfg);
    save_pair_table(table, ged_out);
    std::printf("wrote %zu pairs to %s\n", table.records.size(), ged_out.c_str());
  });

  // train
  auto* train_cmd = app.add_subcommand("train", "train the embedding model");
  std::string train_dataset, train_pairs_path, train_val_pairs_path, train_out;
  std::string train_history_path, train_config_path, train_loss_mode = "distance";
  std::string train_pooling = "msna", train_eps_mode = "fixed";
  std::vector<int> train_gin_dims = {256, 128, 64};
  std::vector<int> train_head_hidden = {256};
  std::vector<int> train_ft_dims = {64};
  int train_batch = 256, train_embed_dim = 256, train_val_cap = 1000;
  long long train_iters = 2000;  // desk-scale default; the library default is 20000
  long long train_ckpt_every = 100, train_ft_start = -1;
  double train_lr = 0.001, train_eps_value = 0.0, train_ft_lr = 0.001;
  std::uint64_t train_seed = 0, train_split_seed = 0;
  bool train_raw_ged = false;
  train_cmd->add_option("--dataset", train_dataset, "dataset JSONL")->required();
  train_cmd->add_option("--train-pairs", train_pairs_path, "training-split pair CSV")->required();
  train_cmd->add_option("--val-pairs", train_val_pairs_path, "validation-split pair CSV");
  train_cmd->add_option("--out", train_out, "output checkpoint JSON")->required();
  train_cmd->add_option("--history", train_history_path, "training history CSV");
  train_cmd->add_option("--config", train_config_path, "JSON config (flags override it)");
  auto* o_iters = train_cmd->add_option("--iterations", train_iters, "training iterations");
  auto* o_batch = train_cmd->add_option("--batch-pairs", train_batch, "pairs per batch");
  auto* o_lr = train_cmd->add_option("--lr", train_lr, "learning rate");
  auto* o_mode = train_cmd->add_option("--loss-mode", train_loss_mode, "distance|similarity");
  auto* o_seed = train_cmd->add_option("--seed", train_seed, "training seed");
  auto* o_every = train_cmd->add_option("--checkpoint-every", train_ckpt_every,
                                        "validation cadence in iterations");
  auto* o_valcap = train_cmd->add_option("--val-pair-cap", train_val_cap,
                                         "max fixed validation pairs");
  auto* o_raw = train_cmd->add_flag("--use-raw-ged", train_raw_ged,
                                    "train against raw GED instead of nGED");
  auto* o_ft_start = train_cmd->add_option(
      "--fine-tune-start", train_ft_start,
      "iteration to switch to supervised fine-tuning (negative disables)");
  auto* o_ft_dims = train_cmd->add_option("--fine-tune-dims", train_ft_dims,
                                          "class head hidden widths")
                        ->delimiter(',');
  auto* o_ft_lr = train_cmd->add_option("--fine-tune-lr", train_ft_lr, "fine-tune learning rate");
  auto* o_gin = train_cmd->add_option("--gin-dims", train_gin_dims, "GIN layer widths")
                    ->delimiter(',');
  auto* o_head = train_cmd->add_option("--head-hidden", train_head_hidden, "head hidden widths")
                     ->delimiter(',');
  auto* o_embed = train_cmd->add_option("--embed-dim", train_embed_dim, "embedding dimension");
  auto* o_pool = train_cmd->add_option("--pooling", train_pooling,
                                       "msna|na_last|avg|supersource");
  auto* o_epsm = train_cmd->add_option("--epsilon-mode", train_eps_mode, "fixed|learned");
  auto* o_epsv = train_cmd->add_option("--epsilon-value", train_eps_value, "fixed epsilon");
  auto* o_split_seed = train_cmd->add_option("--split-seed", train_split_seed,
                                             "dataset split seed");
  train_cmd->callback([&]() {
    TrainConfig tc;
    tc.iterations = 2000;
    ModelConfig mc;
    if (!train_config_path.empty()) apply_train_json(load_json_file(train_config_path), tc, mc);
    if (o_iters->count()) tc.iterations = train_iters;
    if (o_batch->count()) tc.batch_pairs = train_batch;
    if (o_lr->count()) tc.lr = train_lr;
    if (o_mode->count()) tc.loss_mode = parse_loss_mode(train_loss_mode);
    if (o_seed->count()) tc.seed = train_seed;
    if (o_every->count()) tc.checkpoint_every = train_ckpt_every;
    if (o_valcap->count()) tc.val_pair_cap = train_val_cap;
    if (o_raw->count()) tc.use_raw_ged = train_raw_ged;
    if (o_ft_start->count()) {
      if (train_ft_start < 0) {
        tc.fine_tune.reset();
      } else {
        FineTunePhase ft;
        ft.start_iter = train_ft_start;
        ft.class_head_dims = train_ft_dims;
        ft.lr = train_ft_lr;
        tc.fine_tune = ft;
      }
    } else if (tc.fine_tune) {
      if (o_ft_dims->count()) tc.fine_tune->class_head_dims = train_ft_dims;
      if (o_ft_lr->count()) tc.fine_tune->lr = train_ft_lr;
    }
    if (o_gin->count()) mc.gin_dims = train_gin_dims;
    if (o_head->count()) mc.head_hidden = train_head_hidden;
    if (o_embed->count()) mc.embed_dim = train_embed_dim;
    if (o_pool->count()) mc.pooling = parse_pooling(train_pooling);
    if (o_epsm->count()) mc.epsilon_mode = parse_epsilon_mode(train_eps_mode);
    if (o_epsv->count()) mc.epsilon_value = train_eps_value;
    (void)o_split_seed;

    Dataset ds = load_dataset(train_dataset);
    std::optional<LabelVocab> vocab;
    if (!ds.is_unlabeled()) vocab = build_label_vocab(ds);
    mc.input_dim = vocab ? vocab->onehot_width() : 1;

    SplitSpec split_spec;
    split_spec.seed = train_split_seed;
    DatasetSplits splits = split_dataset(ds, split_spec);

    PairTable train_pairs = load_pair_table(train_pairs_path);
    PairTable val_pairs;
    if (!train_val_pairs_path.empty()) val_pairs = load_pair_table(train_val_pairs_path);

    TrainResult result =
        train(splits.train, splits.val, train_pairs, val_pairs, vocab ? &*vocab : nullptr, tc, mc);

    nlohmann::json meta = {{"iterations", tc.iterations},
                           {"loss_mode", to_string(tc.loss_mode)},
                           {"seed", tc.seed},
                           {"split_seed", train_split_seed}};
    save_checkpoint(train_out, result.params, mc, vocab, meta);
    if (!train_history_path.empty()) save_train_history(result.history, train_history_path);

    std::printf("trained %lld iterations\n", tc.iterations);
    if (!result.history.entries.empty())
      std::printf("final_train_loss %.6f\n", result.history.entries.back().train_loss);
    if (result.history.best_iter >= 0)
      std::printf("best_val_iter %lld\n", result.history.best_iter);
    std::printf("wrote checkpoint to %s\n", train_out.c_str());
  });

  // embed
  auto* embed_cmd = app.add_subcommand("embed", "emit embeddings CSV for a split");
  std::string embed_dataset_path, embed_model, embed_split = "all", embed_out;
  std::uint64_t embed_split_seed = 0;
  embed_cmd->add_option("--dataset", embed_dataset_path, "dataset JSONL")->required();
  embed_cmd->add_option("--model", embed_model, "checkpoint JSON")->required();
  embed_cmd->add_option("--split", embed_split, "train|val|test|all");
  embed_cmd->add_option("--split-seed", embed_split_seed, "dataset split seed");
  embed_cmd->add_option("--out", embed_out, "output embeddings CSV")->required();
  embed_cmd->callback([&]() {
    Dataset ds = load_dataset(embed_dataset_path);
    Checkpoint ckpt = load_checkpoint(embed_model);
    Dataset slice = select_split(ds, parse_split_name(embed_split), embed_split_seed);
    std::vector<GraphEmbedding> embeddings = embed_dataset(
        slice, ckpt.vocab ? &*ckpt.vocab : nullptr, ckpt.params, ckpt.config);
    save_embeddings_csv(embeddings, embed_out);
    std::printf("wrote %zu embeddings (dim %d) to %s\n", embeddings.size(),
                ckpt.config.embed_dim, embed_out.c_str());
  });

  // rank
  auto* rank_cmd = app.add_subcommand("rank", "rank queries and score against ground truth");
  std::string rank_embeddings, rank_corpus, rank_pairs, rank_out, rank_mode = "distance";
  int rank_k = 10;
  rank_cmd->add_option("--embeddings", rank_embeddings, "query embeddings CSV")->required();
  rank_cmd->add_option("--corpus", rank_corpus,
                       "corpus embeddings CSV (defaults to the query file)");
  rank_cmd->add_option("--pairs", rank_pairs, "ground-truth pair CSV")->required();
  rank_cmd->add_option("--mode", rank_mode, "distance|similarity");
  rank_cmd->add_option("--k", rank_k, "precision cutoff");
  rank_cmd->add_option("--out", rank_out, "output rankings CSV");
  rank_cmd->callback([&]() {
    std::vector<GraphEmbedding> queries = load_embeddings_csv(rank_embeddings);
    std::vector<GraphEmbedding> corpus =
        rank_corpus.empty() ? queries : load_embeddings_csv(rank_corpus);
    PairTable table = load_pair_table(rank_pairs);
    LossMode mode = parse_loss_mode(rank_mode);
    RankEval ev = evaluate_rankings(queries, corpus, table, mode, rank_k);
    if (!rank_out.empty()) save_rankings_csv(ev.rankings, rank_out);
    std::printf("queries %zu\n", queries.size());
    print_report(ev.report);
    if (!rank_out.empty()) std::printf("wrote rankings to %s\n", rank_out.c_str());
  });

  // classify
  auto* cls = app.add_subcommand("classify", "logistic regression on embeddings");
  std::string cls_dataset, cls_model, cls_config_path, cls_out;
  std::uint64_t cls_split_seed = 0;
  LogRegConfig cls_defaults;
  double cls_l2 = cls_defaults.l2, cls_lr = cls_defaults.lr;
  int cls_epochs = cls_defaults.epochs;
  std::uint64_t cls_seed = cls_defaults.seed;
  cls->add_option("--dataset", cls_dataset, "dataset JSONL")->required();
  cls->add_option("--model", cls_model, "checkpoint JSON")->required();
  cls->add_option("--split-seed", cls_split_seed, "dataset split seed");
  cls->add_option("--config", cls_config_path, "JSON config (flags override it)");
  auto* o_l2 = cls->add_option("--l2", cls_l2, "L2 penalty");
  auto* o_epochs = cls->add_option("--epochs", cls_epochs, "gradient descent epochs");
  auto* o_clr = cls->add_option("--lr", cls_lr, "learning rate");
  auto* o_cseed = cls->add_option("--seed", cls_seed, "classifier seed");
  cls->add_option("--out", cls_out, "output report JSON");
  cls->callback([&]() {
    LogRegConfig cfg;
    if (!cls_config_path.empty()) apply_logreg_json(load_json_file(cls_config_path), cfg);
    if (o_l2->count()) cfg.l2 = cls_l2;
    if (o_epochs->count()) cfg.epochs = cls_epochs;
    if (o_clr->count()) cfg.lr = cls_lr;
    if (o_cseed->count()) cfg.seed = cls_seed;

    Dataset ds = load_dataset(cls_dataset);
    Checkpoint ckpt = load_checkpoint(cls_model);
    SplitSpec spec;
    spec.seed = cls_split_seed;
    DatasetSplits splits = split_dataset(ds, spec);
    const LabelVocab* vocab = ckpt.vocab ? &*ckpt.vocab : nullptr;

    std::vector<GraphEmbedding> train_embs =
        embed_dataset(splits.train, vocab, ckpt.params, ckpt.config);
    std::vector<GraphEmbedding> test_embs =
        embed_dataset(splits.test, vocab, ckpt.params, ckpt.config);
    std::vector<std::string> train_labels = split_glabels(splits.train);
    std::vector<std::string> test_labels = split_glabels(splits.test);

    LogRegModel model = logreg_train(train_embs, train_labels, cfg);
    double train_acc = classification_accuracy(model, train_embs, train_labels);
    double test_acc = classification_accuracy(model, test_embs, test_labels);

    std::printf("classes %zu\n", model.classes.size());
    std::printf("train_accuracy %.6f\n", train_acc);
    std::printf("test_accuracy %.6f\n", test_acc);
    if (!cls_out.empty()) {
      nlohmann::json report = {{"classes", model.classes},
                               {"train_accuracy", train_acc},
                               {"test_accuracy", test_acc},
                               {"train_size", train_embs.size()},
                               {"test_size", test_embs.size()}};
      std::ofstream out(cls_out, std::ios::binary);
      if (!out) throw_validation("cannot open file for writing: " + cls_out);
      out << report.dump(1, '\t') << "\n";
      std::printf("wrote report to %s\n", cls_out.c_str());
    }
  });

  // viz
  auto* viz = app.add_subcommand("viz", "project embeddings to 2D scatter files");
  std::string viz_dataset, viz_model, viz_split = "all", viz_csv, viz_svg;
  std::uint64_t viz_split_seed = 0;
  viz->add_option("--dataset", viz_dataset, "dataset JSONL")->required();
  viz->add_option("--model", viz_model, "checkpoint JSON")->required();
  viz->add_option("--split", viz_split, "train|val|test|all");
  viz->add_option("--split-seed", viz_split_seed, "dataset split seed");
  viz->add_option("--out-csv", viz_csv, "projection CSV");
  viz->add_option("--out-svg", viz_svg, "scatter SVG");
  viz->callback([&]() {
    if (viz_csv.empty() && viz_svg.empty())
      throw_validation("viz needs --out-csv or --out-svg (or both)");
    Dataset ds = load_dataset(viz_dataset);
    Checkpoint ckpt = load_checkpoint(viz_model);
    Dataset slice = select_split(ds, parse_split_name(viz_split), viz_split_seed);
    std::vector<GraphEmbedding> embeddings = embed_dataset(
        slice, ckpt.vocab ? &*ckpt.vocab : nullptr, ckpt.params, ckpt.config);
    Projection proj = project_2d(embeddings);
    if (proj.degenerate) std::printf("projection degenerate: all embeddings identical\n");
    std::vector<ProjectedPoint> points;
    for (size_t i = 0; i < embeddings.size(); ++i) {
      ProjectedPoint p;
      p.gid = embeddings[i].gid;
      p.x = proj.coords[i][0];
      p.y = proj.coords[i][1];
      p.glabel = slice.graphs[i].glabel();
      points.push_back(p);
    }
    if (!viz_csv.empty()) {
      save_projection_csv(points, viz_csv);
      std::printf("wrote projection to %s\n", viz_csv.c_str());
    }
    if (!viz_svg.empty()) {
      save_projection_svg(points, viz_svg);
      std::printf("wrote scatter to %s\n", viz_svg.c_str());
    }
  });

  // check
  auto* check = app.add_subcommand("check", "run the invariant self-checks");
  std::uint64_t check_seed = 0;
  check->add_option("--seed", check_seed, "check seed");
  check->callback([&]() {
    CheckReport report = self_check(check_seed);
    for (const CheckResult& c : report.checks)
      std::printf("check %s: %s (%s)\n", c.name.c_str(), c.passed ? "PASS" : "FAIL",
                  c.detail.c_str());
    if (!report.all_passed()) rc = 1;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 1;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s: %s\n", to_string(e.category()), e.what());
    return e.exit_code();
  } catch (const nlohmann::json::exception& e) {
    std::fprintf(stderr, "error: parse: %s\n", e.what());
    return 1;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: validation: %s\n", e.what());
    return 1;
  }
  return rc;
}
