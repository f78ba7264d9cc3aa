// Command-line front end: thin adapters from flags/config files to the
// library. Data goes to files, messages to stderr.

#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "graphembed/config.hpp"
#include "graphembed/dataset.hpp"
#include "graphembed/embeddings.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/harness.hpp"
#include "graphembed/linalg.hpp"
#include "graphembed/nn.hpp"
#include "graphembed/sbm.hpp"

namespace fs = std::filesystem;
using namespace graphembed;

namespace {

struct GenSbmArgs {
  int n = 500;
  double p = 0.5;
  double q = 0.25;
  int feature_dim = 2;
  std::string mean0 = "1,1";
  double cov_scale = 1.0;
  std::uint64_t seed = 0;
  int num_splits = 10;
  double train_frac = 0.1;
  double val_frac = 0.0;
  std::string out;
};

int run_gen_sbm(const GenSbmArgs& args) {
  const SbmParams params = make_2b_sbm(args.n, args.p, args.q);
  std::vector<double> mu = parse_double_list(args.mean0);
  if (static_cast<int>(mu.size()) != args.feature_dim)
    throw InvalidParams("--mean0 must have --feature-dim entries");
  const GaussianMixtureParams gm =
      GaussianMixtureParams::symmetric_pair(mu, args.cov_scale);

  Rng rng(args.seed);
  Dataset ds;
  ds.graph = sample_sbm(params, rng);
  ds.features = sample_features(params.memberships, gm, rng);
  ds.labels = params.memberships;
  ds.name = fs::path(args.out).filename().string();
  for (int i = 0; i < args.num_splits; ++i) {
    Rng split_rng = Rng::derived(args.seed + 1000003, i);
    ds.splits.push_back(
        make_stratified_split(ds.labels, args.train_frac, args.val_frac, split_rng));
  }
  save_dataset(ds, args.out);
  std::fprintf(stderr, "[gen-sbm] wrote %s (n=%d, edges=%d, splits=%d)\n",
               args.out.c_str(), ds.graph.node_count(), ds.graph.edge_count(),
               args.num_splits);
  return 0;
}

struct EmbedArgs {
  std::string dataset;
  std::string method = "power";
  std::string op = "lap";
  int layers = 10;
  int k = 0;  // 0: keep feature width
  bool qr_fallback = false;
  std::string out;
};

int run_embed(const EmbedArgs& args) {
  const Dataset ds = load_dataset(args.dataset);
  DenseMatrix x = ds.features;
  if (args.k > 0 && args.k < x.cols()) {
    std::fprintf(stderr, "[embed] reducing features %d -> %d\n", x.cols(), args.k);
    x = pca_reduce(x, args.k);
  }

  EmbeddingList list;
  if (args.method == "power") {
    PowerOptions opts;
    opts.qr_fallback = args.qr_fallback;
    list = power_embed(operator_from_name(args.op), ds.graph, x, args.layers, opts);
  } else if (args.method == "unnorm" || args.method == "sign" || args.method == "sgc") {
    OperatorKind kind = operator_from_name(args.op);
    if (args.method == "sign") kind = OperatorKind::RandomWalk;
    if (args.method == "sgc") kind = OperatorKind::SymLaplacian;
    list = unnormalized_embed(kind, ds.graph, x, args.layers);
  } else if (args.method == "ase" || args.method == "cov" || args.method == "a_x") {
    bool warn = false;
    DenseMatrix h;
    if (args.method == "ase") h = ase(ds.graph, x.cols(), &warn);
    else if (args.method == "cov") h = cov_embed(x, x.cols());
    else h = a_x_embed(ds.graph, x, x.cols(), &warn);
    if (warn) std::fprintf(stderr, "[embed] warning: eigen-gap tie at k\n");
    list.blocks.push_back(std::move(h));
    list.method = args.method;
    list.k = list.blocks[0].cols();
  } else {
    throw InvalidParams("--method must be power, unnorm, sign, sgc, ase, cov, or a_x");
  }
  save_embedding_list(list, args.out);
  std::fprintf(stderr, "[embed] wrote %s (%d blocks)\n", args.out.c_str(),
               list.block_count());
  return 0;
}

struct TrainArgs {
  std::string embeddings;
  std::string dataset;
  std::string out;
  std::string save_model;
  int epochs = 100;
  double lr = 0.01;
  double dropout = 0.5;
  double weight_decay = 0.0;
  int hidden = 64;
  std::uint64_t seed = 0;
};

int run_train(const TrainArgs& args) {
  const Dataset ds = load_dataset(args.dataset);
  const EmbeddingList list = load_embedding_list(args.embeddings);
  if (list.row_count() != ds.graph.node_count())
    throw InvalidParams("embedding rows disagree with dataset");
  if (ds.splits.empty()) throw InvalidParams("dataset has no splits");
  const int classes = ds.num_classes();

  TrainConfig cfg;
  cfg.epochs = args.epochs;
  cfg.lr = args.lr;
  cfg.dropout = args.dropout;
  cfg.weight_decay = args.weight_decay;
  cfg.hidden = args.hidden;

  ExperimentResult result;
  result.dataset = ds.name;
  result.method = MethodSpec{};
  if (list.method == "power") result.method.family = MethodSpec::Family::Power;
  else if (list.method == "unnormalized") result.method.family = MethodSpec::Family::Unnormalized;
  else if (list.method == "ase") result.method.family = MethodSpec::Family::Ase;
  else if (list.method == "cov") result.method.family = MethodSpec::Family::Cov;
  else if (list.method == "a_x") result.method.family = MethodSpec::Family::AX;
  result.method.op = list.op;
  result.method.layers = list.depth;

  fs::create_directories(args.out);
  for (std::size_t s = 0; s < ds.splits.size(); ++s) {
    const SplitSpec& split = ds.splits[s];
    cfg.seed = args.seed + s;
    std::vector<int> train_labels, test_labels;
    for (int i : split.train) train_labels.push_back(ds.labels[i]);
    for (int i : split.test) test_labels.push_back(ds.labels[i]);

    std::vector<DenseMatrix> train_blocks, test_blocks;
    for (std::size_t b = 0; b < list.blocks.size(); ++b) {
      const DenseMatrix conditioned =
          b == 0 ? list.blocks[b] : column_normalize_lenient(list.blocks[b]);
      train_blocks.push_back(select_rows(conditioned, split.train));
      test_blocks.push_back(select_rows(conditioned, split.test));
    }
    const auto start = std::chrono::steady_clock::now();
    const InceptionModel model =
        train_inception(train_blocks, train_labels, classes, cfg);
    const double acc = accuracy(predict(model, test_blocks), test_labels);
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    result.split_ids.push_back(static_cast<int>(s));
    result.seeds.push_back(cfg.seed);
    result.accuracies.push_back(acc);
    result.wall_ms.push_back(ms);
    result.errors.emplace_back();
    std::fprintf(stderr, "[train] split %zu accuracy %.4f\n", s, acc);
    if (!args.save_model.empty() && s == 0) save_inception(model, args.save_model);
  }
  emit_results({result}, (fs::path(args.out) / "results.csv").string(),
               (fs::path(args.out) / "results.json").string());
  std::fprintf(stderr, "[train] mean accuracy %.4f +/- %.4f\n", result.mean_accuracy(),
               result.stderr_accuracy());
  return 0;
}

std::vector<double> mean_from_config(const IniConfig& ini,
                                     const std::vector<double>& fallback) {
  std::vector<double> mu = fallback;
  if (ini.has("sbm", "means")) mu = ini.get_double_list("sbm", "means");
  if (ini.has("sbm", "feature_dim")) {
    const int dim = static_cast<int>(ini.get_int("sbm", "feature_dim", 0));
    if (!ini.has("sbm", "means")) mu.assign(dim, 1.0);
    else if (static_cast<int>(mu.size()) != dim)
      throw InvalidParams("config [sbm]: means length disagrees with feature_dim");
  }
  return mu;
}

TrainConfig train_config_from(const IniConfig& ini) {
  TrainConfig cfg;
  cfg.epochs = static_cast<int>(ini.get_int("train", "epochs", cfg.epochs));
  cfg.lr = ini.get_double("train", "lr", cfg.lr);
  cfg.dropout = ini.get_double("train", "dropout", cfg.dropout);
  cfg.weight_decay = ini.get_double("train", "weight_decay", cfg.weight_decay);
  cfg.hidden = static_cast<int>(ini.get_int("train", "hidden", cfg.hidden));
  cfg.seed = static_cast<std::uint64_t>(ini.get_int("train", "seed", 0));
  return cfg;
}

int run_convergence(const std::string& config_path, std::uint64_t seed_override,
                    bool has_seed, const std::string& out_override, int jobs) {
  const IniConfig ini = IniConfig::parse_file(config_path);
  ConvergenceConfig cfg;
  cfg.n = static_cast<int>(ini.get_int("sbm", "n", cfg.n));
  cfg.p = ini.get_double("sbm", "p", cfg.p);
  cfg.q = ini.get_double("sbm", "q", cfg.q);
  cfg.kind = operator_from_name(ini.get_string("sbm", "operator", "adj"));
  cfg.k = static_cast<int>(ini.get_int("sbm", "k", cfg.k));
  cfg.layers = static_cast<int>(ini.get_int("sbm", "layers", cfg.layers));
  cfg.trials = static_cast<int>(ini.get_int("sbm", "trials", cfg.trials));
  cfg.seed = static_cast<std::uint64_t>(ini.get_int("sbm", "seed", 0));
  cfg.mean0 = mean_from_config(ini, cfg.mean0);
  cfg.covariance_scale = ini.get_double("sbm", "covariance_scale", 1.0);
  cfg.jobs = jobs;
  if (has_seed) cfg.seed = seed_override;

  std::string out = ini.get_string("output", "csv", "convergence.csv");
  if (!out_override.empty()) out = out_override;
  const ConvergenceResult result = convergence_experiment(cfg);
  write_convergence_csv(result, out);
  std::fprintf(stderr, "[convergence] wrote %s (final mean largest angle %.3e)\n",
               out.c_str(), result.mean_largest_angle(cfg.layers));
  return 0;
}

int run_bench(const std::string& config_path, std::uint64_t seed_override,
              bool has_seed, int jobs) {
  const IniConfig ini = IniConfig::parse_file(config_path);
  SbmBenchConfig cfg;
  cfg.n = static_cast<int>(ini.get_int("sbm", "n", cfg.n));
  cfg.trials = static_cast<int>(ini.get_int("sbm", "trials", cfg.trials));
  cfg.train_frac = ini.get_double("sbm", "train_frac", cfg.train_frac);
  cfg.seed = static_cast<std::uint64_t>(ini.get_int("sbm", "seed", 0));
  if (has_seed) cfg.seed = seed_override;
  cfg.mean0 = mean_from_config(ini, cfg.mean0);
  cfg.covariance_scale = ini.get_double("sbm", "covariance_scale", 1.0);
  cfg.train = train_config_from(ini);
  cfg.jobs = jobs;

  cfg.pq_list.clear();
  if (ini.has("sbm", "x_grid")) {
    // density sweep: p = x/2, q = x/3 (heterophilous direction swaps them)
    const bool hetero = ini.get_string("sbm", "direction", "homo") == "hetero";
    for (double x : ini.get_double_list("sbm", "x_grid")) {
      const double p = x / 2.0, q = x / 3.0;
      cfg.pq_list.emplace_back(hetero ? q : p, hetero ? p : q);
    }
  } else {
    const auto ps = ini.get_double_list("sbm", "p");
    const auto qs = ini.get_double_list("sbm", "q");
    if (ps.size() != qs.size() || ps.empty())
      throw InvalidParams("config [sbm]: p and q lists must match and be nonempty");
    for (std::size_t i = 0; i < ps.size(); ++i) cfg.pq_list.emplace_back(ps[i], qs[i]);
  }

  std::vector<MethodSpec> methods;
  for (const auto& [key, value] : ini.entries("methods")) {
    (void)key;
    methods.push_back(MethodSpec::parse(value));
  }
  if (methods.empty()) throw InvalidParams("config [methods] section is empty");

  const std::string csv = ini.get_string("output", "csv", "bench.csv");
  const std::string json = ini.get_string("output", "json", "bench.json");
  const auto results = sbm_classification_experiment(cfg, methods);
  emit_results(results, csv, json, config_path);
  for (const auto& r : results)
    std::fprintf(stderr, "[bench] %-20s %-16s mean %.4f +/- %.4f\n", r.dataset.c_str(),
                 r.method.tag().c_str(), r.mean_accuracy(), r.stderr_accuracy());
  return 0;
}

struct OversmoothArgs {
  std::string dataset;
  std::string op = "lap";
  std::string depths = "0,2,10,50";
  std::string out = "oversmooth.csv";
  bool with_accuracy = false;
  int epochs = 100;
  std::uint64_t seed = 0;
};

int run_oversmooth(const OversmoothArgs& args) {
  const Dataset ds = load_dataset(args.dataset);
  std::vector<int> depths;
  for (double d : parse_double_list(args.depths)) depths.push_back(static_cast<int>(d));

  const std::vector<int>* labels = nullptr;
  const SplitSpec* split = nullptr;
  TrainConfig cfg;
  cfg.epochs = args.epochs;
  cfg.seed = args.seed;
  const TrainConfig* train_cfg = nullptr;
  if (args.with_accuracy) {
    if (ds.splits.empty()) throw InvalidParams("dataset has no splits");
    labels = &ds.labels;
    split = &ds.splits[0];
    train_cfg = &cfg;
  }
  const auto rows = oversmoothing_diagnostic(ds.graph, ds.features, depths,
                                             operator_from_name(args.op), labels, split,
                                             train_cfg);
  write_oversmooth_csv(rows, args.out);
  std::fprintf(stderr, "[oversmooth] wrote %s (%zu rows)\n", args.out.c_str(),
               rows.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"graph representation learning benchmark harness"};
  app.require_subcommand(1);

  GenSbmArgs gen;
  auto* gen_cmd = app.add_subcommand("gen-sbm", "sample a two-block dataset directory");
  gen_cmd->add_option("--n", gen.n, "node count (even)")->capture_default_str();
  gen_cmd->add_option("--p", gen.p, "within-block edge probability")->capture_default_str();
  gen_cmd->add_option("--q", gen.q, "cross-block edge probability")->capture_default_str();
  gen_cmd->add_option("--feature-dim", gen.feature_dim, "feature dimension")
      ->capture_default_str();
  gen_cmd->add_option("--mean0", gen.mean0, "block-0 mean (block 1 is its negation)")
      ->capture_default_str();
  gen_cmd->add_option("--cov-scale", gen.cov_scale, "covariance scale (Sigma = s I)")
      ->capture_default_str();
  gen_cmd->add_option("--seed", gen.seed, "rng seed")->capture_default_str();
  gen_cmd->add_option("--splits", gen.num_splits, "number of generated splits")
      ->capture_default_str();
  gen_cmd->add_option("--train-frac", gen.train_frac, "train fraction per split")
      ->capture_default_str();
  gen_cmd->add_option("--val-frac", gen.val_frac, "validation fraction per split")
      ->capture_default_str();
  gen_cmd->add_option("--out", gen.out, "output dataset directory")->required();

  EmbedArgs emb;
  auto* embed_cmd = app.add_subcommand("embed", "build an embedding directory");
  embed_cmd->add_option("--dataset", emb.dataset, "dataset directory")->required();
  embed_cmd
      ->add_option("--method", emb.method,
                   "power | unnorm | sign | sgc | ase | cov | a_x")
      ->capture_default_str();
  embed_cmd->add_option("--operator", emb.op, "adj | lap | rw")->capture_default_str();
  embed_cmd->add_option("--layers", emb.layers, "iterations L")->capture_default_str();
  embed_cmd->add_option("--k", emb.k, "reduce features to width k first (0 = keep)")
      ->capture_default_str();
  embed_cmd->add_flag("--qr-fallback", emb.qr_fallback,
                      "orthonormalize when the gram solve is ill-conditioned");
  embed_cmd->add_option("--out", emb.out, "output embedding directory")->required();

  TrainArgs tr;
  auto* train_cmd = app.add_subcommand("train", "train the classifier over all splits");
  train_cmd->add_option("--embeddings", tr.embeddings, "embedding directory")->required();
  train_cmd->add_option("--dataset", tr.dataset, "dataset directory")->required();
  train_cmd->add_option("--out", tr.out, "results directory")->required();
  train_cmd->add_option("--save-model", tr.save_model, "checkpoint path for split 0");
  train_cmd->add_option("--epochs", tr.epochs, "epochs")->capture_default_str();
  train_cmd->add_option("--lr", tr.lr, "learning rate")->capture_default_str();
  train_cmd->add_option("--dropout", tr.dropout, "dropout rate")->capture_default_str();
  train_cmd->add_option("--weight-decay", tr.weight_decay, "L2 coefficient")
      ->capture_default_str();
  train_cmd->add_option("--hidden", tr.hidden, "hidden width")->capture_default_str();
  train_cmd->add_option("--seed", tr.seed, "base seed (split i uses seed + i)")
      ->capture_default_str();

  std::string conv_config, conv_out;
  std::uint64_t seed_override = 0;
  int jobs = 1;
  auto* conv_cmd =
      app.add_subcommand("convergence", "angle-to-eigenspace curves over iterations");
  conv_cmd->add_option("--config", conv_config, "ini config with [sbm]/[output]")
      ->required();
  auto* conv_seed = conv_cmd->add_option("--seed", seed_override, "override config seed");
  conv_cmd->add_option("--out", conv_out, "override output csv path");
  conv_cmd->add_option("--jobs", jobs, "parallel trials")->capture_default_str();

  std::string bench_config;
  auto* bench_cmd =
      app.add_subcommand("bench", "classification benchmark over sampled graphs");
  bench_cmd->add_option("--config", bench_config, "ini config with [sbm]/[methods]/[train]/[output]")
      ->required();
  auto* bench_seed = bench_cmd->add_option("--seed", seed_override, "override config seed");
  bench_cmd->add_option("--jobs", jobs, "parallel trials")->capture_default_str();

  OversmoothArgs ov;
  auto* ov_cmd = app.add_subcommand("oversmooth", "depth sweep against oracle eigenspaces");
  ov_cmd->add_option("--dataset", ov.dataset, "dataset directory")->required();
  ov_cmd->add_option("--operator", ov.op, "adj | lap | rw")->capture_default_str();
  ov_cmd->add_option("--depths", ov.depths, "comma-separated depth list")
      ->capture_default_str();
  ov_cmd->add_option("--out", ov.out, "output csv")->capture_default_str();
  ov_cmd->add_flag("--with-accuracy", ov.with_accuracy,
                   "also train last-block classifiers (uses split 0)");
  ov_cmd->add_option("--epochs", ov.epochs, "classifier epochs")->capture_default_str();
  ov_cmd->add_option("--seed", ov.seed, "classifier seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::fprintf(stderr, "%s\n", e.what());
    return 1;
  }

  try {
    if (gen_cmd->parsed()) return run_gen_sbm(gen);
    if (embed_cmd->parsed()) return run_embed(emb);
    if (train_cmd->parsed()) return run_train(tr);
    if (conv_cmd->parsed())
      return run_convergence(conv_config, seed_override, !conv_seed->empty(), conv_out,
                             jobs);
    if (bench_cmd->parsed())
      return run_bench(bench_config, seed_override, !bench_seed->empty(), jobs);
    if (ov_cmd->parsed()) return run_oversmooth(ov);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "unexpected error: %s\n", e.what());
    return 2;
  }
  return 1;
}
