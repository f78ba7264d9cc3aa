#include "graphembed/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

#include "graphembed/config.hpp"
#include "graphembed/errors.hpp"
#include "graphembed/parallel.hpp"

namespace graphembed {

namespace {

double elapsed_ms(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

}  // namespace

// ---------------------------------------------------------------------------
// method specs
// ---------------------------------------------------------------------------

std::string MethodSpec::tag() const {
  switch (family) {
    case Family::Power: {
      std::string base = "Power";
      if (op == OperatorKind::RandomWalk) base += "(RW)";
      else if (op == OperatorKind::SymLaplacian) base += "(Lap)";
      return base + "-" + std::to_string(layers);
    }
    case Family::Unnormalized: {
      if (op == OperatorKind::RandomWalk) return "SIGN-" + std::to_string(layers);
      if (op == OperatorKind::SymLaplacian) return "SGC(Incep)-" + std::to_string(layers);
      return "Unnorm-" + std::to_string(layers);
    }
    case Family::Ase: return "ASE";
    case Family::Cov: return "Cov(X)";
    case Family::AX: return "A_X";
    case Family::Gcn: return "GCN-" + std::to_string(layers);
  }
  return "?";
}

std::string MethodSpec::operator_field() const {
  switch (family) {
    case Family::Power:
    case Family::Unnormalized:
      return operator_name(op);
    case Family::Gcn:
      return operator_name(OperatorKind::SymLaplacian);
    default:
      return "-";
  }
}

std::string MethodSpec::selection_field() const {
  if (family == Family::Power || family == Family::Unnormalized)
    return selection_name(selection);
  return "-";
}

MethodSpec MethodSpec::parse(const std::string& text) {
  const auto tokens = split_tokens(text);
  if (tokens.empty()) throw InvalidParams("empty method spec");
  std::string head = tokens[0];
  std::transform(head.begin(), head.end(), head.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });

  MethodSpec m;
  std::size_t next = 1;
  auto take_layers = [&](int fallback) {
    if (next < tokens.size()) {
      try {
        return std::stoi(tokens[next++]);
      } catch (const std::exception&) {
        throw InvalidParams("method spec '" + text + "': bad layer count");
      }
    }
    return fallback;
  };

  if (head == "power") {
    m.family = Family::Power;
    m.op = OperatorKind::Adjacency;
    if (next < tokens.size() && !std::isdigit(static_cast<unsigned char>(tokens[next][0])))
      m.op = operator_from_name(tokens[next++]);
    m.layers = take_layers(10);
  } else if (head == "unnorm" || head == "unnormalized") {
    m.family = Family::Unnormalized;
    m.op = OperatorKind::Adjacency;
    if (next < tokens.size() && !std::isdigit(static_cast<unsigned char>(tokens[next][0])))
      m.op = operator_from_name(tokens[next++]);
    m.layers = take_layers(10);
  } else if (head == "sign") {
    m.family = Family::Unnormalized;
    m.op = OperatorKind::RandomWalk;
    m.layers = take_layers(10);
  } else if (head == "sgc-incep" || head == "sgc_incep" || head == "sgc") {
    m.family = Family::Unnormalized;
    m.op = OperatorKind::SymLaplacian;
    m.layers = take_layers(10);
  } else if (head == "gcn") {
    m.family = Family::Gcn;
    m.op = OperatorKind::SymLaplacian;
    if (next < tokens.size() && !std::isdigit(static_cast<unsigned char>(tokens[next][0])))
      m.op = operator_from_name(tokens[next++]);
    m.layers = take_layers(2);
  } else if (head == "ase") {
    m.family = Family::Ase;
  } else if (head == "cov" || head == "cov(x)") {
    m.family = Family::Cov;
  } else if (head == "a_x" || head == "ax") {
    m.family = Family::AX;
  } else {
    throw InvalidParams("unknown method '" + tokens[0] + "'");
  }
  if (next < tokens.size()) m.selection = selection_from_name(tokens[next++]);
  if (next < tokens.size())
    throw InvalidParams("method spec '" + text + "': trailing tokens");
  return m;
}

// ---------------------------------------------------------------------------
// results
// ---------------------------------------------------------------------------

double ExperimentResult::mean_accuracy() const {
  double sum = 0.0;
  int count = 0;
  for (double a : accuracies)
    if (std::isfinite(a)) {
      sum += a;
      ++count;
    }
  return count > 0 ? sum / count : std::numeric_limits<double>::quiet_NaN();
}

double ExperimentResult::stderr_accuracy() const {
  std::vector<double> ok;
  for (double a : accuracies)
    if (std::isfinite(a)) ok.push_back(a);
  if (ok.size() < 2) return 0.0;
  const double mean = mean_accuracy();
  double ss = 0.0;
  for (double a : ok) ss += (a - mean) * (a - mean);
  const double stddev = std::sqrt(ss / static_cast<double>(ok.size() - 1));
  return stddev / std::sqrt(static_cast<double>(ok.size()));
}

void emit_results(const std::vector<ExperimentResult>& results,
                  const std::string& csv_path, const std::string& json_path,
                  const std::string& config_echo) {
  struct Row {
    std::string dataset, method, op, selection;
    int layers, split;
    std::uint64_t seed;
    double accuracy, wall;
    std::string error;
  };
  std::vector<Row> rows;
  for (const auto& r : results) {
    for (std::size_t i = 0; i < r.accuracies.size(); ++i) {
      rows.push_back({r.dataset, r.method.tag(), r.method.operator_field(),
                      r.method.selection_field(), r.method.layers, r.split_ids[i],
                      r.seeds[i], r.accuracies[i], r.wall_ms[i],
                      i < r.errors.size() ? r.errors[i] : ""});
    }
  }
  std::sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) {
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    if (a.method != b.method) return a.method < b.method;
    if (a.split != b.split) return a.split < b.split;
    return a.seed < b.seed;
  });

  if (!csv_path.empty()) {
    std::ofstream os(csv_path);
    if (!os) throw IoError("cannot open '" + csv_path + "' for writing");
    os << "dataset,method,operator,L,selection,split,seed,accuracy,wall_ms\n";
    char buf[64];
    for (const auto& row : rows) {
      if (std::isfinite(row.accuracy))
        std::snprintf(buf, sizeof buf, "%.6f", row.accuracy);
      else
        std::snprintf(buf, sizeof buf, "nan");
      os << row.dataset << ',' << row.method << ',' << row.op << ',' << row.layers
         << ',' << row.selection << ',' << row.split << ',' << row.seed << ',' << buf
         << ',' << static_cast<long long>(row.wall + 0.5) << '\n';
    }
    if (!os) throw IoError("write failed for '" + csv_path + "'");
  }

  if (!json_path.empty()) {
    nlohmann::json j;
    j["config"] = config_echo;
    j["environment"] = {{"compiler", __VERSION__}, {"float", "ieee-binary64"}};
    nlohmann::json jresults = nlohmann::json::array();
    for (const auto& r : results) {
      nlohmann::json jr;
      jr["dataset"] = r.dataset;
      jr["method"] = r.method.tag();
      jr["operator"] = r.method.operator_field();
      jr["L"] = r.method.layers;
      jr["selection"] = r.method.selection_field();
      jr["seeds"] = r.seeds;
      jr["splits"] = r.split_ids;
      nlohmann::json acc = nlohmann::json::array();
      for (double a : r.accuracies) {
        if (std::isfinite(a)) acc.push_back(a);
        else acc.push_back(nullptr);
      }
      jr["accuracies"] = acc;
      jr["wall_ms"] = r.wall_ms;
      jr["errors"] = r.errors;
      if (!r.warnings.empty()) jr["warnings"] = r.warnings;
      if (r.homophily) jr["homophily"] = *r.homophily;
      const double mean = r.mean_accuracy();
      if (std::isfinite(mean)) {
        jr["mean"] = mean;
        jr["stderr"] = r.stderr_accuracy();
      }
      jresults.push_back(jr);
    }
    j["results"] = jresults;
    std::ofstream os(json_path);
    if (!os) throw IoError("cannot open '" + json_path + "' for writing");
    os << j.dump(2) << '\n';
    if (!os) throw IoError("write failed for '" + json_path + "'");
  }
}

// ---------------------------------------------------------------------------
// shared evaluation plumbing
// ---------------------------------------------------------------------------

EmbeddingOutput build_embedding(const MethodSpec& method, const Graph& g,
                                const DenseMatrix& x) {
  EmbeddingOutput out;
  switch (method.family) {
    case MethodSpec::Family::Power:
    case MethodSpec::Family::Unnormalized: {
      EmbeddingList list = method.family == MethodSpec::Family::Power
                               ? power_embed(method.op, g, x, method.layers)
                               : unnormalized_embed(method.op, g, x, method.layers);
      list = select_features(list, method.selection);
      out.blocks.reserve(list.blocks.size());
      for (std::size_t b = 0; b < list.blocks.size(); ++b) {
        // Input block enters as-is; propagated blocks get unit columns so
        // classifier conditioning does not differ across methods. LastOnly
        // at depth zero selects the input itself.
        const bool is_input =
            b == 0 &&
            (method.selection != FeatureSelection::LastOnly || method.layers == 0);
        out.blocks.push_back(is_input ? list.blocks[b]
                                      : column_normalize_lenient(list.blocks[b]));
      }
      break;
    }
    case MethodSpec::Family::Ase: {
      out.blocks.push_back(ase(g, x.cols(), &out.eig_gap_warning));
      out.single_matrix = true;
      break;
    }
    case MethodSpec::Family::Cov: {
      out.blocks.push_back(cov_embed(x, x.cols()));
      out.single_matrix = true;
      break;
    }
    case MethodSpec::Family::AX: {
      out.blocks.push_back(a_x_embed(g, x, x.cols(), &out.eig_gap_warning));
      out.single_matrix = true;
      break;
    }
    case MethodSpec::Family::Gcn:
      throw InvalidParams("build_embedding: gcn trains end-to-end, no embedding");
  }
  return out;
}

double evaluate_method(const MethodSpec& method, const Graph& g, const DenseMatrix& x,
                       const std::vector<int>& labels, const SplitSpec& split,
                       const TrainConfig& cfg, bool* eig_gap_warning) {
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);

  if (method.family == MethodSpec::Family::Gcn)
    return gcn_train_eval(g, x, labels, split.train, split.test, method.layers, cfg);

  EmbeddingOutput emb = build_embedding(method, g, x);
  if (eig_gap_warning) *eig_gap_warning = emb.eig_gap_warning;
  std::vector<int> train_labels, test_labels;
  for (int i : split.train) train_labels.push_back(labels[i]);
  for (int i : split.test) test_labels.push_back(labels[i]);

  if (emb.single_matrix) {
    const DenseMatrix train_x = select_rows(emb.blocks[0], split.train);
    const DenseMatrix test_x = select_rows(emb.blocks[0], split.test);
    const Mlp model = train_mlp(train_x, train_labels, classes, cfg);
    return accuracy(predict(model, test_x), test_labels);
  }

  std::vector<DenseMatrix> train_blocks, test_blocks;
  for (const auto& b : emb.blocks) {
    train_blocks.push_back(select_rows(b, split.train));
    test_blocks.push_back(select_rows(b, split.test));
  }
  const InceptionModel model = train_inception(train_blocks, train_labels, classes, cfg);
  return accuracy(predict(model, test_blocks), test_labels);
}

// ---------------------------------------------------------------------------
// convergence
// ---------------------------------------------------------------------------

ConvergenceResult convergence_experiment(const ConvergenceConfig& cfg) {
  if (cfg.trials < 1) throw InvalidParams("convergence: trials must be >= 1");
  const SbmParams params = make_2b_sbm(cfg.n, cfg.p, cfg.q);
  const GaussianMixtureParams gm =
      GaussianMixtureParams::symmetric_pair(cfg.mean0, cfg.covariance_scale);
  if (gm.feature_dim() != cfg.k)
    throw InvalidParams("convergence: feature dim must equal k (paper protocol)");

  std::vector<std::vector<std::vector<double>>> per_trial(cfg.trials);
  parallel_for(cfg.trials, cfg.jobs, [&](int t) {
    Rng rng = Rng::derived(cfg.seed, static_cast<std::uint64_t>(t));
    const Graph g = sample_sbm(params, rng);
    const DenseMatrix x = sample_features(params.memberships, gm, rng);

    const DenseMatrix dense = operator_dense(cfg.kind, g);
    DenseMatrix oracle_basis;
    if (cfg.kind == OperatorKind::RandomWalk) {
      // Eigenvectors via the similar symmetric operator: if w is an
      // eigenvector of the symmetric normalization, D~^{-1/2} w is one of
      // the random-walk operator.
      const DenseMatrix sym = operator_dense(OperatorKind::SymLaplacian, g);
      const EigenDecomposition eig = sym_eig(sym);
      DenseMatrix top = leading_cols(eig.vectors, cfg.k);
      for (int i = 0; i < g.node_count(); ++i) {
        const double scale = 1.0 / std::sqrt(g.degree(i) + 1.0);
        for (int j = 0; j < cfg.k; ++j) top(i, j) *= scale;
      }
      oracle_basis = thin_qr(top).q;
    } else {
      const EigenDecomposition eig = sym_eig(dense);
      oracle_basis = leading_cols(eig.vectors, cfg.k);
    }

    const EmbeddingList blocks = power_embed(cfg.kind, g, x, cfg.layers);
    auto& curves = per_trial[t];
    curves.resize(cfg.layers + 1);
    for (int step = 0; step <= cfg.layers; ++step) {
      const ThinQr qb = thin_qr(blocks.blocks[step]);
      curves[step] = principal_angles_orthonormal(qb.q, oracle_basis);
    }
  });

  ConvergenceResult result;
  result.mean_angles.assign(cfg.layers + 1, std::vector<double>(cfg.k, 0.0));
  for (int t = 0; t < cfg.trials; ++t)
    for (int step = 0; step <= cfg.layers; ++step)
      for (int i = 0; i < cfg.k; ++i)
        result.mean_angles[step][i] += per_trial[t][step][i] / cfg.trials;
  return result;
}

void write_convergence_csv(const ConvergenceResult& r, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  const int k = r.mean_angles.empty() ? 0 : static_cast<int>(r.mean_angles[0].size());
  os << "t";
  for (int i = 1; i <= k; ++i) os << ",angle_" << i;
  os << '\n';
  char buf[64];
  for (std::size_t t = 0; t < r.mean_angles.size(); ++t) {
    os << t;
    for (int i = 0; i < k; ++i) {
      std::snprintf(buf, sizeof buf, "%.9e", r.mean_angles[t][i]);
      os << ',' << buf;
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// two-block classification benchmark
// ---------------------------------------------------------------------------

std::vector<ExperimentResult> sbm_classification_experiment(
    const SbmBenchConfig& cfg, const std::vector<MethodSpec>& methods) {
  if (cfg.trials < 1) throw InvalidParams("bench: trials must be >= 1");
  std::vector<ExperimentResult> results;
  for (const auto& [p, q] : cfg.pq_list) {
    const SbmParams params = make_2b_sbm(cfg.n, p, q);
    const GaussianMixtureParams gm =
        GaussianMixtureParams::symmetric_pair(cfg.mean0, cfg.covariance_scale);
    char dsname[96];
    std::snprintf(dsname, sizeof dsname, "sbm_n%d_p%g_q%g", cfg.n, p, q);

    std::vector<std::vector<double>> acc(methods.size(),
                                         std::vector<double>(cfg.trials, 0.0));
    std::vector<std::vector<double>> wall(methods.size(),
                                          std::vector<double>(cfg.trials, 0.0));
    std::vector<std::vector<std::string>> errs(
        methods.size(), std::vector<std::string>(cfg.trials));
    std::vector<std::vector<char>> gaps(methods.size(),
                                        std::vector<char>(cfg.trials, 0));

    parallel_for(cfg.trials, cfg.jobs, [&](int t) {
      Rng rng = Rng::derived(cfg.seed, static_cast<std::uint64_t>(t));
      const Graph g = sample_sbm(params, rng);
      const DenseMatrix x = sample_features(params.memberships, gm, rng);
      const SplitSpec split =
          make_stratified_split(params.memberships, cfg.train_frac, 0.0, rng);
      for (std::size_t m = 0; m < methods.size(); ++m) {
        TrainConfig tc = cfg.train;
        tc.seed = cfg.seed + static_cast<std::uint64_t>(t);
        const auto start = std::chrono::steady_clock::now();
        try {
          bool gap = false;
          acc[m][t] =
              evaluate_method(methods[m], g, x, params.memberships, split, tc, &gap);
          gaps[m][t] = gap ? 1 : 0;
        } catch (const Error& e) {
          acc[m][t] = std::numeric_limits<double>::quiet_NaN();
          errs[m][t] = e.what();
        }
        wall[m][t] = elapsed_ms(start);
      }
    });

    for (std::size_t m = 0; m < methods.size(); ++m) {
      ExperimentResult r;
      r.dataset = dsname;
      r.method = methods[m];
      for (int t = 0; t < cfg.trials; ++t) {
        r.split_ids.push_back(t);
        r.seeds.push_back(cfg.seed + static_cast<std::uint64_t>(t));
        r.accuracies.push_back(acc[m][t]);
        r.wall_ms.push_back(wall[m][t]);
        r.errors.push_back(errs[m][t]);
        if (gaps[m][t])
          r.warnings.push_back("trial " + std::to_string(t) + ": eigen-gap tie at k");
      }
      results.push_back(std::move(r));
    }
  }
  return results;
}

// ---------------------------------------------------------------------------
// over-smoothing diagnostic
// ---------------------------------------------------------------------------

namespace {

double min_column_cosine(const DenseMatrix& m, const std::vector<double>& direction) {
  double dn = 0.0;
  for (double v : direction) dn += v * v;
  dn = std::sqrt(dn);
  double worst = 1.0;
  for (int j = 0; j < m.cols(); ++j) {
    double dot = 0.0, nn = 0.0;
    for (int i = 0; i < m.rows(); ++i) {
      dot += m(i, j) * direction[i];
      nn += m(i, j) * m(i, j);
    }
    const double denom = std::sqrt(nn) * dn;
    worst = std::min(worst, denom > 0.0 ? std::abs(dot) / denom : 0.0);
  }
  return worst;
}

}  // namespace

std::vector<OversmoothRow> oversmoothing_diagnostic(
    const Graph& g, const DenseMatrix& x, const std::vector<int>& depths,
    OperatorKind kind, const std::vector<int>* labels, const SplitSpec* split,
    const TrainConfig* train_cfg) {
  const DenseMatrix dense = operator_dense(kind, g);
  DenseMatrix sym = dense;
  if (kind == OperatorKind::RandomWalk) sym = operator_dense(OperatorKind::SymLaplacian, g);
  EigenDecomposition eig = sym_eig(sym);
  DenseMatrix top2 = leading_cols(eig.vectors, std::min(2, g.node_count()));
  std::vector<double> top1(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) top1[i] = eig.vectors(i, 0);
  if (kind == OperatorKind::RandomWalk) {
    for (int i = 0; i < g.node_count(); ++i) {
      const double scale = 1.0 / std::sqrt(g.degree(i) + 1.0);
      top1[i] *= scale;
      for (int j = 0; j < top2.cols(); ++j) top2(i, j) *= scale;
    }
  }
  const DenseMatrix top2_basis = thin_qr(top2).q;

  std::vector<OversmoothRow> rows;
  for (int depth : depths) {
    const EmbeddingList unnorm = unnormalized_embed(kind, g, x, depth);
    const EmbeddingList power = power_embed(kind, g, x, depth);
    for (const auto* list : {&unnorm, &power}) {
      OversmoothRow row;
      row.depth = depth;
      row.method = list->method;
      const DenseMatrix& last = list->blocks.back();
      row.cosine_top1 = min_column_cosine(last, top1);
      const ThinQr q = thin_qr(last);
      row.angle_top2 = principal_angles_orthonormal(q.q, top2_basis).back();
      if (labels && split && train_cfg) {
        EmbeddingList sel = select_features(*list, FeatureSelection::LastOnly);
        MethodSpec spec;
        spec.family = list->method == "power" ? MethodSpec::Family::Power
                                              : MethodSpec::Family::Unnormalized;
        std::vector<int> train_labels, test_labels;
        for (int i : split->train) train_labels.push_back((*labels)[i]);
        for (int i : split->test) test_labels.push_back((*labels)[i]);
        int classes = 0;
        for (int y : *labels) classes = std::max(classes, y + 1);
        std::vector<DenseMatrix> train_blocks{
            select_rows(column_normalize_lenient(sel.blocks[0]), split->train)};
        std::vector<DenseMatrix> test_blocks{
            select_rows(column_normalize_lenient(sel.blocks[0]), split->test)};
        const InceptionModel model =
            train_inception(train_blocks, train_labels, classes, *train_cfg);
        row.accuracy_last_only = accuracy(predict(model, test_blocks), test_labels);
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_oversmooth_csv(const std::vector<OversmoothRow>& rows,
                          const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << "depth,method,cosine_top1,angle_top2,accuracy_last_only\n";
  char buf[128];
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%d,%s,%.9e,%.9e,", row.depth, row.method.c_str(),
                  row.cosine_top1, row.angle_top2);
    os << buf;
    if (row.accuracy_last_only) {
      std::snprintf(buf, sizeof buf, "%.6f", *row.accuracy_last_only);
      os << buf;
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

// ---------------------------------------------------------------------------
// file-backed datasets
// ---------------------------------------------------------------------------

int realdata_embedding_width(int n, const DenseMatrix& x) {
  const int rule = n < 1000 ? 10 : 100;
  const int rank = numeric_rank(x);
  return std::max(1, std::min({rule, rank, std::min(x.rows(), x.cols())}));
}

std::vector<ExperimentResult> realdata_experiment(const Dataset& ds,
                                                  const std::vector<MethodSpec>& methods,
                                                  const TrainConfig& cfg, int jobs) {
  ds.validate();
  std::vector<SplitSpec> splits = ds.splits;
  if (splits.empty()) {
    std::fprintf(stderr,
                 "[realdata] dataset '%s' has no splits; generating 10 stratified "
                 "48/32/20 splits\n",
                 ds.name.c_str());
    Rng rng(cfg.seed);
    for (int i = 0; i < 10; ++i)
      splits.push_back(make_stratified_split(ds.labels, 0.48, 0.32, rng));
  }

  const int k = realdata_embedding_width(ds.graph.node_count(), ds.features);
  const DenseMatrix reduced = pca_reduce(ds.features, k);
  const double homophily =
      ds.homophily ? *ds.homophily : edge_homophily(ds.graph, ds.labels);

  const int n_splits = static_cast<int>(splits.size());
  std::vector<std::vector<double>> acc(methods.size(),
                                       std::vector<double>(n_splits, 0.0));
  std::vector<std::vector<double>> wall(methods.size(),
                                        std::vector<double>(n_splits, 0.0));
  std::vector<std::vector<std::string>> errs(methods.size(),
                                             std::vector<std::string>(n_splits));
  std::vector<std::vector<char>> gaps(methods.size(), std::vector<char>(n_splits, 0));

  parallel_for(n_splits, jobs, [&](int s) {
    for (std::size_t m = 0; m < methods.size(); ++m) {
      TrainConfig tc = cfg;
      tc.seed = cfg.seed + static_cast<std::uint64_t>(s);
      // Semi-supervised baselines keep the original features.
      const DenseMatrix& x =
          methods[m].family == MethodSpec::Family::Gcn ? ds.features : reduced;
      const auto start = std::chrono::steady_clock::now();
      try {
        bool gap = false;
        acc[m][s] =
            evaluate_method(methods[m], ds.graph, x, ds.labels, splits[s], tc, &gap);
        gaps[m][s] = gap ? 1 : 0;
      } catch (const Error& e) {
        acc[m][s] = std::numeric_limits<double>::quiet_NaN();
        errs[m][s] = e.what();
      }
      wall[m][s] = elapsed_ms(start);
    }
  });

  std::vector<ExperimentResult> results;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    ExperimentResult r;
    r.dataset = ds.name;
    r.method = methods[m];
    r.homophily = homophily;
    for (int s = 0; s < n_splits; ++s) {
      r.split_ids.push_back(s);
      r.seeds.push_back(cfg.seed + static_cast<std::uint64_t>(s));
      r.accuracies.push_back(acc[m][s]);
      r.wall_ms.push_back(wall[m][s]);
      r.errors.push_back(errs[m][s]);
      if (gaps[m][s])
        r.warnings.push_back("split " + std::to_string(s) + ": eigen-gap tie at k");
    }
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace graphembed
