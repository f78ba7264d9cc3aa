#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "graphembed/dataset.hpp"
#include "graphembed/embeddings.hpp"
#include "graphembed/nn.hpp"
#include "graphembed/sbm.hpp"

namespace graphembed {

// A method to benchmark: embedding family + operator + depth + block
// selection. Tags follow the usual naming ("Power(Lap)-10", "SIGN-2", "ASE").
struct MethodSpec {
  enum class Family { Power, Unnormalized, Ase, Cov, AX, Gcn };

  Family family = Family::Power;
  OperatorKind op = OperatorKind::SymLaplacian;
  int layers = 0;
  FeatureSelection selection = FeatureSelection::All;

  std::string tag() const;
  std::string operator_field() const;  // "adj"/"lap"/"rw" or "-"
  std::string selection_field() const;

  // Parses e.g. "power lap 10 all", "sign 2", "sgc-incep 10", "gcn 5",
  // "ase", "cov", "a_x". Throws InvalidParams.
  static MethodSpec parse(const std::string& text);
};

struct ExperimentResult {
  std::string dataset;
  MethodSpec method;
  std::vector<int> split_ids;
  std::vector<std::uint64_t> seeds;
  std::vector<double> accuracies;  // NaN where the run failed
  std::vector<double> wall_ms;
  std::vector<std::string> errors;    // empty string where the run succeeded
  std::vector<std::string> warnings;  // e.g. eigen-gap ties; informational
  std::optional<double> homophily;    // dataset metadata when known

  double mean_accuracy() const;
  double stderr_accuracy() const;  // sample stddev / sqrt(count)
};

// CSV (one row per method x split, sorted) plus a JSON sidecar carrying the
// full config echo, environment, and seeds. wall_ms is the only
// run-dependent column.
void emit_results(const std::vector<ExperimentResult>& results,
                  const std::string& csv_path, const std::string& json_path,
                  const std::string& config_echo = "");

// ---------------------------------------------------------------------------
// Convergence of the power-iteration embedding to the oracle eigenspace.
// ---------------------------------------------------------------------------

struct ConvergenceConfig {
  int n = 500;
  double p = 0.5;
  double q = 0.25;
  OperatorKind kind = OperatorKind::Adjacency;
  int k = 2;
  int layers = 20;
  int trials = 30;
  std::uint64_t seed = 0;
  std::vector<double> mean0 = {1.0, 1.0};  // block-1 mean is -mean0
  double covariance_scale = 1.0;
  int jobs = 1;
};

struct ConvergenceResult {
  // mean_angles[t][i]: mean i-th principal angle (ascending) between the
  // block at iteration t and the sampled operator's top-k eigenspace.
  std::vector<std::vector<double>> mean_angles;

  double mean_largest_angle(int t) const { return mean_angles[t].back(); }
};

ConvergenceResult convergence_experiment(const ConvergenceConfig& cfg);
void write_convergence_csv(const ConvergenceResult& r, const std::string& path);

// ---------------------------------------------------------------------------
// Node classification on sampled two-block graphs.
// ---------------------------------------------------------------------------

struct SbmBenchConfig {
  int n = 500;
  std::vector<std::pair<double, double>> pq_list = {{0.5, 0.25}};
  std::vector<double> mean0 = {1.0, 1.0};
  double covariance_scale = 1.0;
  int trials = 10;
  double train_frac = 0.1;
  std::uint64_t seed = 0;
  TrainConfig train;
  int jobs = 1;
};

std::vector<ExperimentResult> sbm_classification_experiment(
    const SbmBenchConfig& cfg, const std::vector<MethodSpec>& methods);

// ---------------------------------------------------------------------------
// Depth sweep contrasting unnormalized propagation with the normalized
// iteration against the oracle eigenspaces.
// ---------------------------------------------------------------------------

struct OversmoothRow {
  int depth;
  std::string method;      // "unnormalized" or "power"
  double cosine_top1;      // min per-column |cos| to the oracle top eigenvector
  double angle_top2;       // largest principal angle to the oracle top-2 space
  std::optional<double> accuracy_last_only;
};

std::vector<OversmoothRow> oversmoothing_diagnostic(
    const Graph& g, const DenseMatrix& x, const std::vector<int>& depths,
    OperatorKind kind, const std::vector<int>* labels = nullptr,
    const SplitSpec* split = nullptr, const TrainConfig* train_cfg = nullptr);

void write_oversmooth_csv(const std::vector<OversmoothRow>& rows,
                          const std::string& path);

// ---------------------------------------------------------------------------
// File-backed datasets (real benchmarks in the artifact's format).
// ---------------------------------------------------------------------------

// Embedding width rule for file datasets: 10 below 1000 nodes, else 100,
// capped at the numerical rank of the features.
int realdata_embedding_width(int n, const DenseMatrix& x);

std::vector<ExperimentResult> realdata_experiment(const Dataset& ds,
                                                  const std::vector<MethodSpec>& methods,
                                                  const TrainConfig& cfg,
                                                  int jobs = 1);

// ---------------------------------------------------------------------------
// Shared plumbing.
// ---------------------------------------------------------------------------

// Builds the embedding for a method and returns classifier-ready blocks
// (selection applied; blocks after the first column-normalized, zero columns
// left alone). Single-matrix methods return one block and are classified by
// a plain 2-layer MLP rather than the inception network.
struct EmbeddingOutput {
  std::vector<DenseMatrix> blocks;
  bool single_matrix = false;
  bool eig_gap_warning = false;
};
EmbeddingOutput build_embedding(const MethodSpec& method, const Graph& g,
                                const DenseMatrix& x);

// Trains per the method family on the split and returns test accuracy.
double evaluate_method(const MethodSpec& method, const Graph& g,
                       const DenseMatrix& x, const std::vector<int>& labels,
                       const SplitSpec& split, const TrainConfig& cfg,
                       bool* eig_gap_warning = nullptr);

}  // namespace graphembed
