#pragma once

#include <optional>
#include <string>
#include <vector>

#include "graphembed/graph.hpp"
#include "graphembed/matrix.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

// Disjoint train/val/test index sets over a subset of [0, n).
struct SplitSpec {
  std::vector<int> train;
  std::vector<int> val;
  std::vector<int> test;

  void validate(int n) const;  // throws InvalidParams
};

struct Dataset {
  Graph graph;
  DenseMatrix features;
  std::vector<int> labels;
  std::vector<SplitSpec> splits;
  std::string name;
  std::optional<double> homophily;

  int num_classes() const;
  void validate() const;
};

// Edge-list text format: "n m" then m lines "u v"; '#' starts a comment line.
Graph read_graph_file(const std::string& path);
void write_graph_file(const Graph& g, const std::string& path);

// features.csv: n rows of comma-separated reals (no header).
DenseMatrix read_features_csv(const std::string& path);
void write_features_csv(const DenseMatrix& x, const std::string& path);

// labels.csv: n integers, one per line.
std::vector<int> read_labels_csv(const std::string& path);
void write_labels_csv(const std::vector<int>& y, const std::string& path);

// splits/split_<i>.json: {"train":[...],"val":[...],"test":[...]}.
SplitSpec read_split_json(const std::string& path);
void write_split_json(const SplitSpec& s, const std::string& path);

// Directory layout: graph.txt, features.csv, labels.csv, splits/.
Dataset load_dataset(const std::string& dir);
void save_dataset(const Dataset& ds, const std::string& dir);

// Stratified split by label: per class, round(frac * count) rows (train gets
// at least one), the remainder becomes test.
SplitSpec make_stratified_split(const std::vector<int>& labels, double train_frac,
                                double val_frac, Rng& rng);

}  // namespace graphembed
