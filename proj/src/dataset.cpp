#include "graphembed/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "json.hpp"

#include "graphembed/errors.hpp"

namespace graphembed {

namespace fs = std::filesystem;
using nlohmann::json;

void SplitSpec::validate(int n) const {
  if (train.empty()) throw InvalidParams("split: empty training set");
  std::set<int> seen;
  auto check = [&](const std::vector<int>& part, const char* name) {
    for (int i : part) {
      if (i < 0 || i >= n)
        throw InvalidParams(std::string("split: ") + name + " index " +
                            std::to_string(i) + " out of range");
      if (!seen.insert(i).second)
        throw InvalidParams("split: index " + std::to_string(i) +
                            " appears in two parts");
    }
  };
  check(train, "train");
  check(val, "val");
  check(test, "test");
}

int Dataset::num_classes() const {
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);
  return classes;
}

void Dataset::validate() const {
  const int n = graph.node_count();
  if (features.rows() != n) throw InvalidParams("dataset: feature rows disagree with n");
  if (static_cast<int>(labels.size()) != n)
    throw InvalidParams("dataset: label count disagrees with n");
  for (int y : labels)
    if (y < 0) throw InvalidParams("dataset: negative label");
  for (const auto& s : splits) s.validate(n);
}

Graph read_graph_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open graph file '" + path + "'");
  std::string line;
  auto next_data_line = [&]() -> bool {
    while (std::getline(is, line)) {
      const auto pos = line.find_first_not_of(" \t\r");
      if (pos == std::string::npos) continue;
      if (line[pos] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_data_line()) throw IoError("graph file '" + path + "' has no header");
  long long n = 0, m = 0;
  {
    std::istringstream ss(line);
    if (!(ss >> n >> m) || n < 0 || m < 0)
      throw IoError("graph file '" + path + "': bad header line '" + line + "'");
  }
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<std::size_t>(m));
  for (long long e = 0; e < m; ++e) {
    if (!next_data_line())
      throw IoError("graph file '" + path + "': expected " + std::to_string(m) +
                    " edges, got " + std::to_string(e));
    std::istringstream ss(line);
    long long u = 0, v = 0;
    if (!(ss >> u >> v))
      throw IoError("graph file '" + path + "': bad edge line '" + line + "'");
    pairs.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  try {
    return Graph::from_edge_list(static_cast<int>(n), pairs);
  } catch (const InvalidEdge& e) {
    throw IoError("graph file '" + path + "': " + e.what());
  }
}

void write_graph_file(const Graph& g, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << g.node_count() << ' ' << g.edge_count() << '\n';
  for (const auto& [u, v] : g.edges()) os << u << ' ' << v << '\n';
  if (!os) throw IoError("write failed for '" + path + "'");
}

DenseMatrix read_features_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open features file '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    std::vector<double> row;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        throw IoError("features file '" + path + "': bad value '" + cell + "'");
      }
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw IoError("features file '" + path + "': ragged row " +
                    std::to_string(rows.size()));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  const int m = n > 0 ? static_cast<int>(rows.front().size()) : 0;
  DenseMatrix x(n, m);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) x(i, j) = rows[i][j];
  return x;
}

void write_features_csv(const DenseMatrix& x, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  char buf[64];
  for (int i = 0; i < x.rows(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", x(i, j));
      os << (j ? "," : "") << buf;
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

std::vector<int> read_labels_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open labels file '" + path + "'");
  std::vector<int> labels;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty() || line == "\r") continue;
    try {
      labels.push_back(std::stoi(line));
    } catch (const std::exception&) {
      throw IoError("labels file '" + path + "': bad value '" + line + "'");
    }
  }
  return labels;
}

void write_labels_csv(const std::vector<int>& y, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  for (int v : y) os << v << '\n';
  if (!os) throw IoError("write failed for '" + path + "'");
}

SplitSpec read_split_json(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open split file '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::exception& e) {
    throw IoError("split file '" + path + "': " + e.what());
  }
  SplitSpec s;
  try {
    s.train = j.at("train").get<std::vector<int>>();
    s.val = j.value("val", std::vector<int>{});
    s.test = j.at("test").get<std::vector<int>>();
  } catch (const json::exception& e) {
    throw IoError("split file '" + path + "': " + e.what());
  }
  return s;
}

void write_split_json(const SplitSpec& s, const std::string& path) {
  json j;
  j["train"] = s.train;
  j["val"] = s.val;
  j["test"] = s.test;
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << j.dump() << '\n';
  if (!os) throw IoError("write failed for '" + path + "'");
}

Dataset load_dataset(const std::string& dir) {
  const fs::path root(dir);
  if (!fs::is_directory(root)) throw IoError("dataset directory '" + dir + "' not found");
  Dataset ds;
  ds.graph = read_graph_file((root / "graph.txt").string());
  ds.features = read_features_csv((root / "features.csv").string());
  ds.labels = read_labels_csv((root / "labels.csv").string());
  ds.name = root.filename().string();
  if (ds.name.empty()) ds.name = root.parent_path().filename().string();

  const fs::path splits_dir = root / "splits";
  if (fs::is_directory(splits_dir)) {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(splits_dir)) {
      if (entry.path().extension() == ".json") files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) ds.splits.push_back(read_split_json(f.string()));
  }
  ds.validate();
  ds.homophily = edge_homophily(ds.graph, ds.labels);
  return ds;
}

void save_dataset(const Dataset& ds, const std::string& dir) {
  ds.validate();
  const fs::path root(dir);
  fs::create_directories(root);
  write_graph_file(ds.graph, (root / "graph.txt").string());
  write_features_csv(ds.features, (root / "features.csv").string());
  write_labels_csv(ds.labels, (root / "labels.csv").string());
  if (!ds.splits.empty()) {
    fs::create_directories(root / "splits");
    char name[32];
    for (std::size_t i = 0; i < ds.splits.size(); ++i) {
      std::snprintf(name, sizeof name, "split_%zu.json", i);
      write_split_json(ds.splits[i], (root / "splits" / name).string());
    }
  }
}

SplitSpec make_stratified_split(const std::vector<int>& labels, double train_frac,
                                double val_frac, Rng& rng) {
  if (!(train_frac > 0.0) || train_frac + val_frac >= 1.0)
    throw InvalidParams("split fractions must satisfy 0 < train, train + val < 1");
  int classes = 0;
  for (int y : labels) classes = std::max(classes, y + 1);
  SplitSpec split;
  for (int c = 0; c < classes; ++c) {
    std::vector<int> members;
    for (int i = 0; i < static_cast<int>(labels.size()); ++i)
      if (labels[i] == c) members.push_back(i);
    if (members.empty()) continue;
    rng.shuffle(members);
    const int count = static_cast<int>(members.size());
    int n_train = std::max(1, static_cast<int>(std::lround(train_frac * count)));
    int n_val = static_cast<int>(std::lround(val_frac * count));
    n_train = std::min(n_train, count);
    n_val = std::min(n_val, count - n_train);
    for (int i = 0; i < n_train; ++i) split.train.push_back(members[i]);
    for (int i = n_train; i < n_train + n_val; ++i) split.val.push_back(members[i]);
    for (int i = n_train + n_val; i < count; ++i) split.test.push_back(members[i]);
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.val.begin(), split.val.end());
  std::sort(split.test.begin(), split.test.end());
  split.validate(static_cast<int>(labels.size()));
  return split;
}

}  // namespace graphembed
