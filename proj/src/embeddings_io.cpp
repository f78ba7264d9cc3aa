#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "graphembed/embeddings.hpp"
#include "graphembed/errors.hpp"

namespace graphembed {

namespace fs = std::filesystem;

namespace {

void write_matrix_file(const DenseMatrix& m, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  os << m.rows() << ' ' << m.cols() << '\n';
  char buf[64];
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", m(i, j));
      os << (j ? " " : "") << buf;
    }
    os << '\n';
  }
  if (!os) throw IoError("write failed for '" + path + "'");
}

DenseMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open matrix file '" + path + "'");
  int rows = 0, cols = 0;
  if (!(is >> rows >> cols) || rows < 0 || cols < 0)
    throw IoError("matrix file '" + path + "': bad header");
  DenseMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!(is >> m(i, j))) throw IoError("matrix file '" + path + "': truncated data");
  return m;
}

}  // namespace

void save_embedding_list(const EmbeddingList& p, const std::string& dir) {
  const fs::path root(dir);
  fs::create_directories(root);
  {
    std::ofstream meta((root / "meta").string());
    if (!meta) throw IoError("cannot write embedding meta in '" + dir + "'");
    meta << "method=" << p.method << '\n';
    meta << "operator=" << operator_name(p.op) << '\n';
    meta << "L=" << p.depth << '\n';
    meta << "k=" << p.k << '\n';
    meta << "n=" << p.row_count() << '\n';
    meta << "blocks=" << p.block_count() << '\n';
  }
  char name[32];
  for (int b = 0; b < p.block_count(); ++b) {
    std::snprintf(name, sizeof name, "block_%03d", b);
    write_matrix_file(p.blocks[b], (root / name).string());
  }
}

EmbeddingList load_embedding_list(const std::string& dir) {
  const fs::path root(dir);
  std::ifstream meta((root / "meta").string());
  if (!meta) throw IoError("cannot open embedding meta in '" + dir + "'");
  EmbeddingList p;
  int blocks = 0, n = 0;
  std::string line;
  while (std::getline(meta, line)) {
    const auto eq = line.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = line.substr(0, eq);
    const std::string value = line.substr(eq + 1);
    if (key == "method") p.method = value;
    else if (key == "operator") p.op = operator_from_name(value);
    else if (key == "L") p.depth = std::stoi(value);
    else if (key == "k") p.k = std::stoi(value);
    else if (key == "n") n = std::stoi(value);
    else if (key == "blocks") blocks = std::stoi(value);
  }
  if (blocks <= 0) throw IoError("embedding meta in '" + dir + "' is missing blocks");
  char name[32];
  for (int b = 0; b < blocks; ++b) {
    std::snprintf(name, sizeof name, "block_%03d", b);
    p.blocks.push_back(read_matrix_file((root / name).string()));
    if (p.blocks.back().rows() != n)
      throw IoError("embedding block " + std::to_string(b) + " row count disagrees with meta");
  }
  return p;
}

}  // namespace graphembed
