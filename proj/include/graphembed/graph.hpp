#pragma once

#include <string>
#include <utility>
#include <vector>

#include "graphembed/matrix.hpp"

namespace graphembed {

// Undirected simple graph in CSR form. No self-loops, no duplicate edges;
// self-loops enter only through operator construction (A + I downstream).
class Graph {
 public:
  Graph() = default;

  // Builds from an arbitrary pair list: (u,u) dropped, duplicates and
  // reversed copies collapsed. Throws InvalidEdge on out-of-range indices.
  static Graph from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs);

  int node_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Canonical edge list (u < v, sorted). Kept for (de)serialization.
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  // CSR neighbor access.
  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& column_indices() const { return column_indices_; }
  int degree(int u) const { return row_offsets_[u + 1] - row_offsets_[u]; }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> row_offsets_;
  std::vector<int> column_indices_;
};

enum class OperatorKind {
  Adjacency,     // raw A, no self-loop
  SymLaplacian,  // D~^{-1/2} (A+I) D~^{-1/2}
  RandomWalk,    // D~^{-1} (A+I)
};

const char* operator_name(OperatorKind kind);
OperatorKind operator_from_name(const std::string& name);

std::vector<int> degrees(const Graph& g);

// S * M computed sparsely in O(|E| k + n k); never materializes dense S.
// Deterministic: fixed CSR reduction order. Throws ShapeError if
// M.rows() != g.node_count().
DenseMatrix apply_operator(OperatorKind kind, const Graph& g, const DenseMatrix& m);

inline constexpr int kDefaultDenseLimit = 5000;

// Dense n x n operator, for testing oracles and small-graph spectral work.
// Throws TooLarge when n exceeds the limit.
DenseMatrix operator_dense(OperatorKind kind, const Graph& g,
                           int dense_limit = kDefaultDenseLimit);

bool is_connected(const Graph& g);
bool is_bipartite(const Graph& g);

// Graph with nodes relabelled: node i becomes perm[i].
Graph permuted(const Graph& g, const std::vector<int>& perm);

// Fraction of edges joining same-label endpoints.
double edge_homophily(const Graph& g, const std::vector<int>& labels);

}  // namespace graphembed
