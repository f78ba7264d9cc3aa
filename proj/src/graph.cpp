#include "graphembed/graph.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>

#include "graphembed/errors.hpp"

namespace graphembed {

Graph Graph::from_edge_list(int n, const std::vector<std::pair<int, int>>& pairs) {
  if (n < 0) throw InvalidEdge("node count must be nonnegative");
  Graph g;
  g.n_ = n;
  g.edges_.reserve(pairs.size());
  for (const auto& [u, v] : pairs) {
    if (u < 0 || u >= n || v < 0 || v >= n)
      throw InvalidEdge("edge (" + std::to_string(u) + ", " + std::to_string(v) +
                        ") out of range for n = " + std::to_string(n));
    if (u == v) continue;  // self-loops dropped
    g.edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(g.edges_.begin(), g.edges_.end());
  g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());

  // CSR over both directions.
  g.row_offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : g.edges_) {
    ++g.row_offsets_[u + 1];
    ++g.row_offsets_[v + 1];
  }
  for (int i = 0; i < n; ++i) g.row_offsets_[i + 1] += g.row_offsets_[i];
  g.column_indices_.resize(g.row_offsets_[n]);
  std::vector<int> cursor(g.row_offsets_.begin(), g.row_offsets_.end() - 1);
  for (const auto& [u, v] : g.edges_) {
    g.column_indices_[cursor[u]++] = v;
    g.column_indices_[cursor[v]++] = u;
  }
  for (int i = 0; i < n; ++i)
    std::sort(g.column_indices_.begin() + g.row_offsets_[i],
              g.column_indices_.begin() + g.row_offsets_[i + 1]);
  return g;
}

const char* operator_name(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::Adjacency: return "adj";
    case OperatorKind::SymLaplacian: return "lap";
    case OperatorKind::RandomWalk: return "rw";
  }
  return "?";
}

OperatorKind operator_from_name(const std::string& name) {
  if (name == "adj" || name == "adjacency") return OperatorKind::Adjacency;
  if (name == "lap" || name == "laplacian" || name == "sym") return OperatorKind::SymLaplacian;
  if (name == "rw" || name == "randomwalk" || name == "random-walk") return OperatorKind::RandomWalk;
  throw InvalidParams("unknown operator '" + name + "' (expect adj, lap, or rw)");
}

std::vector<int> degrees(const Graph& g) {
  std::vector<int> d(g.node_count());
  for (int i = 0; i < g.node_count(); ++i) d[i] = g.degree(i);
  return d;
}

DenseMatrix apply_operator(OperatorKind kind, const Graph& g, const DenseMatrix& m) {
  const int n = g.node_count();
  if (m.rows() != n)
    throw ShapeError("apply_operator: matrix has " + std::to_string(m.rows()) +
                     " rows, graph has " + std::to_string(n) + " nodes");
  const int k = m.cols();
  const auto& offsets = g.row_offsets();
  const auto& cols = g.column_indices();
  DenseMatrix out(n, k);

  switch (kind) {
    case OperatorKind::Adjacency: {
      for (int i = 0; i < n; ++i) {
        double* oi = &out.data()[static_cast<std::size_t>(i) * k];
        for (int e = offsets[i]; e < offsets[i + 1]; ++e) {
          const double* mj = &m.data()[static_cast<std::size_t>(cols[e]) * k];
          for (int c = 0; c < k; ++c) oi[c] += mj[c];
        }
      }
      break;
    }
    case OperatorKind::RandomWalk: {
      // (A+I) row i scaled by 1/(deg(i)+1), diagonal term first.
      for (int i = 0; i < n; ++i) {
        double* oi = &out.data()[static_cast<std::size_t>(i) * k];
        const double* mi = &m.data()[static_cast<std::size_t>(i) * k];
        for (int c = 0; c < k; ++c) oi[c] = mi[c];
        for (int e = offsets[i]; e < offsets[i + 1]; ++e) {
          const double* mj = &m.data()[static_cast<std::size_t>(cols[e]) * k];
          for (int c = 0; c < k; ++c) oi[c] += mj[c];
        }
        const double inv = 1.0 / (g.degree(i) + 1.0);
        for (int c = 0; c < k; ++c) oi[c] *= inv;
      }
      break;
    }
    case OperatorKind::SymLaplacian: {
      std::vector<double> inv_sqrt(n);
      for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(g.degree(i) + 1.0);
      // scale rows, aggregate A+I, scale rows again
      DenseMatrix scaledm(n, k);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < k; ++c) scaledm(i, c) = m(i, c) * inv_sqrt[i];
      for (int i = 0; i < n; ++i) {
        double* oi = &out.data()[static_cast<std::size_t>(i) * k];
        const double* si = &scaledm.data()[static_cast<std::size_t>(i) * k];
        for (int c = 0; c < k; ++c) oi[c] = si[c];
        for (int e = offsets[i]; e < offsets[i + 1]; ++e) {
          const double* sj = &scaledm.data()[static_cast<std::size_t>(cols[e]) * k];
          for (int c = 0; c < k; ++c) oi[c] += sj[c];
        }
        for (int c = 0; c < k; ++c) oi[c] *= inv_sqrt[i];
      }
      break;
    }
  }
  return out;
}

DenseMatrix operator_dense(OperatorKind kind, const Graph& g, int dense_limit) {
  const int n = g.node_count();
  if (n > dense_limit)
    throw TooLarge("operator_dense: n = " + std::to_string(n) + " exceeds limit " +
                   std::to_string(dense_limit));
  DenseMatrix s(n, n);
  switch (kind) {
    case OperatorKind::Adjacency: {
      for (const auto& [u, v] : g.edges()) {
        s(u, v) = 1.0;
        s(v, u) = 1.0;
      }
      break;
    }
    case OperatorKind::RandomWalk: {
      for (int i = 0; i < n; ++i) {
        const double inv = 1.0 / (g.degree(i) + 1.0);
        s(i, i) = inv;
        for (int e = g.row_offsets()[i]; e < g.row_offsets()[i + 1]; ++e)
          s(i, g.column_indices()[e]) = inv;
      }
      break;
    }
    case OperatorKind::SymLaplacian: {
      std::vector<double> inv_sqrt(n);
      for (int i = 0; i < n; ++i) inv_sqrt[i] = 1.0 / std::sqrt(g.degree(i) + 1.0);
      for (int i = 0; i < n; ++i) {
        s(i, i) = inv_sqrt[i] * inv_sqrt[i];
        for (int e = g.row_offsets()[i]; e < g.row_offsets()[i + 1]; ++e) {
          const int j = g.column_indices()[e];
          s(i, j) = inv_sqrt[i] * inv_sqrt[j];
        }
      }
      break;
    }
  }
  return s;
}

bool is_connected(const Graph& g) {
  const int n = g.node_count();
  if (n <= 1) return true;
  std::vector<char> seen(n, 0);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = 1;
  int reached = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int e = g.row_offsets()[u]; e < g.row_offsets()[u + 1]; ++e) {
      const int v = g.column_indices()[e];
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

bool is_bipartite(const Graph& g) {
  const int n = g.node_count();
  std::vector<int> color(n, -1);
  for (int start = 0; start < n; ++start) {
    if (color[start] != -1) continue;
    color[start] = 0;
    std::queue<int> frontier;
    frontier.push(start);
    while (!frontier.empty()) {
      const int u = frontier.front();
      frontier.pop();
      for (int e = g.row_offsets()[u]; e < g.row_offsets()[u + 1]; ++e) {
        const int v = g.column_indices()[e];
        if (color[v] == -1) {
          color[v] = 1 - color[u];
          frontier.push(v);
        } else if (color[v] == color[u]) {
          return false;
        }
      }
    }
  }
  return true;
}

Graph permuted(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.node_count())
    throw InvalidParams("permuted: permutation size mismatch");
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) pairs.emplace_back(perm[u], perm[v]);
  return Graph::from_edge_list(g.node_count(), pairs);
}

double edge_homophily(const Graph& g, const std::vector<int>& labels) {
  if (static_cast<int>(labels.size()) != g.node_count())
    throw InvalidParams("edge_homophily: label size mismatch");
  if (g.edge_count() == 0) return 0.0;
  int same = 0;
  for (const auto& [u, v] : g.edges())
    if (labels[u] == labels[v]) ++same;
  return static_cast<double>(same) / g.edge_count();
}

}  // namespace graphembed
