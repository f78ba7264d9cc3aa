#include "graphembed/embeddings.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "graphembed/errors.hpp"

namespace graphembed {

const char* selection_name(FeatureSelection sel) {
  switch (sel) {
    case FeatureSelection::All: return "all";
    case FeatureSelection::LastOnly: return "last";
    case FeatureSelection::InputPlusLast: return "input-last";
  }
  return "?";
}

FeatureSelection selection_from_name(const std::string& name) {
  if (name == "all") return FeatureSelection::All;
  if (name == "last" || name == "last-only") return FeatureSelection::LastOnly;
  if (name == "input-last" || name == "input_last" || name == "input+last")
    return FeatureSelection::InputPlusLast;
  throw InvalidParams("unknown selection '" + name + "'");
}

EmbeddingList power_embed_operator(const LinearOperator& apply, const DenseMatrix& x,
                                   int depth, const PowerOptions& opts) {
  if (depth < 0) throw InvalidParams("power_embed: negative depth");
  if (x.cols() < 1 || x.cols() > x.rows())
    throw ShapeError("power_embed: need 1 <= k <= n");
  EmbeddingList out;
  out.method = "power";
  out.depth = depth;
  out.k = x.cols();
  out.blocks.reserve(depth + 1);
  out.blocks.push_back(x);

  DenseMatrix state = x;
  for (int t = 0; t < depth; ++t) {
    DenseMatrix propagated = apply(state);
    try {
      state = gram_inverse_normalize(propagated);
    } catch (const RankDeficient& e) {
      if (!opts.qr_fallback)
        throw RankDeficient(std::string(e.what()) + " (iteration " + std::to_string(t) + ")", t);
      ThinQr qr = thin_qr(propagated);
      if (qr.rank < propagated.cols())
        throw RankDeficient("power_embed: iterate rank-collapsed beyond QR recovery (iteration " +
                                std::to_string(t) + ")",
                            t);
      state = std::move(qr.q);
    }
    out.blocks.push_back(column_normalize(state));
  }
  return out;
}

EmbeddingList power_embed(OperatorKind kind, const Graph& g, const DenseMatrix& x,
                          int depth, const PowerOptions& opts) {
  if (x.rows() != g.node_count())
    throw ShapeError("power_embed: feature rows disagree with node count");
  EmbeddingList out = power_embed_operator(
      [kind, &g](const DenseMatrix& m) { return apply_operator(kind, g, m); }, x, depth,
      opts);
  out.op = kind;
  return out;
}

EmbeddingList unnormalized_embed(OperatorKind kind, const Graph& g,
                                 const DenseMatrix& x, int depth) {
  if (depth < 0) throw InvalidParams("unnormalized_embed: negative depth");
  if (x.rows() != g.node_count())
    throw ShapeError("unnormalized_embed: feature rows disagree with node count");
  EmbeddingList out;
  out.method = "unnormalized";
  out.op = kind;
  out.depth = depth;
  out.k = x.cols();
  out.blocks.reserve(depth + 1);
  out.blocks.push_back(x);
  DenseMatrix state = x;
  for (int t = 0; t < depth; ++t) {
    state = apply_operator(kind, g, state);
    out.blocks.push_back(state);
  }
  return out;
}

DenseMatrix ase(const Graph& g, int k, bool* gap_warning, int dense_limit) {
  const int n = g.node_count();
  if (k < 1 || k > n) throw ShapeError("ase: need 1 <= k <= n");
  const DenseMatrix a = operator_dense(OperatorKind::Adjacency, g, dense_limit);
  const EigenDecomposition eig = sym_eig(a);
  if (gap_warning) {
    *gap_warning = k < n &&
                   std::abs(std::abs(eig.values[k - 1]) - std::abs(eig.values[k])) < 1e-10;
  }
  return leading_cols(eig.vectors, k);
}

DenseMatrix cov_embed(const DenseMatrix& x, int k) { return pca_reduce(x, k); }

DenseMatrix a_x_embed(const Graph& g, const DenseMatrix& x, int k, bool* gap_warning,
                      int dense_limit) {
  if (x.rows() != g.node_count())
    throw ShapeError("a_x_embed: feature rows disagree with node count");
  const DenseMatrix spectral = ase(g, k, gap_warning, dense_limit);
  const DenseMatrix covpart = cov_embed(x, k);
  return concat_cols(spectral, covpart);
}

EmbeddingList select_features(const EmbeddingList& p, FeatureSelection sel) {
  if (p.blocks.empty()) throw InvalidParams("select_features: empty list");
  EmbeddingList out;
  out.method = p.method;
  out.op = p.op;
  out.depth = p.depth;
  out.k = p.k;
  const int last = p.block_count() - 1;
  switch (sel) {
    case FeatureSelection::All:
      out.blocks = p.blocks;
      break;
    case FeatureSelection::LastOnly:
      out.blocks.push_back(p.blocks[last]);
      break;
    case FeatureSelection::InputPlusLast:
      out.blocks.push_back(p.blocks[0]);
      if (last != 0) out.blocks.push_back(p.blocks[last]);
      break;
  }
  return out;
}

double oversquash_sensitivity(const LinearOperator& pipeline, const DenseMatrix& x,
                              int node_i, int node_s, double eps) {
  if (node_i < 0 || node_i >= x.rows() || node_s < 0 || node_s >= x.rows())
    throw InvalidParams("oversquash_sensitivity: node index out of range");
  if (!(eps > 0.0)) throw InvalidParams("oversquash_sensitivity: eps must be positive");
  const int m = x.cols();
  double sq = 0.0;
  for (int c = 0; c < m; ++c) {
    DenseMatrix xp = x;
    xp(node_s, c) += eps;
    const DenseMatrix hp = pipeline(xp);
    DenseMatrix xm = x;
    xm(node_s, c) -= eps;
    const DenseMatrix hm = pipeline(xm);
    if (!hp.same_shape(hm) || hp.rows() != x.rows())
      throw ShapeError("oversquash_sensitivity: pipeline output rows disagree");
    for (int j = 0; j < hp.cols(); ++j) {
      const double d = (hp(node_i, j) - hm(node_i, j)) / (2.0 * eps);
      sq += d * d;
    }
  }
  return std::sqrt(sq);
}

}  // namespace graphembed
