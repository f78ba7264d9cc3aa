#include "graphembed/sbm.hpp"

#include <cmath>
#include <string>

#include "graphembed/errors.hpp"
#include "graphembed/linalg.hpp"

namespace graphembed {

void SbmParams::validate() const {
  if (n < 0) throw InvalidParams("sbm: negative node count");
  if (num_blocks < 1) throw InvalidParams("sbm: need at least one block");
  if (static_cast<int>(memberships.size()) != n)
    throw InvalidParams("sbm: membership vector length disagrees with n");
  for (int z : memberships)
    if (z < 0 || z >= num_blocks)
      throw InvalidParams("sbm: block id " + std::to_string(z) + " out of range");
  if (block_probs.rows() != num_blocks || block_probs.cols() != num_blocks)
    throw InvalidParams("sbm: block matrix shape disagrees with block count");
  for (int i = 0; i < num_blocks; ++i)
    for (int j = 0; j < num_blocks; ++j) {
      const double b = block_probs(i, j);
      if (!(b >= 0.0 && b <= 1.0)) throw InvalidParams("sbm: probability outside [0,1]");
      if (b != block_probs(j, i)) throw InvalidParams("sbm: block matrix not symmetric");
    }
}

SbmParams make_2b_sbm(int n, double p, double q) {
  if (n <= 0 || n % 2 != 0) throw InvalidParams("2B-SBM requires positive even n");
  if (!(p > 0.0 && p < 1.0) || !(q > 0.0 && q < 1.0))
    throw InvalidParams("2B-SBM requires p, q in (0,1)");
  if (p == q) throw InvalidParams("2B-SBM requires p != q (block matrix must be full rank)");
  SbmParams params;
  params.n = n;
  params.num_blocks = 2;
  params.memberships.assign(n, 1);
  for (int i = 0; i < n / 2; ++i) params.memberships[i] = 0;
  params.block_probs = DenseMatrix(2, 2);
  params.block_probs(0, 0) = p;
  params.block_probs(1, 1) = p;
  params.block_probs(0, 1) = q;
  params.block_probs(1, 0) = q;
  params.validate();
  return params;
}

DenseMatrix expected_adjacency(const SbmParams& params, int dense_limit) {
  params.validate();
  if (params.n > dense_limit)
    throw TooLarge("expected_adjacency: n exceeds dense limit");
  DenseMatrix p(params.n, params.n);
  for (int i = 0; i < params.n; ++i)
    for (int j = 0; j < params.n; ++j)
      p(i, j) = params.block_probs(params.memberships[i], params.memberships[j]);
  return p;
}

Graph sample_sbm(const SbmParams& params, Rng& rng) {
  params.validate();
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < params.n; ++i) {
    for (int j = i + 1; j < params.n; ++j) {
      const double pij = params.block_probs(params.memberships[i], params.memberships[j]);
      if (rng.next_double() < pij) edges.emplace_back(i, j);
    }
  }
  return Graph::from_edge_list(params.n, edges);
}

void GaussianMixtureParams::validate() const {
  if (means.empty()) throw InvalidParams("gaussian mixture: no blocks");
  if (covariances.size() != means.size())
    throw InvalidParams("gaussian mixture: means/covariances count mismatch");
  const int m = feature_dim();
  for (const auto& mu : means)
    if (static_cast<int>(mu.size()) != m)
      throw InvalidParams("gaussian mixture: inconsistent mean dimensions");
  for (const auto& cov : covariances)
    if (cov.rows() != m || cov.cols() != m)
      throw InvalidParams("gaussian mixture: covariance shape mismatch");
}

GaussianMixtureParams GaussianMixtureParams::symmetric_pair(const std::vector<double>& mu,
                                                            double covariance_scale) {
  GaussianMixtureParams gm;
  const int m = static_cast<int>(mu.size());
  std::vector<double> neg(mu);
  for (double& v : neg) v = -v;
  gm.means = {mu, neg};
  DenseMatrix cov(m, m);
  for (int i = 0; i < m; ++i) cov(i, i) = covariance_scale;
  gm.covariances = {cov, cov};
  return gm;
}

DenseMatrix sample_features(const std::vector<int>& memberships,
                            const GaussianMixtureParams& gm, Rng& rng) {
  gm.validate();
  const int n = static_cast<int>(memberships.size());
  const int m = gm.feature_dim();
  const int blocks = static_cast<int>(gm.means.size());

  std::vector<DenseMatrix> chol;
  chol.reserve(blocks);
  for (const auto& cov : gm.covariances) chol.push_back(psd_cholesky(cov));

  DenseMatrix x(n, m);
  std::vector<double> z(m);
  for (int i = 0; i < n; ++i) {
    const int b = memberships[i];
    if (b < 0 || b >= blocks)
      throw InvalidParams("sample_features: block id out of range");
    for (int c = 0; c < m; ++c) z[c] = rng.next_normal();
    const DenseMatrix& l = chol[b];
    for (int r = 0; r < m; ++r) {
      double v = gm.means[b][r];
      for (int c = 0; c <= r; ++c) v += l(r, c) * z[c];
      x(i, r) = v;
    }
  }
  return x;
}

}  // namespace graphembed
