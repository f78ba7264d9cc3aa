#pragma once

#include <vector>

#include "graphembed/graph.hpp"
#include "graphembed/matrix.hpp"
#include "graphembed/rng.hpp"

namespace graphembed {

// Block model: membership vector z and symmetric block matrix B define the
// expected adjacency P_{ij} = B[z(i)][z(j)].
struct SbmParams {
  int n = 0;
  int num_blocks = 0;
  std::vector<int> memberships;  // length n, entries in [0, num_blocks)
  DenseMatrix block_probs;       // num_blocks x num_blocks, symmetric, in [0,1]

  void validate() const;  // throws InvalidParams
};

// Balanced two-block model: first half block 0, second half block 1,
// B = [[p, q], [q, p]]. Requires even n, p,q in (0,1), p != q.
SbmParams make_2b_sbm(int n, double p, double q);

// P = Z B Z^T, dense. Throws TooLarge above the dense limit.
DenseMatrix expected_adjacency(const SbmParams& params,
                               int dense_limit = kDefaultDenseLimit);

// A ~ Bernoulli(P) over unordered pairs i < j; no self-loops, symmetric by
// construction, deterministic given the rng state.
Graph sample_sbm(const SbmParams& params, Rng& rng);

// Per-block Gaussian feature distributions.
struct GaussianMixtureParams {
  std::vector<std::vector<double>> means;  // one vector of dim m per block
  std::vector<DenseMatrix> covariances;    // one m x m PSD matrix per block

  int feature_dim() const { return means.empty() ? 0 : static_cast<int>(means[0].size()); }
  void validate() const;

  // means +/- mu with shared covariance scale * I (two blocks).
  static GaussianMixtureParams symmetric_pair(const std::vector<double>& mu,
                                              double covariance_scale = 1.0);
};

// Row i ~ N(mu_{z(i)}, Sigma_{z(i)}) via Cholesky transform of standard
// normals; deterministic given the rng state. Throws NotPsd.
DenseMatrix sample_features(const std::vector<int>& memberships,
                            const GaussianMixtureParams& gm, Rng& rng);

}  // namespace graphembed
