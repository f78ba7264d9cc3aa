#pragma once

#include <functional>
#include <string>
#include <vector>

#include "graphembed/graph.hpp"
#include "graphembed/linalg.hpp"
#include "graphembed/matrix.hpp"

namespace graphembed {

// Ordered feature list P = [X, h(1), ..., h(L)].
struct EmbeddingList {
  std::vector<DenseMatrix> blocks;
  std::string method;   // "power", "unnormalized", ...
  OperatorKind op = OperatorKind::SymLaplacian;
  int depth = 0;  // L
  int k = 0;      // embedding width of blocks[1..]

  int block_count() const { return static_cast<int>(blocks.size()); }
  int row_count() const { return blocks.empty() ? 0 : blocks[0].rows(); }
};

enum class FeatureSelection { All, LastOnly, InputPlusLast };

const char* selection_name(FeatureSelection sel);
FeatureSelection selection_from_name(const std::string& name);

struct PowerOptions {
  // On a Gram condition-number failure, substitute thin-QR orthonormalization
  // instead of aborting.
  bool qr_fallback = false;
};

using LinearOperator = std::function<DenseMatrix(const DenseMatrix&)>;

// Power iteration with layer-wise Gram-inverse normalization over an abstract
// operator. The recursion advances on the un-column-normalized iterate; each
// appended block is a column-normalized copy. blocks[0] = X, L+1 blocks total.
// Throws RankDeficient (with iteration index) on Gram collapse unless
// qr_fallback is set.
EmbeddingList power_embed_operator(const LinearOperator& apply, const DenseMatrix& x,
                                   int depth, const PowerOptions& opts = {});

EmbeddingList power_embed(OperatorKind kind, const Graph& g, const DenseMatrix& x,
                          int depth, const PowerOptions& opts = {});

// blocks[t] = S^t X, no normalization anywhere (SIGN / SGC-style propagated
// features). Column conditioning for classifiers happens at selection time.
EmbeddingList unnormalized_embed(OperatorKind kind, const Graph& g,
                                 const DenseMatrix& x, int depth);

// Top-k eigenvectors of raw A by |eigenvalue|. gap_warning (optional out) is
// set when |lambda_k| and |lambda_{k+1}| tie within 1e-10.
DenseMatrix ase(const Graph& g, int k, bool* gap_warning = nullptr,
                int dense_limit = kDefaultDenseLimit);

// Top-k eigenvectors of the feature covariance (delegates to pca_reduce).
DenseMatrix cov_embed(const DenseMatrix& x, int k);

// [ase | cov_embed] column concatenation, n x 2k.
DenseMatrix a_x_embed(const Graph& g, const DenseMatrix& x, int k,
                      bool* gap_warning = nullptr,
                      int dense_limit = kDefaultDenseLimit);

// Block subsets for ablations. InputPlusLast with depth 0 collapses to a
// single block.
EmbeddingList select_features(const EmbeddingList& p, FeatureSelection sel);

// Finite-difference estimate of ||d h_i / d x_s||_F for a deterministic
// embedding pipeline (central differences, step eps on each coordinate of
// row s, Frobenius norm of the Jacobian block of output row i).
double oversquash_sensitivity(const LinearOperator& pipeline, const DenseMatrix& x,
                              int node_i, int node_s, double eps);

// Directory with a `meta` text file (method, operator, L, k, n, blocks) and
// one text matrix per block (block_000, ...; header "rows cols", row-major).
void save_embedding_list(const EmbeddingList& p, const std::string& dir);
EmbeddingList load_embedding_list(const std::string& dir);

}  // namespace graphembed
