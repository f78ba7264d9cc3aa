#pragma once

#include <vector>

#include "graphembed/matrix.hpp"

namespace graphembed {

// Eigenvalues sorted by descending |value| (ties: descending signed value,
// then index); vectors(:, i) is the unit eigenvector for values[i], with the
// entry of largest magnitude made positive (ties: lowest index).
struct EigenDecomposition {
  std::vector<double> values;
  DenseMatrix vectors;
};

// Dense symmetric eigendecomposition: Householder tridiagonalization
// followed by implicitly shifted QL. Input must be symmetric to 1e-10
// (relative to max |entry|); throws NotSymmetric otherwise, EigFailed on
// non-convergence.
EigenDecomposition sym_eig(const DenseMatrix& s);

inline constexpr double kGramConditionLimit = 1e12;

// U~ * (U~^T U~)^{-1} via a k x k SPD solve. Throws RankDeficient when the
// Gram condition number exceeds kGramConditionLimit.
DenseMatrix gram_inverse_normalize(const DenseMatrix& u_tilde);

// Each column divided by its Euclidean norm. Throws ZeroColumn.
DenseMatrix column_normalize(const DenseMatrix& u);

// Like column_normalize but leaves exactly-zero columns untouched. Used for
// classifier-input conditioning where degenerate blocks must not abort runs.
DenseMatrix column_normalize_lenient(const DenseMatrix& u);

// Thin QR via modified Gram-Schmidt with reorthogonalization. `rank` counts
// columns whose residual exceeded rank_tol * original column norm; deficient
// columns are still normalized when any residual remains (their direction is
// rounding noise), or left zero when the residual vanishes exactly.
struct ThinQr {
  DenseMatrix q;
  DenseMatrix r;
  int rank = 0;
};
ThinQr thin_qr(const DenseMatrix& a, double rank_tol = 1e-12);

// Principal angles (radians, ascending) between the column spaces of U and V.
// Both must be n x k of full column rank (RankDeficient otherwise). Small
// angles use the sine-based route for accuracy near zero.
std::vector<double> principal_angles(const DenseMatrix& u, const DenseMatrix& v);

// Angles for already-orthonormal bases; no rank check. Column counts must
// match.
std::vector<double> principal_angles_orthonormal(const DenseMatrix& qu,
                                                 const DenseMatrix& qv);

double largest_principal_angle(const DenseMatrix& u, const DenseMatrix& v);

// Top-k left singular directions of X (equivalently top-k eigenvectors of
// X X^T), unit columns, descending singular value, sym_eig sign convention.
// Uses the p x p Gram when p < n, else the n x n one. Throws RankDeficient
// when k exceeds the numerical rank.
DenseMatrix pca_reduce(const DenseMatrix& x, int k);

int numeric_rank(const DenseMatrix& x, double rel_tol = 1e-12);

// PSD Cholesky: A = L L^T with zero pivots allowed (L column zeroed).
// Throws NotPsd when a pivot is negative beyond tolerance.
DenseMatrix psd_cholesky(const DenseMatrix& a);

}  // namespace graphembed
