#include "graphembed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "graphembed/errors.hpp"

namespace graphembed {

namespace {

// Householder reduction of a symmetric matrix to tridiagonal form with
// accumulated transformations (classic EISPACK/JAMA flow). On exit v holds
// the accumulated orthogonal matrix, d the diagonal, e the subdiagonal.
void tridiagonalize(DenseMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = v.rows();
  for (int j = 0; j < n; ++j) d[j] = v(n - 1, j);

  for (int i = n - 1; i > 0; --i) {
    double scale = 0.0;
    double h = 0.0;
    for (int k = 0; k < i; ++k) scale += std::abs(d[k]);
    if (scale == 0.0) {
      e[i] = d[i - 1];
      for (int j = 0; j < i; ++j) {
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
        v(j, i) = 0.0;
      }
    } else {
      for (int k = 0; k < i; ++k) {
        d[k] /= scale;
        h += d[k] * d[k];
      }
      double f = d[i - 1];
      double g = std::sqrt(h);
      if (f > 0.0) g = -g;
      e[i] = scale * g;
      h -= f * g;
      d[i - 1] = f - g;
      for (int j = 0; j < i; ++j) e[j] = 0.0;

      for (int j = 0; j < i; ++j) {
        f = d[j];
        v(j, i) = f;
        g = e[j] + v(j, j) * f;
        for (int k = j + 1; k <= i - 1; ++k) {
          g += v(k, j) * d[k];
          e[k] += v(k, j) * f;
        }
        e[j] = g;
      }
      f = 0.0;
      for (int j = 0; j < i; ++j) {
        e[j] /= h;
        f += e[j] * d[j];
      }
      const double hh = f / (h + h);
      for (int j = 0; j < i; ++j) e[j] -= hh * d[j];
      for (int j = 0; j < i; ++j) {
        f = d[j];
        g = e[j];
        for (int k = j; k <= i - 1; ++k) v(k, j) -= (f * e[k] + g * d[k]);
        d[j] = v(i - 1, j);
        v(i, j) = 0.0;
      }
    }
    d[i] = h;
  }

  for (int i = 0; i < n - 1; ++i) {
    v(n - 1, i) = v(i, i);
    v(i, i) = 1.0;
    const double h = d[i + 1];
    if (h != 0.0) {
      for (int k = 0; k <= i; ++k) d[k] = v(k, i + 1) / h;
      for (int j = 0; j <= i; ++j) {
        double g = 0.0;
        for (int k = 0; k <= i; ++k) g += v(k, i + 1) * v(k, j);
        for (int k = 0; k <= i; ++k) v(k, j) -= g * d[k];
      }
    }
    for (int k = 0; k <= i; ++k) v(k, i + 1) = 0.0;
  }
  for (int j = 0; j < n; ++j) {
    d[j] = v(n - 1, j);
    v(n - 1, j) = 0.0;
  }
  v(n - 1, n - 1) = 1.0;
  e[0] = 0.0;
}

// Implicitly shifted QL on the tridiagonal (d, e), rotations accumulated
// into v. Returns false if an eigenvalue fails to converge.
bool ql_iterate(DenseMatrix& v, std::vector<double>& d, std::vector<double>& e) {
  const int n = v.rows();
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  double f = 0.0;
  double tst1 = 0.0;
  const double eps = std::numeric_limits<double>::epsilon();
  for (int l = 0; l < n; ++l) {
    tst1 = std::max(tst1, std::abs(d[l]) + std::abs(e[l]));
    int m = l;
    while (m < n) {
      if (std::abs(e[m]) <= eps * tst1) break;
      ++m;
    }
    if (m > l) {
      int iter = 0;
      do {
        if (++iter > 50) return false;
        double g = d[l];
        double p = (d[l + 1] - g) / (2.0 * e[l]);
        double r = std::hypot(p, 1.0);
        if (p < 0.0) r = -r;
        d[l] = e[l] / (p + r);
        d[l + 1] = e[l] * (p + r);
        const double dl1 = d[l + 1];
        double h = g - d[l];
        for (int i = l + 2; i < n; ++i) d[i] -= h;
        f += h;

        p = d[m];
        double c = 1.0, c2 = c, c3 = c;
        const double el1 = e[l + 1];
        double s = 0.0, s2 = 0.0;
        for (int i = m - 1; i >= l; --i) {
          c3 = c2;
          c2 = c;
          s2 = s;
          g = c * e[i];
          h = c * p;
          r = std::hypot(p, e[i]);
          e[i + 1] = s * r;
          s = e[i] / r;
          c = p / r;
          p = c * d[i] - s * g;
          d[i + 1] = h + s * (c * g + s * d[i]);
          for (int k = 0; k < n; ++k) {
            h = v(k, i + 1);
            v(k, i + 1) = s * v(k, i) + c * h;
            v(k, i) = c * v(k, i) - s * h;
          }
        }
        p = -s * s2 * c3 * el1 * e[l] / dl1;
        e[l] = s * p;
        d[l] = c * p;
      } while (std::abs(e[l]) > eps * tst1);
    }
    d[l] += f;
    e[l] = 0.0;
  }
  return true;
}

// Magnitude-descending order; ties by descending signed value, then index.
std::vector<int> eigen_order(const std::vector<double>& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const double ma = std::abs(values[a]), mb = std::abs(values[b]);
    if (ma != mb) return ma > mb;
    if (values[a] != values[b]) return values[a] > values[b];
    return a < b;
  });
  return order;
}

void fix_column_sign(DenseMatrix& m, int j) {
  int best = 0;
  double best_abs = std::abs(m(0, j));
  for (int i = 1; i < m.rows(); ++i) {
    const double a = std::abs(m(i, j));
    if (a > best_abs) {
      best_abs = a;
      best = i;
    }
  }
  if (m(best, j) < 0.0)
    for (int i = 0; i < m.rows(); ++i) m(i, j) = -m(i, j);
}

}  // namespace

EigenDecomposition sym_eig(const DenseMatrix& s) {
  const int n = s.rows();
  if (n != s.cols()) throw NotSymmetric("sym_eig: matrix is not square");
  const double scale = std::max(1.0, max_abs(s));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(s(i, j) - s(j, i)) > 1e-10 * scale)
        throw NotSymmetric("sym_eig: asymmetry at (" + std::to_string(i) + ", " +
                           std::to_string(j) + ")");

  EigenDecomposition out;
  out.values.resize(n);
  if (n == 0) {
    out.vectors = DenseMatrix(0, 0);
    return out;
  }

  DenseMatrix v = s;
  std::vector<double> d(n), e(n, 0.0);
  if (n == 1) {
    out.values[0] = s(0, 0);
    out.vectors = DenseMatrix::identity(1);
    return out;
  }
  tridiagonalize(v, d, e);
  if (!ql_iterate(v, d, e)) throw EigFailed("sym_eig: QL iteration did not converge");

  const auto order = eigen_order(d);
  out.vectors = DenseMatrix(n, n);
  for (int j = 0; j < n; ++j) {
    out.values[j] = d[order[j]];
    for (int i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
    fix_column_sign(out.vectors, j);
  }
  return out;
}

DenseMatrix gram_inverse_normalize(const DenseMatrix& u_tilde) {
  const int k = u_tilde.cols();
  if (k == 0 || u_tilde.rows() == 0)
    throw ShapeError("gram_inverse_normalize: empty input");
  const DenseMatrix g = gram(u_tilde);
  const EigenDecomposition eig = sym_eig(g);
  const double lmax = eig.values.front();
  const double lmin = eig.values.back();  // PSD: magnitude order = value order
  if (!(lmin > 0.0) || lmax / lmin > kGramConditionLimit)
    throw RankDeficient("gram_inverse_normalize: Gram condition number exceeds " +
                        std::to_string(kGramConditionLimit));
  // G^{-1} = V diag(1/lambda) V^T, k x k only.
  DenseMatrix vs(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) vs(i, j) = eig.vectors(i, j) / eig.values[j];
  const DenseMatrix g_inv = matmul_a_bt(vs, eig.vectors);
  return matmul(u_tilde, g_inv);
}

DenseMatrix column_normalize(const DenseMatrix& u) {
  DenseMatrix out = u;
  for (int j = 0; j < u.cols(); ++j) {
    const double norm = column_norm(u, j);
    if (norm == 0.0)
      throw ZeroColumn("column_normalize: column " + std::to_string(j) + " is zero");
    for (int i = 0; i < u.rows(); ++i) out(i, j) /= norm;
  }
  return out;
}

DenseMatrix column_normalize_lenient(const DenseMatrix& u) {
  DenseMatrix out = u;
  for (int j = 0; j < u.cols(); ++j) {
    const double norm = column_norm(u, j);
    if (norm == 0.0) continue;
    for (int i = 0; i < u.rows(); ++i) out(i, j) /= norm;
  }
  return out;
}

ThinQr thin_qr(const DenseMatrix& a, double rank_tol) {
  const int n = a.rows(), k = a.cols();
  ThinQr qr;
  qr.q = a;
  qr.r = DenseMatrix(k, k);
  qr.rank = 0;
  for (int j = 0; j < k; ++j) {
    const double orig = column_norm(a, j);
    // two Gram-Schmidt passes
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i < j; ++i) {
        double c = 0.0;
        for (int r = 0; r < n; ++r) c += qr.q(r, i) * qr.q(r, j);
        for (int r = 0; r < n; ++r) qr.q(r, j) -= c * qr.q(r, i);
        qr.r(i, j) += c;
      }
    }
    const double norm = column_norm(qr.q, j);
    qr.r(j, j) = norm;
    if (norm > rank_tol * std::max(orig, 1e-300)) ++qr.rank;
    if (norm > 0.0)
      for (int r = 0; r < n; ++r) qr.q(r, j) /= norm;
  }
  return qr;
}

std::vector<double> principal_angles_orthonormal(const DenseMatrix& qu,
                                                 const DenseMatrix& qv) {
  if (qu.rows() != qv.rows() || qu.cols() != qv.cols())
    throw ShapeError("principal_angles: shapes disagree");
  const int k = qu.cols();
  const DenseMatrix m = matmul_at_b(qu, qv);

  // cosines: singular values of M, descending
  const EigenDecomposition ec = sym_eig(gram(m));
  std::vector<double> cosines(k);
  for (int i = 0; i < k; ++i) cosines[i] = std::sqrt(std::max(0.0, ec.values[i]));

  // sines: singular values of Qv - Qu M, ascending
  const DenseMatrix b = subtract(qv, matmul(qu, m));
  EigenDecomposition es = sym_eig(gram(b));
  std::vector<double> sines(k);
  for (int i = 0; i < k; ++i)
    sines[i] = std::sqrt(std::max(0.0, es.values[k - 1 - i]));

  std::vector<double> angles(k);
  for (int i = 0; i < k; ++i) {
    const double c = std::min(1.0, cosines[i]);
    const double s = std::min(1.0, sines[i]);
    angles[i] = (c * c > 0.5) ? std::asin(s) : std::acos(c);
  }
  std::sort(angles.begin(), angles.end());
  return angles;
}

std::vector<double> principal_angles(const DenseMatrix& u, const DenseMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw ShapeError("principal_angles: shapes disagree");
  const ThinQr qu = thin_qr(u);
  if (qu.rank < u.cols()) throw RankDeficient("principal_angles: first argument rank-deficient");
  const ThinQr qv = thin_qr(v);
  if (qv.rank < v.cols()) throw RankDeficient("principal_angles: second argument rank-deficient");
  return principal_angles_orthonormal(qu.q, qv.q);
}

double largest_principal_angle(const DenseMatrix& u, const DenseMatrix& v) {
  return principal_angles(u, v).back();
}

namespace {

DenseMatrix fix_all_column_signs(DenseMatrix m) {
  for (int j = 0; j < m.cols(); ++j) fix_column_sign(m, j);
  return m;
}

}  // namespace

DenseMatrix pca_reduce(const DenseMatrix& x, int k) {
  const int n = x.rows(), p = x.cols();
  if (k < 1 || k > std::min(n, p))
    throw RankDeficient("pca_reduce: k = " + std::to_string(k) +
                        " exceeds min(n, p) = " + std::to_string(std::min(n, p)));
  // Relative eigenvalue cutoff on the Gram spectrum; sigma-cond 1e12
  // corresponds to 1e24 in eigenvalues.
  constexpr double kRankCut = 1e-24;

  DenseMatrix out(n, k);
  if (p < n) {
    const EigenDecomposition eig = sym_eig(gram(x));  // p x p
    if (!(eig.values[0] > 0.0) || eig.values[k - 1] <= kRankCut * eig.values[0])
      throw RankDeficient("pca_reduce: rank(X) below k");
    for (int j = 0; j < k; ++j) {
      // u_j = X v_j, normalized
      for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int c = 0; c < p; ++c) s += x(i, c) * eig.vectors(c, j);
        out(i, j) = s;
      }
      const double norm = column_norm(out, j);
      for (int i = 0; i < n; ++i) out(i, j) /= norm;
    }
  } else {
    const DenseMatrix xxt = matmul_a_bt(x, x);  // n x n
    const EigenDecomposition eig = sym_eig(xxt);
    if (!(eig.values[0] > 0.0) || eig.values[k - 1] <= kRankCut * eig.values[0])
      throw RankDeficient("pca_reduce: rank(X) below k");
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < n; ++i) out(i, j) = eig.vectors(i, j);
  }
  return fix_all_column_signs(std::move(out));
}

int numeric_rank(const DenseMatrix& x, double rel_tol) {
  const int n = x.rows(), p = x.cols();
  if (n == 0 || p == 0) return 0;
  const DenseMatrix g = (p <= n) ? gram(x) : matmul_a_bt(x, x);
  const EigenDecomposition eig = sym_eig(g);
  if (!(eig.values[0] > 0.0)) return 0;
  const double cut = rel_tol * rel_tol * eig.values[0];
  int rank = 0;
  for (double lambda : eig.values)
    if (lambda > cut) ++rank;
  return rank;
}

DenseMatrix psd_cholesky(const DenseMatrix& a) {
  const int n = a.rows();
  if (n != a.cols()) throw NotPsd("psd_cholesky: matrix is not square");
  double diag_scale = 0.0;
  for (int i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(a(i, i)));
  const double tol = 1e-12 * std::max(diag_scale, 1.0);

  DenseMatrix l(n, n);
  for (int j = 0; j < n; ++j) {
    double d = a(j, j);
    for (int c = 0; c < j; ++c) d -= l(j, c) * l(j, c);
    if (d < -tol) throw NotPsd("psd_cholesky: negative pivot at " + std::to_string(j));
    if (d <= tol) {
      // Semidefinite direction: the whole residual column must vanish too.
      const double res_tol = std::sqrt(tol * std::max(diag_scale, 1.0)) * 10.0;
      for (int i = j + 1; i < n; ++i) {
        double s = a(i, j);
        for (int c = 0; c < j; ++c) s -= l(i, c) * l(j, c);
        if (std::abs(s) > res_tol)
          throw NotPsd("psd_cholesky: zero pivot with nonzero residual at " +
                       std::to_string(j));
      }
      continue;
    }
    const double pivot = std::sqrt(d);
    l(j, j) = pivot;
    for (int i = j + 1; i < n; ++i) {
      double s = a(i, j);
      for (int c = 0; c < j; ++c) s -= l(i, c) * l(j, c);
      l(i, j) = s / pivot;
    }
  }
  return l;
}

}  // namespace graphembed
