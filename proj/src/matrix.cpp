#include "graphembed/matrix.hpp"

#include <cmath>
#include <string>

#include "graphembed/errors.hpp"

namespace graphembed {

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

DenseMatrix DenseMatrix::transposed() const {
  DenseMatrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw ShapeError(what);
}

}  // namespace

DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.rows(), "matmul: inner dimensions disagree (" +
                                    std::to_string(a.cols()) + " vs " +
                                    std::to_string(b.rows()) + ")");
  DenseMatrix c(a.rows(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int i = 0; i < n; ++i) {
    double* ci = &c.data()[static_cast<std::size_t>(i) * m];
    for (int l = 0; l < k; ++l) {
      const double ail = a(i, l);
      if (ail == 0.0) continue;
      const double* bl = &b.data()[static_cast<std::size_t>(l) * m];
      for (int j = 0; j < m; ++j) ci[j] += ail * bl[j];
    }
  }
  return c;
}

DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows(), "matmul_at_b: row counts disagree");
  DenseMatrix c(a.cols(), b.cols());
  const int n = a.rows(), k = a.cols(), m = b.cols();
  for (int l = 0; l < n; ++l) {
    const double* al = &a.data()[static_cast<std::size_t>(l) * k];
    const double* bl = &b.data()[static_cast<std::size_t>(l) * m];
    for (int i = 0; i < k; ++i) {
      const double ali = al[i];
      if (ali == 0.0) continue;
      double* ci = &c.data()[static_cast<std::size_t>(i) * m];
      for (int j = 0; j < m; ++j) ci[j] += ali * bl[j];
    }
  }
  return c;
}

DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.cols() == b.cols(), "matmul_a_bt: column counts disagree");
  DenseMatrix c(a.rows(), b.rows());
  const int n = a.rows(), k = a.cols(), m = b.rows();
  for (int i = 0; i < n; ++i) {
    const double* ai = &a.data()[static_cast<std::size_t>(i) * k];
    for (int j = 0; j < m; ++j) {
      const double* bj = &b.data()[static_cast<std::size_t>(j) * k];
      double s = 0.0;
      for (int l = 0; l < k; ++l) s += ai[l] * bj[l];
      c(i, j) = s;
    }
  }
  return c;
}

DenseMatrix gram(const DenseMatrix& a) {
  const int n = a.rows(), k = a.cols();
  DenseMatrix g(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      double s = 0.0;
      for (int l = 0; l < n; ++l) s += a(l, i) * a(l, j);
      g(i, j) = s;
      g(j, i) = s;
    }
  }
  return g;
}

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.same_shape(b), "add: shapes disagree");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] += b.data()[i];
  return c;
}

DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.same_shape(b), "subtract: shapes disagree");
  DenseMatrix c = a;
  for (std::size_t i = 0; i < c.data().size(); ++i) c.data()[i] -= b.data()[i];
  return c;
}

DenseMatrix scaled(const DenseMatrix& a, double s) {
  DenseMatrix c = a;
  for (double& v : c.data()) v *= s;
  return c;
}

double frobenius_norm(const DenseMatrix& a) {
  double s = 0.0;
  for (double v : a.data()) s += v * v;
  return std::sqrt(s);
}

double max_abs(const DenseMatrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double column_norm(const DenseMatrix& a, int j) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

bool all_finite(const DenseMatrix& a) {
  for (double v : a.data())
    if (!std::isfinite(v)) return false;
  return true;
}

DenseMatrix concat_cols(const DenseMatrix& a, const DenseMatrix& b) {
  require(a.rows() == b.rows(), "concat_cols: row counts disagree");
  DenseMatrix c(a.rows(), a.cols() + b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (int j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

DenseMatrix leading_cols(const DenseMatrix& a, int k) {
  require(k >= 0 && k <= a.cols(), "leading_cols: k out of range");
  DenseMatrix c(a.rows(), k);
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < k; ++j) c(i, j) = a(i, j);
  return c;
}

DenseMatrix select_rows(const DenseMatrix& a, const std::vector<int>& idx) {
  DenseMatrix c(static_cast<int>(idx.size()), a.cols());
  for (int i = 0; i < c.rows(); ++i) {
    require(idx[i] >= 0 && idx[i] < a.rows(), "select_rows: index out of range");
    for (int j = 0; j < a.cols(); ++j) c(i, j) = a(idx[i], j);
  }
  return c;
}

DenseMatrix permute_rows(const DenseMatrix& a, const std::vector<int>& perm) {
  require(static_cast<int>(perm.size()) == a.rows(), "permute_rows: size mismatch");
  DenseMatrix c(a.rows(), a.cols());
  for (int i = 0; i < a.rows(); ++i) {
    require(perm[i] >= 0 && perm[i] < a.rows(), "permute_rows: index out of range");
    for (int j = 0; j < a.cols(); ++j) c(perm[i], j) = a(i, j);
  }
  return c;
}

}  // namespace graphembed
