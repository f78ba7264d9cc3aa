#pragma once

#include <cstddef>
#include <vector>

namespace graphembed {

// Row-major dense matrix of doubles. Immutable-by-convention once built:
// library code returns fresh matrices instead of mutating shared ones.
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(int rows, int cols)
      : rows_(rows), cols_(cols),
        data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

  static DenseMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }
  double operator()(int i, int j) const {
    return data_[static_cast<std::size_t>(i) * cols_ + j];
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  DenseMatrix transposed() const;

  bool same_shape(const DenseMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

// C = A * B. Throws ShapeError on inner-dimension mismatch.
DenseMatrix matmul(const DenseMatrix& a, const DenseMatrix& b);

// C = A^T * B.
DenseMatrix matmul_at_b(const DenseMatrix& a, const DenseMatrix& b);

// C = A * B^T.
DenseMatrix matmul_a_bt(const DenseMatrix& a, const DenseMatrix& b);

// Gram matrix A^T A, filled exactly symmetric.
DenseMatrix gram(const DenseMatrix& a);

DenseMatrix add(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix subtract(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix scaled(const DenseMatrix& a, double s);

double frobenius_norm(const DenseMatrix& a);
double max_abs(const DenseMatrix& a);
double column_norm(const DenseMatrix& a, int j);
bool all_finite(const DenseMatrix& a);

// [A | B] column concatenation; row counts must agree.
DenseMatrix concat_cols(const DenseMatrix& a, const DenseMatrix& b);

// First k columns of A.
DenseMatrix leading_cols(const DenseMatrix& a, int k);

// Rows of A selected by index, in the given order.
DenseMatrix select_rows(const DenseMatrix& a, const std::vector<int>& idx);

// Rows permuted: out(perm[i], :) = a(i, :).
DenseMatrix permute_rows(const DenseMatrix& a, const std::vector<int>& perm);

}  // namespace graphembed
