#pragma once

#include <span>
#include <string>
#include <vector>

#include "topmg/grid.hpp"

namespace topmg {

struct Triplet {
  index_t row;
  index_t col;
  double value;
};

/// Compressed sparse row matrix. Rows are stored with strictly increasing
/// column indices; duplicate triplets are summed on construction. Matrix-
/// vector products reduce each row in column order, so results do not depend
/// on the number of worker threads.
class SparseOperator {
 public:
  SparseOperator() = default;
  SparseOperator(index_t rows, index_t cols, std::vector<index_t> row_offsets,
                 std::vector<index_t> col_indices, std::vector<double> values,
                 bool symmetric = false);

  static SparseOperator from_triplets(index_t rows, index_t cols,
                                      std::vector<Triplet> triplets,
                                      bool symmetric = false);
  static SparseOperator identity(index_t n);

  index_t rows() const { return rows_; }
  index_t cols() const { return cols_; }
  index_t nnz() const { return static_cast<index_t>(values_.size()); }
  bool symmetric() const { return symmetric_; }

  const std::vector<index_t>& row_offsets() const { return row_offsets_; }
  const std::vector<index_t>& col_indices() const { return col_indices_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& mutable_values() { return values_; }

  /// y = A x. Throws on dimension mismatch.
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(const std::vector<double>& x) const;

  /// y = A^T x.
  std::vector<double> apply_transpose(const std::vector<double>& x) const;

  SparseOperator transposed() const;

  /// C = A * B (Gustavson row-merge; per-row accumulation order is fixed).
  SparseOperator multiply(const SparseOperator& other) const;

  /// Entry lookup (binary search within the row); zero when not stored.
  double coeff(index_t row, index_t col) const;

  std::vector<double> diagonal() const;

  /// Structural + numerical symmetry check, |a_ij - a_ji| <= tol.
  bool is_symmetric(double tol = 0.0) const;

  /// Scales: y = alpha * A * x + beta * y.
  void apply_add(std::span<const double> x, std::span<double> y, double alpha,
                 double beta) const;

 private:
  index_t rows_ = 0;
  index_t cols_ = 0;
  std::vector<index_t> row_offsets_{0};
  std::vector<index_t> col_indices_;
  std::vector<double> values_;
  bool symmetric_ = false;
};

/// Galerkin triple product R * A * R^T.
SparseOperator galerkin_product(const SparseOperator& restriction,
                                const SparseOperator& a);

/// Matrix Market coordinate export ("%%MatrixMarket matrix coordinate real
/// general|symmetric"); symmetric matrices store the lower triangle. Values
/// are printed with 17 significant digits, one entry per line.
void write_matrix_market(const SparseOperator& a, const std::string& path);

}  // namespace topmg
