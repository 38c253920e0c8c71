#ifndef NONLOCAL_SPARSE_MATRIX_HPP
#define NONLOCAL_SPARSE_MATRIX_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace nonlocal {

/// Symmetric sparse matrix in compressed-row storage. Both triangles are
/// stored so that row access and matvec are direct; exports keep only the
/// lower triangle. Immutable after construction.
class SymSparseMatrix {
 public:
  using Index = std::int64_t;
  using RowEntry = std::pair<Index, double>;

  SymSparseMatrix() = default;

  /// rows[i] holds (column, value) pairs of row i, sorted by column.
  static SymSparseMatrix from_rows(std::vector<std::vector<RowEntry>> rows);
  static SymSparseMatrix from_dense(const Eigen::MatrixXd& a,
                                    double drop_tol = 0.0);

  Index order() const { return order_; }
  /// Number of stored entries (each off-diagonal counted in both rows).
  Index nnz_stored() const { return static_cast<Index>(values_.size()); }
  /// Number of entries in the lower triangle including the diagonal.
  Index nnz_lower() const;

  double entry(Index i, Index j) const;
  std::span<const Index> row_cols(Index i) const;
  std::span<const double> row_vals(Index i) const;

  void apply(const double* u, double* y) const;
  std::vector<double> apply(const std::vector<double>& u) const;
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;

  double quadratic_form(const Eigen::VectorXd& u) const;
  double row_sum(Index i) const;
  double max_abs() const;
  /// Largest |entry(i,j) - entry(j,i)| over the stored pattern.
  double symmetry_defect() const;

  Eigen::MatrixXd dense() const;
  /// Dense block with the given row and column index lists.
  Eigen::MatrixXd dense_block(const std::vector<Index>& rows,
                              const std::vector<Index>& cols) const;

 private:
  void check_index(Index i) const;

  Index order_ = 0;
  std::vector<Index> row_ptr_{0};
  std::vector<Index> cols_;
  std::vector<double> values_;
};

}  // namespace nonlocal

#endif
