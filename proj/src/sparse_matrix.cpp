#include "nonlocal/sparse_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nonlocal {

SymSparseMatrix SymSparseMatrix::from_rows(
    std::vector<std::vector<RowEntry>> rows) {
  SymSparseMatrix m;
  m.order_ = static_cast<Index>(rows.size());
  m.row_ptr_.assign(1, 0);
  m.row_ptr_.reserve(rows.size() + 1);
  std::size_t total = 0;
  for (const auto& r : rows) total += r.size();
  m.cols_.reserve(total);
  m.values_.reserve(total);
  for (auto& r : rows) {
    if (!std::is_sorted(r.begin(), r.end(),
                        [](const RowEntry& a, const RowEntry& b) {
                          return a.first < b.first;
                        })) {
      std::sort(r.begin(), r.end());
    }
    for (const auto& [c, v] : r) {
      if (c < 0 || c >= m.order_) {
        throw std::out_of_range("column index " + std::to_string(c) +
                                " outside [0, " + std::to_string(m.order_) +
                                ")");
      }
      m.cols_.push_back(c);
      m.values_.push_back(v);
    }
    m.row_ptr_.push_back(static_cast<Index>(m.cols_.size()));
  }
  return m;
}

SymSparseMatrix SymSparseMatrix::from_dense(const Eigen::MatrixXd& a,
                                            double drop_tol) {
  if (a.rows() != a.cols()) {
    throw std::invalid_argument("matrix: must be square");
  }
  std::vector<std::vector<RowEntry>> rows(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (std::abs(a(i, j)) > drop_tol || i == j) {
        rows[i].emplace_back(static_cast<Index>(j), a(i, j));
      }
    }
  }
  return from_rows(std::move(rows));
}

void SymSparseMatrix::check_index(Index i) const {
  if (i < 0 || i >= order_) {
    throw std::out_of_range("row index " + std::to_string(i) +
                            " outside [0, " + std::to_string(order_) + ")");
  }
}

SymSparseMatrix::Index SymSparseMatrix::nnz_lower() const {
  Index count = 0;
  for (Index i = 0; i < order_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      if (cols_[k] <= i) ++count;
    }
  }
  return count;
}

double SymSparseMatrix::entry(Index i, Index j) const {
  check_index(i);
  check_index(j);
  const auto lo = cols_.begin() + row_ptr_[i];
  const auto hi = cols_.begin() + row_ptr_[i + 1];
  const auto it = std::lower_bound(lo, hi, j);
  if (it == hi || *it != j) return 0.0;
  return values_[static_cast<std::size_t>(it - cols_.begin())];
}

std::span<const SymSparseMatrix::Index> SymSparseMatrix::row_cols(
    Index i) const {
  check_index(i);
  return {cols_.data() + row_ptr_[i],
          static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
}

std::span<const double> SymSparseMatrix::row_vals(Index i) const {
  check_index(i);
  return {values_.data() + row_ptr_[i],
          static_cast<std::size_t>(row_ptr_[i + 1] - row_ptr_[i])};
}

void SymSparseMatrix::apply(const double* u, double* y) const {
  for (Index i = 0; i < order_; ++i) {
    double acc = 0.0;
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      acc += values_[k] * u[cols_[k]];
    }
    y[i] = acc;
  }
}

std::vector<double> SymSparseMatrix::apply(const std::vector<double>& u) const {
  if (static_cast<Index>(u.size()) != order_) {
    throw std::invalid_argument("vector length " + std::to_string(u.size()) +
                                " does not match order " +
                                std::to_string(order_));
  }
  std::vector<double> y(u.size());
  apply(u.data(), y.data());
  return y;
}

Eigen::VectorXd SymSparseMatrix::apply(const Eigen::VectorXd& u) const {
  if (u.size() != order_) {
    throw std::invalid_argument("vector length " + std::to_string(u.size()) +
                                " does not match order " +
                                std::to_string(order_));
  }
  Eigen::VectorXd y(order_);
  apply(u.data(), y.data());
  return y;
}

double SymSparseMatrix::quadratic_form(const Eigen::VectorXd& u) const {
  return u.dot(apply(u));
}

double SymSparseMatrix::row_sum(Index i) const {
  check_index(i);
  double acc = 0.0;
  for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) acc += values_[k];
  return acc;
}

double SymSparseMatrix::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

double SymSparseMatrix::symmetry_defect() const {
  double d = 0.0;
  for (Index i = 0; i < order_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const Index j = cols_[k];
      if (j < i) continue;
      d = std::max(d, std::abs(values_[k] - entry(j, i)));
    }
  }
  return d;
}

Eigen::MatrixXd SymSparseMatrix::dense() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(order_, order_);
  for (Index i = 0; i < order_; ++i) {
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      a(i, cols_[k]) = values_[k];
    }
  }
  return a;
}

Eigen::MatrixXd SymSparseMatrix::dense_block(
    const std::vector<Index>& rows, const std::vector<Index>& cols) const {
  Eigen::MatrixXd a =
      Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()),
                            static_cast<Eigen::Index>(cols.size()));
  std::vector<Index> col_pos(order_, -1);
  for (std::size_t j = 0; j < cols.size(); ++j) {
    check_index(cols[j]);
    col_pos[cols[j]] = static_cast<Index>(j);
  }
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const Index i = rows[r];
    check_index(i);
    for (Index k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
      const Index j = col_pos[cols_[k]];
      if (j >= 0) a(static_cast<Eigen::Index>(r), j) = values_[k];
    }
  }
  return a;
}

}  // namespace nonlocal
