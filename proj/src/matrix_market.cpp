#include "nonlocal/matrix_market.hpp"

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace nonlocal {

namespace {

[[noreturn]] void io_error(const std::string& path, const std::string& what) {
  const int err = errno;
  std::string msg = "matrix market: " + what + " '" + path + "'";
  if (err != 0) msg += std::string(": ") + std::strerror(err);
  throw std::runtime_error(msg);
}

}  // namespace

void export_matrix(const SymSparseMatrix& m, const std::string& path) {
  errno = 0;
  std::ofstream out(path);
  if (!out) io_error(path, "cannot open for writing");
  out << "%%MatrixMarket matrix coordinate real symmetric\n";
  out << m.order() << " " << m.order() << " " << m.nnz_lower() << "\n";
  out.precision(17);
  out << std::scientific;
  for (SymSparseMatrix::Index i = 0; i < m.order(); ++i) {
    const auto cols = m.row_cols(i);
    const auto vals = m.row_vals(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      if (cols[k] > i) break;
      out << i + 1 << " " << cols[k] + 1 << " " << vals[k] << "\n";
    }
  }
  out.flush();
  if (!out) io_error(path, "write failed for");
}

SymSparseMatrix import_matrix(const std::string& path) {
  errno = 0;
  std::ifstream in(path);
  if (!in) io_error(path, "cannot open for reading");
  std::string line;
  if (!std::getline(in, line)) io_error(path, "empty file");
  {
    std::istringstream head(line);
    std::string banner, object, format, field, symmetry;
    head >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix" ||
        format != "coordinate" || field != "real" || symmetry != "symmetric") {
      throw std::runtime_error(
          "matrix market: unsupported header in '" + path +
          "' (expected 'matrix coordinate real symmetric')");
    }
  }
  do {
    if (!std::getline(in, line)) io_error(path, "missing size line in");
  } while (!line.empty() && line[0] == '%');
  SymSparseMatrix::Index nrows = 0, ncols = 0, nnz = 0;
  {
    std::istringstream sz(line);
    if (!(sz >> nrows >> ncols >> nnz) || nrows != ncols || nrows < 0) {
      throw std::runtime_error("matrix market: bad size line in '" + path +
                               "'");
    }
  }
  std::vector<std::vector<SymSparseMatrix::RowEntry>> rows(nrows);
  for (SymSparseMatrix::Index k = 0; k < nnz; ++k) {
    SymSparseMatrix::Index i = 0, j = 0;
    double v = 0.0;
    if (!(in >> i >> j >> v)) io_error(path, "truncated entries in");
    if (i < 1 || i > nrows || j < 1 || j > ncols) {
      throw std::runtime_error("matrix market: index out of range in '" +
                               path + "'");
    }
    rows[i - 1].emplace_back(j - 1, v);
    if (i != j) rows[j - 1].emplace_back(i - 1, v);
  }
  return SymSparseMatrix::from_rows(std::move(rows));
}

}  // namespace nonlocal
