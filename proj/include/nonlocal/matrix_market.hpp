#ifndef NONLOCAL_MATRIX_MARKET_HPP
#define NONLOCAL_MATRIX_MARKET_HPP

#include <string>

#include "nonlocal/sparse_matrix.hpp"

namespace nonlocal {

/// Writes the lower triangle (including the diagonal) in Matrix Market
/// coordinate format with header
/// `%%MatrixMarket matrix coordinate real symmetric` and 1-based indices.
void export_matrix(const SymSparseMatrix& m, const std::string& path);

/// Reads a symmetric coordinate Matrix Market file written by export_matrix
/// (general symmetric files are accepted; entries may appear in any order).
SymSparseMatrix import_matrix(const std::string& path);

}  // namespace nonlocal

#endif
