#ifndef NONLOCAL_ASSEMBLY_HPP
#define NONLOCAL_ASSEMBLY_HPP

#include <string>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/sparse_matrix.hpp"

namespace nonlocal {

/// Quadrature for the pair integrals W_ij = int_{E_i} int_{E_j} C dx' dx.
///
/// midpoint: W_ij = vol_i * vol_j * C(c_i, c_j).
/// subdiv:   each element is split into q sub-cells per axis; midpoint on
///           every sub-cell pair. q = 1 reproduces midpoint exactly.
/// exact:    closed-form geometric overlap, available for indicator-type
///           kernels in 1D (any norm) and in d >= 2 under the max norm
///           (separable product of 1D overlaps).
struct QuadratureSpec {
  enum class Rule { midpoint, subdiv, exact };

  Rule rule = Rule::midpoint;
  int q = 1;

  static QuadratureSpec midpoint() { return {Rule::midpoint, 1}; }
  static QuadratureSpec subdiv(int q);
  static QuadratureSpec exact() { return {Rule::exact, 1}; }
  /// Parses "midpoint", "subdiv:<q>", or "exact".
  static QuadratureSpec parse(const std::string& s);

  std::string name() const;
};

struct AssemblyOptions {
  QuadratureSpec quad = QuadratureSpec::midpoint();
  Norm norm = Norm::euclidean;
  /// Worker threads; <= 0 selects the available hardware parallelism. The
  /// result is identical for every worker count.
  int workers = 0;
};

/// Pair weight W_ij between two elements under the given rule; elements may
/// be ghosts. Symmetric by construction: the pair is evaluated in a
/// canonical order.
double pair_weight(const Grid& grid, const Kernel& kernel,
                   const QuadratureSpec& quad, Norm norm, ElementId a,
                   ElementId b);

/// Galerkin stiffness matrix for piecewise-constant shape functions:
/// K_ij = -W_ij (i != j), K_ii = sum_j W_ij. On Dirichlet grids the ghost
/// collar contributes to the diagonal only; the matrix order is always the
/// number of interior unknowns.
SymSparseMatrix assemble_stiffness(const Grid& grid, const Kernel& kernel,
                                   const AssemblyOptions& opts = {});

}  // namespace nonlocal

#endif
