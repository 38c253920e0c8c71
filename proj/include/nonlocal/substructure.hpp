#ifndef NONLOCAL_SUBSTRUCTURE_HPP
#define NONLOCAL_SUBSTRUCTURE_HPP

#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/sparse_matrix.hpp"

namespace nonlocal {

/// Two-subdomain split with a thick interface band centered at x = 0.5.
/// The band is snapped to whole element layers so that subdomain elements on
/// opposite sides are always separated by at least the horizon and never
/// couple directly.
struct Partition {
  using Index = SymSparseMatrix::Index;

  std::vector<Index> i1, i2, igamma;  // unknown indices, ascending
  double width = 0.0;                 // physical interface slab width
  double delta = 0.0;                 // horizon the split was built for

  Index size() const {
    return static_cast<Index>(i1.size() + i2.size() + igamma.size());
  }
};

Partition partition_two_domain(const Grid& grid, double delta);

/// Dense blocks of the stiffness matrix under the ordering (I1, I2, IGamma).
/// kgg1/kgg2 is the per-subdomain split of the interface block: entries from
/// interface-interface pairs carry weight 1/2 each, and the part of each
/// interface diagonal generated by subdomain-i interactions goes wholly to
/// side i.
struct ArrowheadBlocks {
  Eigen::MatrixXd k11, k22, kgg, k1g, k2g;
  Eigen::MatrixXd kgg1, kgg2;
  Partition partition;
};

/// Extracts the blocks; fails if any I1-I2 entry of k is nonzero, naming the
/// offending pair.
ArrowheadBlocks split_blocks(const SymSparseMatrix& k, const Partition& p);

struct SchurResult {
  Eigen::MatrixXd s;         // s1 + s2
  Eigen::MatrixXd s1, s2;    // per-subdomain complements
};

/// S^(i) = kgg_i - k_ig^T k_ii^-1 k_ig; S = S^(1) + S^(2).
SchurResult schur_complement(const ArrowheadBlocks& b);

/// u_i = -k_ii^-1 k_ig q, the discrete energy-minimizing extension of the
/// interface data q into subdomain `side` (1 or 2).
Eigen::VectorXd energy_minimizing_extension(const ArrowheadBlocks& b, int side,
                                            const Eigen::VectorXd& q);

/// Solves K u = f through the interface system: subdomain eliminations, a
/// Schur solve on the interface, and back-substitution. Neumann right-hand
/// sides are projected onto mean zero; the removed mean is reported through
/// `removed_mean` when non-null. The returned solution has zero mean.
Eigen::VectorXd solve_substructured(const SymSparseMatrix& k,
                                    const Eigen::VectorXd& f,
                                    const Partition& p,
                                    double* removed_mean = nullptr);

/// Monolithic pseudo-inverse solve of K u = f (zero-mean canonical
/// representative); reference path for equivalence checks.
Eigen::VectorXd solve_monolithic(const SymSparseMatrix& k,
                                 const Eigen::VectorXd& f);

struct ResidualReport {
  double r1 = 0.0;      // inf-norm of (K u - f) on I1
  double r2 = 0.0;      // inf-norm on I2
  double rgamma = 0.0;  // inf-norm on IGamma
  double trace_gap = 0.0;  // always 0: the discrete field is single-valued
};

ResidualReport verify_two_domain_residuals(const SymSparseMatrix& k,
                                           const Partition& p,
                                           const Eigen::VectorXd& f,
                                           const Eigen::VectorXd& u);

}  // namespace nonlocal

#endif
