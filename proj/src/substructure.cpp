#include "nonlocal/substructure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace nonlocal {

namespace {

using Index = Partition::Index;

Eigen::LDLT<Eigen::MatrixXd> factor_spd(const Eigen::MatrixXd& a,
                                        const char* name) {
  Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
  if (ldlt.info() != Eigen::Success) {
    throw std::runtime_error(std::string(name) + ": factorization failed");
  }
  const auto d = ldlt.vectorD();
  const double dmax = d.maxCoeff();
  const double dmin = d.minCoeff();
  if (!(dmin > 1e-14 * std::max(dmax, 1e-300))) {
    throw std::runtime_error(std::string(name) +
                             ": block is numerically singular (smallest "
                             "pivot " +
                             std::to_string(dmin) + ")");
  }
  return ldlt;
}

// Minimum-norm solution of the symmetric positive-semidefinite system
// a x = b; eigenvalues below tol_rel * lambda_max are treated as null space.
Eigen::VectorXd solve_semidefinite(const Eigen::MatrixXd& a,
                                   const Eigen::VectorXd& b,
                                   double tol_rel = 1e-12) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a);
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("solve: eigendecomposition failed");
  }
  const auto& ev = es.eigenvalues();
  const double cut = tol_rel * std::max(ev(ev.size() - 1), 0.0);
  Eigen::VectorXd y = es.eigenvectors().transpose() * b;
  for (Eigen::Index i = 0; i < y.size(); ++i) {
    y(i) = ev(i) > cut ? y(i) / ev(i) : 0.0;
  }
  return es.eigenvectors() * y;
}

}  // namespace

Partition partition_two_domain(const Grid& grid, double delta) {
  if (grid.bc() != Bc::neumann) {
    throw std::invalid_argument(
        "partition: two-domain experiments use neumann grids");
  }
  if (grid.dim() > 2) {
    throw std::invalid_argument("partition: dim must be 1 or 2");
  }
  if (!(delta > 0.0)) {
    throw std::invalid_argument("delta: must be positive, got " +
                                std::to_string(delta));
  }
  const double h = grid.h();
  // Snap the band to whole element layers. The 1% layer slack keeps a
  // delta/(2h) value that lands a hair above an integer from adding a full
  // extra layer on each side; the gap is re-checked and widened below.
  double half = h * std::ceil(delta / (2.0 * h) - 0.01);

  Partition p;
  p.delta = delta;
  for (;;) {
    p.i1.clear();
    p.i2.clear();
    p.igamma.clear();
    double i1_hi = -1.0, i2_lo = 2.0, g_lo = 2.0, g_hi = -1.0;
    for (Index k = 0; k < grid.num_unknowns(); ++k) {
      const ElementId id = grid.unknown_id(k);
      const double c = grid.element_center(id)[0];
      Point lo, hi;
      grid.element_box(id, lo, hi);
      if (std::abs(c - 0.5) <= half + 0.25 * h) {
        p.igamma.push_back(k);
        g_lo = std::min(g_lo, lo[0]);
        g_hi = std::max(g_hi, hi[0]);
      } else if (c < 0.5) {
        p.i1.push_back(k);
        i1_hi = std::max(i1_hi, hi[0]);
      } else {
        p.i2.push_back(k);
        i2_lo = std::min(i2_lo, lo[0]);
      }
    }
    if (p.igamma.empty() || p.i1.empty() || p.i2.empty()) {
      throw std::invalid_argument(
          "partition: interface band of width " +
          std::to_string(2.0 * half) +
          " leaves an empty index set (interface swallows the domain)");
    }
    const double gap = i2_lo - i1_hi;
    if (gap >= delta * (1.0 - 1e-9)) {
      p.width = g_hi - g_lo;
      break;
    }
    half += 0.5 * h;  // widen by one layer element edge and retry
  }
  if (p.width >= 1.0) {
    throw std::invalid_argument("partition: interface width " +
                                std::to_string(p.width) +
                                " swallows the unit domain");
  }
  return p;
}

ArrowheadBlocks split_blocks(const SymSparseMatrix& k, const Partition& p) {
  if (p.size() != k.order()) {
    throw std::invalid_argument(
        "partition: index sets cover " + std::to_string(p.size()) +
        " unknowns but the matrix order is " + std::to_string(k.order()));
  }
  std::unordered_set<Index> set1(p.i1.begin(), p.i1.end());
  std::unordered_set<Index> set2(p.i2.begin(), p.i2.end());
  for (Index i : p.i1) {
    const auto cols = k.row_cols(i);
    const auto vals = k.row_vals(i);
    for (std::size_t t = 0; t < cols.size(); ++t) {
      if (vals[t] != 0.0 && set2.count(cols[t])) {
        throw std::runtime_error(
            "partition violation: direct coupling between subdomain "
            "unknowns " +
            std::to_string(i) + " and " + std::to_string(cols[t]) +
            " (value " + std::to_string(vals[t]) + ")");
      }
    }
  }

  ArrowheadBlocks b;
  b.partition = p;
  b.k11 = k.dense_block(p.i1, p.i1);
  b.k22 = k.dense_block(p.i2, p.i2);
  b.kgg = k.dense_block(p.igamma, p.igamma);
  b.k1g = k.dense_block(p.i1, p.igamma);
  b.k2g = k.dense_block(p.i2, p.igamma);

  // Interface-interface pairs carry weight 1/2 per side; the slice of each
  // interface diagonal coming from subdomain-i couplings goes to side i.
  const Eigen::Index ng = b.kgg.rows();
  Eigen::MatrixXd off = b.kgg;
  Eigen::VectorXd dgg(ng), d1(ng), d2(ng);
  for (Eigen::Index r = 0; r < ng; ++r) {
    off(r, r) = 0.0;
    dgg(r) = -off.row(r).sum();
    d1(r) = -b.k1g.col(r).sum();
    d2(r) = b.kgg(r, r) - dgg(r) - d1(r);
  }
  b.kgg1 = 0.5 * off + (0.5 * dgg + d1).asDiagonal().toDenseMatrix();
  b.kgg2 = 0.5 * off + (0.5 * dgg + d2).asDiagonal().toDenseMatrix();
  return b;
}

SchurResult schur_complement(const ArrowheadBlocks& b) {
  const auto f11 = factor_spd(b.k11, "schur: K11");
  const auto f22 = factor_spd(b.k22, "schur: K22");
  SchurResult r;
  r.s1 = b.kgg1 - b.k1g.transpose() * f11.solve(b.k1g);
  r.s2 = b.kgg2 - b.k2g.transpose() * f22.solve(b.k2g);
  // Symmetrize away factorization round-off.
  r.s1 = 0.5 * (r.s1 + r.s1.transpose()).eval();
  r.s2 = 0.5 * (r.s2 + r.s2.transpose()).eval();
  r.s = r.s1 + r.s2;
  return r;
}

Eigen::VectorXd energy_minimizing_extension(const ArrowheadBlocks& b, int side,
                                            const Eigen::VectorXd& q) {
  if (side != 1 && side != 2) {
    throw std::invalid_argument("side: must be 1 or 2, got " +
                                std::to_string(side));
  }
  const Eigen::MatrixXd& kii = side == 1 ? b.k11 : b.k22;
  const Eigen::MatrixXd& kig = side == 1 ? b.k1g : b.k2g;
  if (q.size() != kig.cols()) {
    throw std::invalid_argument(
        "q: length " + std::to_string(q.size()) +
        " does not match the interface size " + std::to_string(kig.cols()));
  }
  const auto f = factor_spd(kii, "extension: Kii");
  return -f.solve(kig * q);
}

Eigen::VectorXd solve_substructured(const SymSparseMatrix& k,
                                    const Eigen::VectorXd& f,
                                    const Partition& p, double* removed_mean) {
  if (f.size() != k.order()) {
    throw std::invalid_argument("f: length does not match matrix order");
  }
  const double mean = f.mean();
  if (removed_mean != nullptr) *removed_mean = mean;
  const Eigen::VectorXd fp = f.array() - mean;

  const ArrowheadBlocks b = split_blocks(k, p);
  const auto pick = [&](const std::vector<Index>& idx) {
    Eigen::VectorXd v(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t t = 0; t < idx.size(); ++t) v(t) = fp(idx[t]);
    return v;
  };
  const Eigen::VectorXd f1 = pick(p.i1);
  const Eigen::VectorXd f2 = pick(p.i2);
  const Eigen::VectorXd fg = pick(p.igamma);

  const auto l11 = factor_spd(b.k11, "substructured solve: K11");
  const auto l22 = factor_spd(b.k22, "substructured solve: K22");
  const Eigen::VectorXd y1 = l11.solve(f1);
  const Eigen::VectorXd y2 = l22.solve(f2);
  const Eigen::VectorXd ftilde =
      fg - b.k1g.transpose() * y1 - b.k2g.transpose() * y2;

  const SchurResult s = schur_complement(b);
  const Eigen::VectorXd ug = solve_semidefinite(s.s, ftilde);
  const Eigen::VectorXd u1 = l11.solve(f1 - b.k1g * ug);
  const Eigen::VectorXd u2 = l22.solve(f2 - b.k2g * ug);

  Eigen::VectorXd u(k.order());
  for (std::size_t t = 0; t < p.i1.size(); ++t) u(p.i1[t]) = u1(t);
  for (std::size_t t = 0; t < p.i2.size(); ++t) u(p.i2[t]) = u2(t);
  for (std::size_t t = 0; t < p.igamma.size(); ++t) u(p.igamma[t]) = ug(t);
  u.array() -= u.mean();
  return u;
}

Eigen::VectorXd solve_monolithic(const SymSparseMatrix& k,
                                 const Eigen::VectorXd& f) {
  if (f.size() != k.order()) {
    throw std::invalid_argument("f: length does not match matrix order");
  }
  const Eigen::VectorXd fp = f.array() - f.mean();
  Eigen::VectorXd u = solve_semidefinite(k.dense(), fp);
  u.array() -= u.mean();
  return u;
}

ResidualReport verify_two_domain_residuals(const SymSparseMatrix& k,
                                           const Partition& p,
                                           const Eigen::VectorXd& f,
                                           const Eigen::VectorXd& u) {
  if (f.size() != k.order() || u.size() != k.order()) {
    throw std::invalid_argument("f/u: length does not match matrix order");
  }
  const Eigen::VectorXd fp = f.array() - f.mean();
  const Eigen::VectorXd r = k.apply(u) - fp;
  ResidualReport rep;
  for (Index i : p.i1) rep.r1 = std::max(rep.r1, std::abs(r(i)));
  for (Index i : p.i2) rep.r2 = std::max(rep.r2, std::abs(r(i)));
  for (Index i : p.igamma) rep.rgamma = std::max(rep.rgamma, std::abs(r(i)));
  return rep;
}

}  // namespace nonlocal
