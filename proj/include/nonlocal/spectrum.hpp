#ifndef NONLOCAL_SPECTRUM_HPP
#define NONLOCAL_SPECTRUM_HPP

#include <cstdint>
#include <string>

#include "nonlocal/sparse_matrix.hpp"

namespace nonlocal {

struct SpectrumReport {
  double lambda_min_nonzero = 0.0;
  double lambda_max = 0.0;
  double kappa_eff = 0.0;
  std::int64_t null_dim = 0;
  std::string method;  // "dense" or "lanczos"
  int iterations = 0;
  double residual = 0.0;
};

struct SpectrumOptions {
  /// Eigenvalues below null_tol_rel * lambda_max count as null space.
  double null_tol_rel = 1e-10;
  /// Orders up to this use the full symmetric eigendecomposition.
  std::int64_t dense_threshold = 4000;
  /// "auto", "dense", or "lanczos".
  std::string method = "auto";
  /// Start-vector seed for the Lanczos path; fixed seed -> identical report.
  unsigned seed = 12345;
  int max_iterations = 500;
};

/// Extreme eigenvalues and effective condition number of a symmetric PSD
/// matrix. The Lanczos path uses full reorthogonalization and deflates the
/// constant vector when the matrix has (numerically) zero row sums.
SpectrumReport extreme_eigenvalues(const SymSparseMatrix& k,
                                   const SpectrumOptions& opts = {});

/// (u^T K u) / (mass_scale * u^T u); with mass_scale = h^d this is the
/// discrete energy-to-mass Rayleigh quotient.
double rayleigh_quotient(const SymSparseMatrix& k, const Eigen::VectorXd& u,
                         double mass_scale);

}  // namespace nonlocal

#endif
