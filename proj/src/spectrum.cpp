#include "nonlocal/spectrum.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <stdexcept>

namespace nonlocal {

namespace {

struct LanczosResult {
  double lambda = 0.0;
  int iterations = 0;
  double residual = 0.0;
};

// Largest eigenvalue of the symmetric operator `apply` restricted to the
// orthogonal complement of `deflate` (orthonormal columns). Full
// reorthogonalization; deterministic for a fixed seed.
LanczosResult lanczos_largest(
    const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
    Eigen::Index n, const std::vector<Eigen::VectorXd>& deflate, unsigned seed,
    int max_iterations, double abs_tol) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (Eigen::Index i = 0; i < n; ++i) v[i] = dist(rng);

  const auto project = [&](Eigen::VectorXd& x) {
    for (const auto& d : deflate) x -= d.dot(x) * d;
  };
  project(v);
  double nv = v.norm();
  if (nv == 0.0) {
    throw std::runtime_error("lanczos: start vector vanished after deflation");
  }
  v /= nv;

  std::vector<Eigen::VectorXd> basis{v};
  std::vector<double> alpha, beta;
  LanczosResult best;
  Eigen::VectorXd w;
  for (int it = 0; it < max_iterations; ++it) {
    w = apply(basis.back());
    project(w);
    const double a = basis.back().dot(w);
    alpha.push_back(a);
    w -= a * basis.back();
    if (basis.size() > 1) w -= beta.back() * basis[basis.size() - 2];
    // Full reorthogonalization (twice for safety).
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : basis) w -= b.dot(w) * b;
    }
    const double bnext = w.norm();

    // Ritz values of the current tridiagonal matrix.
    const Eigen::Index m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      t(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) {
        t(i, i + 1) = t(i + 1, i) = beta[static_cast<std::size_t>(i)];
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    const double theta = es.eigenvalues()(m - 1);
    const double s_last = std::abs(es.eigenvectors()(m - 1, m - 1));
    const double resid = bnext * s_last;
    best.lambda = theta;
    best.iterations = static_cast<int>(m);
    best.residual = resid;
    if (resid <= abs_tol || bnext <= 1e-14 * std::abs(theta) ||
        m >= n - static_cast<Eigen::Index>(deflate.size())) {
      return best;
    }
    beta.push_back(bnext);
    basis.push_back(w / bnext);
  }
  throw std::runtime_error(
      "lanczos: no convergence after " + std::to_string(max_iterations) +
      " iterations; best estimate " + std::to_string(best.lambda) +
      " with residual bound " + std::to_string(best.residual));
}

SpectrumReport dense_report(const SymSparseMatrix& k, double null_tol_rel) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k.dense());
  if (es.info() != Eigen::Success) {
    throw std::runtime_error("spectrum: dense eigendecomposition failed");
  }
  const Eigen::VectorXd& ev = es.eigenvalues();
  SpectrumReport rep;
  rep.method = "dense";
  rep.lambda_max = ev(ev.size() - 1);
  if (!(rep.lambda_max > 0.0)) {
    throw std::runtime_error("spectrum: matrix has no positive eigenvalue");
  }
  const double cut = null_tol_rel * rep.lambda_max;
  Eigen::Index first = 0;
  while (first < ev.size() && ev(first) <= cut) ++first;
  if (first == ev.size()) {
    throw std::runtime_error(
        "spectrum: every eigenvalue fell below the null-space threshold");
  }
  rep.null_dim = first;
  rep.lambda_min_nonzero = ev(first);
  rep.kappa_eff = rep.lambda_max / rep.lambda_min_nonzero;
  rep.iterations = 0;
  rep.residual = 0.0;
  return rep;
}

SpectrumReport lanczos_report(const SymSparseMatrix& k,
                              const SpectrumOptions& opts) {
  const Eigen::Index n = k.order();
  const auto apply = [&](const Eigen::VectorXd& x) { return k.apply(x); };

  // Constant-vector deflation when the matrix annihilates constants
  // (Neumann-type zero row sums).
  std::vector<Eigen::VectorXd> deflate;
  double max_row_defect = 0.0;
  for (SymSparseMatrix::Index i = 0; i < k.order(); ++i) {
    max_row_defect = std::max(max_row_defect, std::abs(k.row_sum(i)));
  }
  const double scale = k.max_abs();
  if (scale > 0.0 && max_row_defect <= 1e-10 * scale) {
    deflate.push_back(Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(double(n))));
  }

  SpectrumReport rep;
  rep.method = "lanczos";
  rep.null_dim = static_cast<std::int64_t>(deflate.size());

  const LanczosResult top = lanczos_largest(
      apply, n, {}, opts.seed, opts.max_iterations, 1e-10 * scale);
  rep.lambda_max = top.lambda;
  if (!(rep.lambda_max > 0.0)) {
    throw std::runtime_error("spectrum: matrix has no positive eigenvalue");
  }

  // Smallest nonzero eigenvalue via the reversed spectrum of sigma*I - K,
  // with the null vector projected out.
  const double sigma = 1.01 * rep.lambda_max;
  const auto apply_rev = [&](const Eigen::VectorXd& x) {
    return (sigma * x - k.apply(x)).eval();
  };
  const LanczosResult bot =
      lanczos_largest(apply_rev, n, deflate, opts.seed + 1,
                      opts.max_iterations, 1e-9 * rep.lambda_max);
  rep.lambda_min_nonzero = sigma - bot.lambda;
  if (rep.lambda_min_nonzero <= opts.null_tol_rel * rep.lambda_max) {
    throw std::runtime_error(
        "spectrum: lanczos smallest nonzero eigenvalue estimate " +
        std::to_string(rep.lambda_min_nonzero) +
        " fell below the null-space threshold; increase deflation or use the "
        "dense path");
  }
  rep.kappa_eff = rep.lambda_max / rep.lambda_min_nonzero;
  rep.iterations = top.iterations + bot.iterations;
  rep.residual = std::max(top.residual, bot.residual);
  return rep;
}

}  // namespace

SpectrumReport extreme_eigenvalues(const SymSparseMatrix& k,
                                   const SpectrumOptions& opts) {
  if (k.order() == 0) {
    throw std::invalid_argument("spectrum: empty matrix");
  }
  const double defect = k.symmetry_defect();
  if (defect > 1e-12 * std::max(1.0, k.max_abs())) {
    throw std::invalid_argument("spectrum: matrix is not symmetric (defect " +
                                std::to_string(defect) + ")");
  }
  if (opts.method == "dense" ||
      (opts.method == "auto" && k.order() <= opts.dense_threshold)) {
    return dense_report(k, opts.null_tol_rel);
  }
  if (opts.method == "lanczos" || opts.method == "auto") {
    return lanczos_report(k, opts);
  }
  throw std::invalid_argument(
      "method: expected 'auto', 'dense', or 'lanczos', got '" + opts.method +
      "'");
}

double rayleigh_quotient(const SymSparseMatrix& k, const Eigen::VectorXd& u,
                         double mass_scale) {
  const double nn = u.squaredNorm();
  if (nn == 0.0) {
    throw std::invalid_argument("rayleigh quotient: zero vector");
  }
  if (!(mass_scale > 0.0)) {
    throw std::invalid_argument("rayleigh quotient: mass_scale must be > 0");
  }
  return k.quadratic_form(u) / (mass_scale * nn);
}

}  // namespace nonlocal
