#ifndef NONLOCAL_ANALYSIS_HPP
#define NONLOCAL_ANALYSIS_HPP

#include <functional>
#include <string>
#include <vector>

#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"

namespace nonlocal {

struct SampledFunction {
  /// Scalar field on the closed unit cube; evaluators must also tolerate a
  /// collar of width delta outside it when used with extended-data energies.
  std::function<double(const Point&)> value;
  /// Optional first derivative (1D checks only).
  std::function<double(const Point&)> derivative;
  std::string tag;
};

struct PowerLawFit {
  double exponent = 0.0;
  double log_prefactor = 0.0;  // natural log
  double r_squared = 0.0;
  int sample_count = 0;
};

/// Ordinary least squares on (log x, log y).
PowerLawFit fit_power_law(const std::vector<double>& xs,
                          const std::vector<double>& ys);

/// Exponent fit for (delta, lambda_min) records; the slope estimates the
/// power of delta in the lower spectral bound.
PowerLawFit fit_min_eigen_exponent(
    const std::vector<std::pair<double, double>>& records);

/// p-th power interaction energy by midpoint quadrature on element centers:
///   sum_i sum_j vol_i vol_j C(c_i, c_j) |u(c_j) - u(c_i)|^p,
/// i over interior elements; j over interior elements plus, on Dirichlet
/// grids, the ghost collar with zero data. `half` applies the 1/2 factor of
/// the symmetric p = 2 form.
double nonlocal_energy_p(const SampledFunction& u, const Grid& grid,
                         const Kernel& kernel, double p, bool half = false,
                         Norm norm = Norm::euclidean);

struct LocalLimitRow {
  double delta = 0.0;
  double scaled_energy = 0.0;  // 3 delta^-3 times the half-convention energy
  double local_energy = 0.0;   // first-derivative seminorm squared
  double error = 0.0;
};

struct LocalLimitResult {
  std::vector<LocalLimitRow> rows;
  PowerLawFit error_fit;  // |error| against delta
};

/// Convergence of the scaled 1D interaction energy to the gradient seminorm.
/// Pair integrals use the closed-form overlap weights and the data is
/// extended past [0,1] through the evaluator, isolating the O(delta^2)
/// interior behavior from quadrature and truncation effects. Requires
/// h <= min(delta)/20.
LocalLimitResult local_limit_check(const SampledFunction& u,
                                   const std::vector<double>& deltas, int n);

enum class Shape { unit_square, unit_disk };

Shape parse_shape(const std::string& s);
std::string to_string(Shape s);

struct StripRow {
  int index = 0;           // 1-based band number from the boundary
  double area = 0.0;       // subgrid center-rule measure
  double area_certain = 0.0;   // cells provably inside the band
  double area_possible = 0.0;  // cells possibly touching the band
  double bound_in = 0.0;   // inscribed-annulus area
  double bound_out = 0.0;  // circumscribed-annulus area
  bool full = false;       // band lies fully inside the attainable range
  bool within_bounds = false;
};

struct StripReport {
  Shape shape = Shape::unit_square;
  double delta = 0.0;
  int m = 0;
  long long resolution = 0;
  double width = 0.0;  // band width delta^m / 2
  std::vector<StripRow> rows;
  bool all_full_within_bounds = false;
};

/// Partitions the domain into boundary-distance bands of width delta^m / 2,
/// measures each band on a resolution^2 subgrid, and checks the measured
/// areas against the inscribed/circumscribed annulus areas. `area_certain`
/// and `area_possible` bracket the true band measure through the Lipschitz
/// bound on the distance function, so the bound check is robust to subgrid
/// error.
StripReport strip_quantification(Shape shape, double delta, int m,
                                 long long resolution, int workers = 0);

}  // namespace nonlocal

#endif
