#include "nonlocal/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace nonlocal {

PowerLawFit fit_power_law(const std::vector<double>& xs,
                          const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("fit: xs and ys must have equal length");
  }
  if (xs.size() < 3) {
    throw std::invalid_argument("fit: need at least 3 points, got " +
                                std::to_string(xs.size()));
  }
  const int n = static_cast<int>(xs.size());
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(xs[i] > 0.0) || !(ys[i] > 0.0)) {
      throw std::invalid_argument("fit: inputs must be positive");
    }
    lx[i] = std::log(xs[i]);
    ly[i] = std::log(ys[i]);
  }
  double mx = 0.0, my = 0.0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) {
    throw std::invalid_argument("fit: degenerate abscissae (all x equal)");
  }
  PowerLawFit fit;
  fit.exponent = sxy / sxx;
  fit.log_prefactor = my - fit.exponent * mx;
  fit.r_squared = syy == 0.0 ? 1.0 : (sxy * sxy) / (sxx * syy);
  fit.sample_count = n;
  return fit;
}

PowerLawFit fit_min_eigen_exponent(
    const std::vector<std::pair<double, double>>& records) {
  std::vector<double> xs, ys;
  xs.reserve(records.size());
  ys.reserve(records.size());
  for (const auto& [d, lam] : records) {
    xs.push_back(d);
    ys.push_back(lam);
  }
  return fit_power_law(xs, ys);
}

double nonlocal_energy_p(const SampledFunction& u, const Grid& grid,
                         const Kernel& kernel, double p, bool half,
                         Norm norm) {
  if (!(p >= 1.0)) {
    throw std::invalid_argument("p: must be >= 1, got " + std::to_string(p));
  }
  if (!u.value) {
    throw std::invalid_argument("function: missing evaluator");
  }
  // Cache values at every element center; ghosts carry zero data.
  const ElementId total = grid.total_elements();
  std::vector<double> vals(static_cast<std::size_t>(total));
  std::vector<double> vols(static_cast<std::size_t>(total));
  for (ElementId id = 0; id < total; ++id) {
    const bool interior = grid.is_interior(id);
    vals[id] = interior ? u.value(grid.element_center(id)) : 0.0;
    vols[id] = grid.element_volume(id);
  }
  const int d = grid.dim();
  const int reach =
      static_cast<int>(std::ceil(kernel.delta() / grid.h() + kSupportTie));
  double energy = 0.0;
  for (ElementId id = 0; id < total; ++id) {
    if (!grid.is_interior(id)) continue;
    const auto m = grid.decode(id);
    const Point ci = grid.element_center(id);
    std::array<int, 3> mm{0, 0, 0};
    const int r1 = d >= 2 ? reach : 0;
    const int r2 = d >= 3 ? reach : 0;
    for (int o2 = -r2; o2 <= r2; ++o2) {
      for (int o1 = -r1; o1 <= r1; ++o1) {
        for (int o0 = -reach; o0 <= reach; ++o0) {
          if (o0 == 0 && o1 == 0 && o2 == 0) continue;
          mm[0] = m[0] + o0;
          mm[1] = m[1] + o1;
          mm[2] = m[2] + o2;
          bool in_range = true;
          for (int a = 0; a < d; ++a) {
            if (mm[a] < 0 || mm[a] >= grid.per_axis()) in_range = false;
          }
          if (!in_range) continue;
          const ElementId j = grid.encode(mm);
          const double c = kernel.eval(ci, grid.element_center(j), d, norm);
          if (c == 0.0) continue;
          energy += vols[id] * vols[j] * c *
                    std::pow(std::abs(vals[j] - vals[id]), p);
        }
      }
    }
  }
  return half ? 0.5 * energy : energy;
}

namespace {

// Closed-form 1D pair integrals of the delta-ball indicator between interior
// elements at lattice offset o (both of width h).
std::vector<double> bond_weights_1d(double h, double delta, int reach) {
  const auto antider = [h](double t) { return h * t - 0.5 * t * std::abs(t); };
  std::vector<double> w(static_cast<std::size_t>(reach) + 1, 0.0);
  for (int o = 1; o <= reach; ++o) {
    const double s = o * h;
    const double lo = std::max(-delta - s, -h);
    const double hi = std::min(delta - s, h);
    if (hi > lo) w[o] = std::max(0.0, antider(hi) - antider(lo));
  }
  return w;
}

}  // namespace

LocalLimitResult local_limit_check(const SampledFunction& u,
                                   const std::vector<double>& deltas, int n) {
  if (!u.value) throw std::invalid_argument("function: missing evaluator");
  if (!u.derivative) {
    throw std::invalid_argument(
        "function: local-limit check requires a derivative evaluator");
  }
  if (deltas.size() < 3) {
    throw std::invalid_argument("deltas: need at least 3 values");
  }
  if (n < 2) throw std::invalid_argument("n: must be >= 2");
  const double h = 1.0 / n;
  for (double d : deltas) {
    if (!(d > 0.0)) {
      throw std::invalid_argument("deltas: must be positive");
    }
    if (h > d / 20.0 * (1.0 + kSupportTie)) {
      throw std::invalid_argument(
          "n: mesh too coarse for delta " + std::to_string(d) +
          " (need h <= delta/20, h = " + std::to_string(h) + ")");
    }
  }

  // Gradient seminorm by composite midpoint.
  double local = 0.0;
  for (int i = 0; i < n; ++i) {
    const double du = u.derivative(Point{(i + 0.5) * h, 0.0, 0.0});
    local += du * du * h;
  }

  LocalLimitResult res;
  std::vector<double> errs;
  for (double delta : deltas) {
    const int reach = static_cast<int>(std::ceil(delta / h)) + 1;
    const auto w = bond_weights_1d(h, delta, reach);
    // Values on the interior plus a collar wide enough for every bond.
    std::vector<double> vals(static_cast<std::size_t>(n) + 2 * reach);
    for (int t = 0; t < static_cast<int>(vals.size()); ++t) {
      const double x = (t - reach + 0.5) * h;
      vals[t] = u.value(Point{x, 0.0, 0.0});
    }
    double energy = 0.0;
    for (int i = 0; i < n; ++i) {
      const int ti = i + reach;
      for (int o = 1; o <= reach; ++o) {
        if (w[o] == 0.0) continue;
        const double dl = vals[ti - o] - vals[ti];
        const double dr = vals[ti + o] - vals[ti];
        energy += w[o] * (dl * dl + dr * dr);
      }
    }
    energy *= 0.5;
    LocalLimitRow row;
    row.delta = delta;
    row.scaled_energy = 3.0 * energy / (delta * delta * delta);
    row.local_energy = local;
    row.error = std::abs(row.scaled_energy - local);
    res.rows.push_back(row);
    errs.push_back(row.error);
  }
  res.error_fit = fit_power_law(deltas, errs);
  return res;
}

Shape parse_shape(const std::string& s) {
  if (s == "unit_square" || s == "square") return Shape::unit_square;
  if (s == "unit_disk" || s == "disk") return Shape::unit_disk;
  throw std::invalid_argument(
      "shape: expected 'unit_square' or 'unit_disk', got '" + s + "'");
}

std::string to_string(Shape s) {
  return s == Shape::unit_square ? "unit_square" : "unit_disk";
}

StripReport strip_quantification(Shape shape, double delta, int m,
                                 long long resolution, int workers) {
  if (!(delta > 0.0) || !(delta < 1.0)) {
    throw std::invalid_argument("delta: must lie in (0, 1)");
  }
  if (m < 1) throw std::invalid_argument("m: must be >= 1");
  if (resolution < 2) throw std::invalid_argument("resolution: must be >= 2");
  const double width = 0.5 * std::pow(delta, m);
  if (width < 2.0 / static_cast<double>(resolution) * (1.0 - kSupportTie)) {
    throw std::invalid_argument(
        "resolution: too coarse to resolve bands of width " +
        std::to_string(width) + " (need width >= 2/resolution)");
  }

  // Inscribed and circumscribed radii of the shape.
  const double r_in = 0.5;
  const double r_out = shape == Shape::unit_square ? std::sqrt(2.0) / 2.0 : 0.5;
  const double dist_max = 0.5;  // max boundary distance in both shapes
  const int nbands = static_cast<int>(std::ceil(dist_max / width - 1e-12));

  const double cell = 1.0 / static_cast<double>(resolution);
  const double rad = cell * std::sqrt(2.0) / 2.0;  // Lipschitz slack
  const double cell_area = cell * cell;

  struct Acc {
    std::vector<double> center, lo, hi;
  };
  const auto run_band = [&](long long row0, long long row1, Acc& acc) {
    acc.center.assign(nbands, 0.0);
    acc.lo.assign(nbands, 0.0);
    acc.hi.assign(nbands, 0.0);
    for (long long iy = row0; iy < row1; ++iy) {
      const double y = (iy + 0.5) * cell;
      for (long long ix = 0; ix < resolution; ++ix) {
        const double x = (ix + 0.5) * cell;
        double dc;
        if (shape == Shape::unit_square) {
          dc = std::min(std::min(x, 1.0 - x), std::min(y, 1.0 - y));
        } else {
          const double r = std::hypot(x - 0.5, y - 0.5);
          dc = 0.5 - r;
        }
        const double d_hi = dc + rad;
        if (d_hi <= 0.0) continue;  // certainly outside the domain
        const double d_lo = std::max(dc - rad, 0.0);
        if (dc >= 0.0) {
          const int j = std::min(static_cast<int>(dc / width), nbands - 1);
          acc.center[j] += cell_area;
          const int j_in = static_cast<int>(d_lo / width);
          if (dc - rad >= 0.0 && j_in == static_cast<int>(d_hi / width) &&
              j_in < nbands) {
            acc.lo[j_in] += cell_area;
          }
        }
        const int j0 = static_cast<int>(d_lo / width);
        const int j1 = std::min(static_cast<int>(d_hi / width), nbands - 1);
        for (int j = j0; j <= j1 && j < nbands; ++j) acc.hi[j] += cell_area;
      }
    }
  };

  int nworkers = workers;
  if (nworkers <= 0) {
    nworkers = static_cast<int>(std::thread::hardware_concurrency());
    if (nworkers < 1) nworkers = 1;
  }
  nworkers = static_cast<int>(
      std::min<long long>(nworkers, std::max<long long>(resolution, 1)));
  std::vector<Acc> parts(static_cast<std::size_t>(nworkers));
  if (nworkers == 1) {
    run_band(0, resolution, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = (resolution + nworkers - 1) / nworkers;
    for (int t = 0; t < nworkers; ++t) {
      pool.emplace_back([&, t]() {
        const long long r0 = t * chunk;
        const long long r1 = std::min<long long>(r0 + chunk, resolution);
        if (r0 < r1) run_band(r0, r1, parts[static_cast<std::size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
  }
  // Merge in fixed chunk order so results do not depend on scheduling.
  Acc total;
  total.center.assign(nbands, 0.0);
  total.lo.assign(nbands, 0.0);
  total.hi.assign(nbands, 0.0);
  for (const auto& p : parts) {
    if (p.center.empty()) continue;
    for (int j = 0; j < nbands; ++j) {
      total.center[j] += p.center[j];
      total.lo[j] += p.lo[j];
      total.hi[j] += p.hi[j];
    }
  }

  StripReport rep;
  rep.shape = shape;
  rep.delta = delta;
  rep.m = m;
  rep.resolution = resolution;
  rep.width = width;
  rep.all_full_within_bounds = true;
  const double pi = 3.14159265358979323846;
  for (int j = 1; j <= nbands; ++j) {
    StripRow row;
    row.index = j;
    row.area = total.center[j - 1];
    row.area_certain = total.lo[j - 1];
    row.area_possible = total.hi[j - 1];
    const double a_in = std::max(r_in - (j - 1) * width, 0.0);
    const double b_in = std::max(r_in - j * width, 0.0);
    row.bound_in = pi * (a_in * a_in - b_in * b_in);
    const double a_out = r_out - (j - 1) * width;
    const double b_out = std::max(r_out - j * width, 0.0);
    row.bound_out = pi * (a_out * a_out - b_out * b_out);
    row.full = j * width <= dist_max * (1.0 + 1e-12);
    if (row.full) {
      const double slack = 1e-12 + 1e-9 * row.bound_out;
      row.within_bounds = row.bound_in <= row.area_possible + slack &&
                          row.area_certain <= row.bound_out + slack;
      if (!row.within_bounds) rep.all_full_within_bounds = false;
    }
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace nonlocal
