#include "nonlocal/assembly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nonlocal {

QuadratureSpec QuadratureSpec::subdiv(int q) {
  if (q < 1) {
    throw std::invalid_argument("quadrature: subdivisions must be >= 1, got " +
                                std::to_string(q));
  }
  return {Rule::subdiv, q};
}

QuadratureSpec QuadratureSpec::parse(const std::string& s) {
  if (s == "midpoint") return midpoint();
  if (s == "exact") return exact();
  if (s.rfind("subdiv", 0) == 0) {
    int q = 1;
    if (s.size() > 6) {
      if (s[6] != ':') {
        throw std::invalid_argument("quadrature: expected 'subdiv:<q>', got '" +
                                    s + "'");
      }
      try {
        q = std::stoi(s.substr(7));
      } catch (const std::exception&) {
        throw std::invalid_argument("quadrature: bad subdivision count in '" +
                                    s + "'");
      }
    }
    return subdiv(q);
  }
  throw std::invalid_argument(
      "quadrature: expected 'midpoint', 'subdiv:<q>', or 'exact', got '" + s +
      "'");
}

std::string QuadratureSpec::name() const {
  switch (rule) {
    case Rule::midpoint:
      return "midpoint";
    case Rule::subdiv:
      return "subdiv:" + std::to_string(q);
    default:
      return "exact";
  }
}

namespace {

// Exact integral over x in [a0,a1] of the overlap length
// |[b0,b1] ∩ [x-delta, x+delta]|. The integrand is piecewise linear in x, so
// the trapezoid rule on its breakpoints is exact.
double overlap_integral_1d(double a0, double a1, double b0, double b1,
                           double delta) {
  if (b0 - a1 >= delta || a0 - b1 >= delta) return 0.0;
  double brk[6] = {a0, a1, b1 - delta, b0 - delta, b1 + delta, b0 + delta};
  std::sort(brk, brk + 6);
  const auto g = [&](double x) {
    return std::max(0.0, std::min(b1, x + delta) - std::max(b0, x - delta));
  };
  double total = 0.0;
  for (int k = 0; k < 5; ++k) {
    const double lo = std::max(a0, brk[k]);
    const double hi = std::min(a1, brk[k + 1]);
    if (hi > lo) total += 0.5 * (g(lo) + g(hi)) * (hi - lo);
  }
  return total;
}

double weight_midpoint(const Grid& grid, const Kernel& kernel, Norm norm,
                       ElementId a, ElementId b) {
  const double c = kernel.eval(grid.element_center(a), grid.element_center(b),
                               grid.dim(), norm);
  if (c == 0.0) return 0.0;
  return c * grid.element_volume(a) * grid.element_volume(b);
}

double weight_subdiv(const Grid& grid, const Kernel& kernel, Norm norm, int q,
                     ElementId a, ElementId b) {
  const int d = grid.dim();
  Point alo, ahi, blo, bhi;
  grid.element_box(a, alo, ahi);
  grid.element_box(b, blo, bhi);
  // Sub-cell midpoints per axis for both elements.
  std::vector<double> pa(static_cast<std::size_t>(q) * d);
  std::vector<double> pb(static_cast<std::size_t>(q) * d);
  double subvol_a = 1.0, subvol_b = 1.0;
  for (int k = 0; k < d; ++k) {
    const double wa = (ahi[k] - alo[k]) / q;
    const double wb = (bhi[k] - blo[k]) / q;
    subvol_a *= wa;
    subvol_b *= wb;
    for (int s = 0; s < q; ++s) {
      pa[k * q + s] = alo[k] + (s + 0.5) * wa;
      pb[k * q + s] = blo[k] + (s + 0.5) * wb;
    }
  }
  const double w2 = subvol_a * subvol_b;
  double total = 0.0;
  int ia[3] = {0, 0, 0};
  int ib[3] = {0, 0, 0};
  Point x{0, 0, 0}, y{0, 0, 0};
  const int npts = static_cast<int>(std::pow(q, d) + 0.5);
  for (int sa = 0; sa < npts; ++sa) {
    int ta = sa;
    for (int k = 0; k < d; ++k) {
      ia[k] = ta % q;
      ta /= q;
      x[k] = pa[k * q + ia[k]];
    }
    for (int sb = 0; sb < npts; ++sb) {
      int tb = sb;
      for (int k = 0; k < d; ++k) {
        ib[k] = tb % q;
        tb /= q;
        y[k] = pb[k * q + ib[k]];
      }
      total += kernel.eval(x, y, d, norm);
    }
  }
  return total * w2;
}

double weight_exact(const Grid& grid, const Kernel& kernel, Norm norm,
                    ElementId a, ElementId b) {
  if (!kernel.is_indicator()) {
    throw std::invalid_argument(
        "quadrature: exact rule requires an indicator-type kernel; use "
        "subdiv for custom radial profiles");
  }
  const int d = grid.dim();
  if (d >= 2 && norm == Norm::euclidean) {
    throw std::invalid_argument(
        "quadrature: exact rule in d >= 2 is available only under the max "
        "norm; use subdiv for Euclidean balls");
  }
  Point alo, ahi, blo, bhi;
  grid.element_box(a, alo, ahi);
  grid.element_box(b, blo, bhi);
  double w = kernel.scale();
  for (int k = 0; k < d; ++k) {
    w *= overlap_integral_1d(alo[k], ahi[k], blo[k], bhi[k], kernel.delta());
    if (w == 0.0) return 0.0;
  }
  return w;
}

double weight_ordered(const Grid& grid, const Kernel& kernel,
                      const QuadratureSpec& quad, Norm norm, ElementId a,
                      ElementId b) {
  switch (quad.rule) {
    case QuadratureSpec::Rule::midpoint:
      return weight_midpoint(grid, kernel, norm, a, b);
    case QuadratureSpec::Rule::subdiv:
      return quad.q == 1 ? weight_midpoint(grid, kernel, norm, a, b)
                         : weight_subdiv(grid, kernel, norm, quad.q, a, b);
    default:
      return weight_exact(grid, kernel, norm, a, b);
  }
}

}  // namespace

double pair_weight(const Grid& grid, const Kernel& kernel,
                   const QuadratureSpec& quad, Norm norm, ElementId a,
                   ElementId b) {
  // Canonical evaluation order makes W_ab bit-identical to W_ba.
  if (a > b) std::swap(a, b);
  return weight_ordered(grid, kernel, quad, norm, a, b);
}

SymSparseMatrix assemble_stiffness(const Grid& grid, const Kernel& kernel,
                                   const AssemblyOptions& opts) {
  const double delta = kernel.delta();
  if (grid.bc() == Bc::dirichlet &&
      grid.ghost_layers() * grid.h() < delta * (1.0 - kSupportTie)) {
    throw std::invalid_argument(
        "grid: dirichlet ghost collar is thinner than the kernel horizon");
  }
  const int d = grid.dim();
  // Offset reach: one element beyond ceil(delta/h) covers every pair whose
  // boxes can intersect the horizon ball, for all quadrature rules.
  const int reach = static_cast<int>(std::ceil(delta / grid.h())) + 1;
  const ElementId nunk = grid.num_unknowns();
  std::vector<std::vector<SymSparseMatrix::RowEntry>> rows(
      static_cast<std::size_t>(nunk));

  const auto build_row = [&](ElementId k) {
    const ElementId id = grid.unknown_id(k);
    const auto m = grid.decode(id);
    auto& row = rows[static_cast<std::size_t>(k)];
    double diag = 0.0;
    std::array<int, 3> mm{m[0], m[1], m[2]};
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
          const double w =
              pair_weight(grid, kernel, opts.quad, opts.norm, id, j);
          if (w == 0.0) continue;
          diag += w;
          const ElementId jk = grid.unknown_index(j);
          if (jk >= 0) row.emplace_back(jk, -w);
        }
      }
    }
    row.emplace_back(k, diag);
    std::sort(row.begin(), row.end());
  };

  int workers = opts.workers;
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = static_cast<int>(
      std::min<ElementId>(workers, std::max<ElementId>(nunk, 1)));
  if (workers == 1) {
    for (ElementId k = 0; k < nunk; ++k) build_row(k);
  } else {
    // Rows are independent and land in pre-assigned slots, so the result is
    // identical for any worker count.
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&, t]() {
        for (ElementId k = t; k < nunk; k += workers) build_row(k);
      });
    }
    for (auto& th : pool) th.join();
  }
  return SymSparseMatrix::from_rows(std::move(rows));
}

}  // namespace nonlocal
