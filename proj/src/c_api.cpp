#include "nonlocal/nonlocal.h"

#include <cstdio>
#include <cstring>
#include <new>
#include <vector>
#include <string>

#include "nonlocal/analysis.hpp"
#include "nonlocal/assembly.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/kernel.hpp"
#include "nonlocal/matrix_market.hpp"
#include "nonlocal/spectrum.hpp"
#include "nonlocal/substructure.hpp"

struct nl_grid {
  nonlocal::Grid grid;
};
struct nl_kernel {
  nonlocal::Kernel kernel;
};
struct nl_matrix {
  nonlocal::SymSparseMatrix matrix;
};
struct nl_partition {
  nonlocal::Partition partition;
};

namespace {

thread_local std::string g_error;

int fail(int code, const std::string& msg) {
  g_error = msg;
  return code;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::invalid_argument& e) {
    return fail(NL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::out_of_range& e) {
    return fail(NL_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(NL_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    const std::string what = e.what();
    return fail(what.find("matrix market") != std::string::npos ? NL_ERR_IO
                                                                : NL_ERR_RUNTIME,
                what);
  }
}

int require(bool ok, const char* msg) {
  return ok ? NL_OK : fail(NL_ERR_INVALID_ARGUMENT, msg);
}

}  // namespace

extern "C" {

const char* nl_version(void) { return "1.0.0"; }

const char* nl_error_message(void) { return g_error.c_str(); }

int nl_grid_create(int dim, int n, double delta, const char* bc,
                   const char* layout, nl_grid** out) {
  if (int rc = require(bc && layout && out, "null argument")) return rc;
  return guarded([&] {
    *out = new nl_grid{nonlocal::Grid::build(dim, n, delta,
                                             nonlocal::parse_bc(bc),
                                             nonlocal::parse_layout(layout))};
    return NL_OK;
  });
}

void nl_grid_free(nl_grid* g) { delete g; }

double nl_grid_h(const nl_grid* g) { return g ? g->grid.h() : 0.0; }

int64_t nl_grid_num_unknowns(const nl_grid* g) {
  return g ? g->grid.num_unknowns() : 0;
}

int nl_grid_ghost_layers(const nl_grid* g) {
  return g ? g->grid.ghost_layers() : 0;
}

int64_t nl_grid_total_elements(const nl_grid* g) {
  return g ? g->grid.total_elements() : 0;
}

int nl_grid_element_center(const nl_grid* g, int64_t id, double* x) {
  if (int rc = require(g && x, "null argument")) return rc;
  return guarded([&] {
    const nonlocal::Point c = g->grid.element_center(id);
    for (int k = 0; k < g->grid.dim(); ++k) x[k] = c[k];
    return NL_OK;
  });
}

int64_t nl_grid_neighbors_within(const nl_grid* g, int64_t id, double delta,
                                 const char* norm, int64_t* out, int64_t cap) {
  if (!g || !norm) {
    fail(NL_ERR_INVALID_ARGUMENT, "null argument");
    return -1;
  }
  int64_t n = -1;
  guarded([&] {
    const auto ids =
        g->grid.neighbors_within(id, delta, nonlocal::parse_norm(norm));
    n = static_cast<int64_t>(ids.size());
    for (int64_t k = 0; k < n && k < cap && out; ++k) out[k] = ids[k];
    return NL_OK;
  });
  return n;
}

int nl_kernel_create(const char* variant, double delta, nl_kernel** out) {
  if (int rc = require(variant && out, "null argument")) return rc;
  return guarded([&] {
    *out = new nl_kernel{nonlocal::Kernel::from_name(variant, delta)};
    return NL_OK;
  });
}

int nl_kernel_create_custom(double delta, double scale,
                            double (*profile)(double, void*), void* ctx,
                            nl_kernel** out) {
  if (int rc = require(profile && out, "null argument")) return rc;
  return guarded([&] {
    *out = new nl_kernel{nonlocal::Kernel::custom_radial(
        delta, scale, [profile, ctx](double r) { return profile(r, ctx); })};
    return NL_OK;
  });
}

void nl_kernel_free(nl_kernel* k) { delete k; }

int nl_kernel_eval(const nl_kernel* k, const double* x, const double* y,
                   int dim, double* out) {
  if (int rc = require(k && x && y && out, "null argument")) return rc;
  if (int rc = require(dim >= 1 && dim <= 3, "dim: must be 1, 2, or 3")) {
    return rc;
  }
  return guarded([&] {
    nonlocal::Point px{0, 0, 0}, py{0, 0, 0};
    for (int a = 0; a < dim; ++a) {
      px[a] = x[a];
      py[a] = y[a];
    }
    *out = k->kernel.eval(px, py, dim);
    return NL_OK;
  });
}

int nl_assemble(const nl_grid* g, const nl_kernel* k, const char* quadrature,
                const char* norm, int workers, nl_matrix** out) {
  if (int rc = require(g && k && quadrature && norm && out, "null argument")) {
    return rc;
  }
  return guarded([&] {
    nonlocal::AssemblyOptions opts;
    opts.quad = nonlocal::QuadratureSpec::parse(quadrature);
    opts.norm = nonlocal::parse_norm(norm);
    opts.workers = workers;
    *out = new nl_matrix{nonlocal::assemble_stiffness(g->grid, k->kernel, opts)};
    return NL_OK;
  });
}

int64_t nl_matrix_order(const nl_matrix* m) {
  return m ? m->matrix.order() : 0;
}

int64_t nl_matrix_nnz(const nl_matrix* m) {
  return m ? m->matrix.nnz_lower() : 0;
}

int nl_matrix_entry(const nl_matrix* m, int64_t i, int64_t j, double* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    *out = m->matrix.entry(i, j);
    return NL_OK;
  });
}

int nl_matrix_apply(const nl_matrix* m, const double* u, double* y) {
  if (int rc = require(m && u && y, "null argument")) return rc;
  return guarded([&] {
    m->matrix.apply(u, y);
    return NL_OK;
  });
}

int nl_matrix_export_mm(const nl_matrix* m, const char* path) {
  if (int rc = require(m && path, "null argument")) return rc;
  return guarded([&] {
    nonlocal::export_matrix(m->matrix, path);
    return NL_OK;
  });
}

int nl_matrix_import_mm(const char* path, nl_matrix** out) {
  if (int rc = require(path && out, "null argument")) return rc;
  return guarded([&] {
    *out = new nl_matrix{nonlocal::import_matrix(path)};
    return NL_OK;
  });
}

void nl_matrix_free(nl_matrix* m) { delete m; }

int nl_spectrum(const nl_matrix* m, double null_tol_rel,
                int64_t dense_threshold, const char* method, unsigned seed,
                nl_spectrum_report* out) {
  if (int rc = require(m && out, "null argument")) return rc;
  return guarded([&] {
    nonlocal::SpectrumOptions opts;
    if (null_tol_rel > 0.0) opts.null_tol_rel = null_tol_rel;
    if (dense_threshold > 0) opts.dense_threshold = dense_threshold;
    if (method != nullptr) opts.method = method;
    opts.seed = seed;
    const nonlocal::SpectrumReport rep =
        nonlocal::extreme_eigenvalues(m->matrix, opts);
    out->lambda_min_nonzero = rep.lambda_min_nonzero;
    out->lambda_max = rep.lambda_max;
    out->kappa_eff = rep.kappa_eff;
    out->null_dim = rep.null_dim;
    out->iterations = rep.iterations;
    out->residual = rep.residual;
    std::snprintf(out->method, sizeof(out->method), "%s", rep.method.c_str());
    return NL_OK;
  });
}

int nl_rayleigh_quotient(const nl_matrix* m, const double* u, int64_t len,
                         double mass_scale, double* out) {
  if (int rc = require(m && u && out, "null argument")) return rc;
  if (int rc = require(len == m->matrix.order(),
                       "u: length does not match matrix order")) {
    return rc;
  }
  return guarded([&] {
    Eigen::Map<const Eigen::VectorXd> v(u, len);
    *out = nonlocal::rayleigh_quotient(m->matrix, v, mass_scale);
    return NL_OK;
  });
}

int nl_partition_create(const nl_grid* g, double delta, nl_partition** out) {
  if (int rc = require(g && out, "null argument")) return rc;
  return guarded([&] {
    *out = new nl_partition{nonlocal::partition_two_domain(g->grid, delta)};
    return NL_OK;
  });
}

void nl_partition_free(nl_partition* p) { delete p; }

int64_t nl_partition_size(const nl_partition* p, int which) {
  if (!p) return -1;
  switch (which) {
    case 0:
      return static_cast<int64_t>(p->partition.i1.size());
    case 1:
      return static_cast<int64_t>(p->partition.i2.size());
    case 2:
      return static_cast<int64_t>(p->partition.igamma.size());
    default:
      fail(NL_ERR_INVALID_ARGUMENT, "which: must be 0, 1, or 2");
      return -1;
  }
}

double nl_partition_width(const nl_partition* p) {
  return p ? p->partition.width : 0.0;
}

int nl_schur_complement(const nl_matrix* m, const nl_partition* p,
                        nl_matrix** out) {
  if (int rc = require(m && p && out, "null argument")) return rc;
  return guarded([&] {
    const auto blocks = nonlocal::split_blocks(m->matrix, p->partition);
    const auto schur = nonlocal::schur_complement(blocks);
    *out = new nl_matrix{nonlocal::SymSparseMatrix::from_dense(schur.s)};
    return NL_OK;
  });
}

int nl_solve_substructured(const nl_matrix* m, const nl_partition* p,
                           const double* f, double* u) {
  if (int rc = require(m && p && f && u, "null argument")) return rc;
  return guarded([&] {
    Eigen::Map<const Eigen::VectorXd> fv(f, m->matrix.order());
    const Eigen::VectorXd sol =
        nonlocal::solve_substructured(m->matrix, fv, p->partition);
    Eigen::Map<Eigen::VectorXd>(u, sol.size()) = sol;
    return NL_OK;
  });
}

int nl_solve_monolithic(const nl_matrix* m, const double* f, double* u) {
  if (int rc = require(m && f && u, "null argument")) return rc;
  return guarded([&] {
    Eigen::Map<const Eigen::VectorXd> fv(f, m->matrix.order());
    const Eigen::VectorXd sol = nonlocal::solve_monolithic(m->matrix, fv);
    Eigen::Map<Eigen::VectorXd>(u, sol.size()) = sol;
    return NL_OK;
  });
}

int nl_residual_report(const nl_matrix* m, const nl_partition* p,
                       const double* f, const double* u, double r[3]) {
  if (int rc = require(m && p && f && u && r, "null argument")) return rc;
  return guarded([&] {
    Eigen::Map<const Eigen::VectorXd> fv(f, m->matrix.order());
    Eigen::Map<const Eigen::VectorXd> uv(u, m->matrix.order());
    const auto rep =
        nonlocal::verify_two_domain_residuals(m->matrix, p->partition, fv, uv);
    r[0] = rep.r1;
    r[1] = rep.r2;
    r[2] = rep.rgamma;
    return NL_OK;
  });
}

int nl_fit_power_law(const double* xs, const double* ys, int count,
                     double* exponent, double* log_prefactor,
                     double* r_squared) {
  if (int rc = require(xs && ys, "null argument")) return rc;
  return guarded([&] {
    const auto fit = nonlocal::fit_power_law(
        std::vector<double>(xs, xs + count),
        std::vector<double>(ys, ys + count));
    if (exponent) *exponent = fit.exponent;
    if (log_prefactor) *log_prefactor = fit.log_prefactor;
    if (r_squared) *r_squared = fit.r_squared;
    return NL_OK;
  });
}

int nl_energy_p(const nl_grid* g, const nl_kernel* k,
                double (*u)(const double*, int, void*), void* ctx, double p,
                int half, double* out) {
  if (int rc = require(g && k && u && out, "null argument")) return rc;
  return guarded([&] {
    const int dim = g->grid.dim();
    nonlocal::SampledFunction fn;
    fn.value = [u, ctx, dim](const nonlocal::Point& x) {
      return u(x.data(), dim, ctx);
    };
    *out = nonlocal::nonlocal_energy_p(fn, g->grid, k->kernel, p, half != 0);
    return NL_OK;
  });
}

int nl_local_limit(double (*u)(double, void*), double (*du)(double, void*),
                   void* ctx, const double* deltas, int count, int n,
                   double* scaled, double* local, double* errors,
                   double* slope, double* r_squared) {
  if (int rc = require(u && du && deltas, "null argument")) return rc;
  return guarded([&] {
    nonlocal::SampledFunction fn;
    fn.value = [u, ctx](const nonlocal::Point& x) { return u(x[0], ctx); };
    fn.derivative = [du, ctx](const nonlocal::Point& x) {
      return du(x[0], ctx);
    };
    const auto res = nonlocal::local_limit_check(
        fn, std::vector<double>(deltas, deltas + count), n);
    for (int i = 0; i < count; ++i) {
      if (scaled) scaled[i] = res.rows[i].scaled_energy;
      if (local) local[i] = res.rows[i].local_energy;
      if (errors) errors[i] = res.rows[i].error;
    }
    if (slope) *slope = res.error_fit.exponent;
    if (r_squared) *r_squared = res.error_fit.r_squared;
    return NL_OK;
  });
}

int nl_strips(const char* shape, double delta, int m, int64_t resolution,
              int workers, nl_strip_row* rows, int64_t cap, int64_t* count,
              double* width, int* all_within) {
  if (int rc = require(shape != nullptr, "null argument")) return rc;
  return guarded([&] {
    const auto rep = nonlocal::strip_quantification(
        nonlocal::parse_shape(shape), delta, m, resolution, workers);
    if (count) *count = static_cast<int64_t>(rep.rows.size());
    if (width) *width = rep.width;
    if (all_within) *all_within = rep.all_full_within_bounds ? 1 : 0;
    for (int64_t i = 0;
         rows && i < cap && i < static_cast<int64_t>(rep.rows.size()); ++i) {
      const auto& r = rep.rows[static_cast<std::size_t>(i)];
      rows[i] = nl_strip_row{r.index,    r.area,      r.area_certain,
                             r.area_possible, r.bound_in, r.bound_out,
                             r.full ? 1 : 0,  r.within_bounds ? 1 : 0};
    }
    return NL_OK;
  });
}

}  // extern "C"
