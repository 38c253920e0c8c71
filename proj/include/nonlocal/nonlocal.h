/* C API for the nonlocal stiffness / substructuring library.
 *
 * All functions returning int use 0 for success and a nonzero status code
 * otherwise; nl_error_message() returns a thread-local description of the
 * most recent failure. Handles are opaque and freed with the matching
 * nl_*_free function.
 */
#ifndef NONLOCAL_NONLOCAL_H
#define NONLOCAL_NONLOCAL_H

#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

enum {
  NL_OK = 0,
  NL_ERR_INVALID_ARGUMENT = 1,
  NL_ERR_RUNTIME = 2,
  NL_ERR_IO = 3
};

typedef struct nl_grid nl_grid;
typedef struct nl_kernel nl_kernel;
typedef struct nl_matrix nl_matrix;
typedef struct nl_partition nl_partition;

const char* nl_version(void);
/* Thread-local message for the most recent failed call. */
const char* nl_error_message(void);

/* ---- grid ----
 * layout: "cell" (element midpoints, optional ghost collar for dirichlet)
 *         or "node" (lattice nodes with clipped boundary cells, neumann only).
 */
int nl_grid_create(int dim, int n, double delta, const char* bc,
                   const char* layout, nl_grid** out);
void nl_grid_free(nl_grid* g);
double nl_grid_h(const nl_grid* g);
int64_t nl_grid_num_unknowns(const nl_grid* g);
int nl_grid_ghost_layers(const nl_grid* g);
int64_t nl_grid_total_elements(const nl_grid* g);
/* Center of element `id` written to x[0..dim-1]. */
int nl_grid_element_center(const nl_grid* g, int64_t id, double* x);
/* Neighbor ids within `delta` by center distance, ascending. Returns the
 * total neighbor count; at most `cap` ids are written. norm: "euclidean" or
 * "max". */
int64_t nl_grid_neighbors_within(const nl_grid* g, int64_t id, double delta,
                                 const char* norm, int64_t* out, int64_t cap);

/* ---- kernel ----
 * variant: "canonical" (delta-ball indicator) or "scaled1d"
 * (delta^-3 times the indicator).
 */
int nl_kernel_create(const char* variant, double delta, nl_kernel** out);
/* profile(r, ctx) must be bounded on [0, delta]; kernel value is
 * scale * profile(r) inside the support. */
int nl_kernel_create_custom(double delta, double scale,
                            double (*profile)(double r, void* ctx), void* ctx,
                            nl_kernel** out);
void nl_kernel_free(nl_kernel* k);
int nl_kernel_eval(const nl_kernel* k, const double* x, const double* y,
                   int dim, double* out);

/* ---- assembly ----
 * quadrature: "midpoint", "subdiv:<q>", or "exact".
 * workers <= 0 selects the available parallelism; the matrix is identical
 * for every worker count.
 */
int nl_assemble(const nl_grid* g, const nl_kernel* k, const char* quadrature,
                const char* norm, int workers, nl_matrix** out);

int64_t nl_matrix_order(const nl_matrix* m);
/* Stored entries of the lower triangle including the diagonal. */
int64_t nl_matrix_nnz(const nl_matrix* m);
int nl_matrix_entry(const nl_matrix* m, int64_t i, int64_t j, double* out);
/* y = M u; u and y hold order() doubles. */
int nl_matrix_apply(const nl_matrix* m, const double* u, double* y);
int nl_matrix_export_mm(const nl_matrix* m, const char* path);
int nl_matrix_import_mm(const char* path, nl_matrix** out);
void nl_matrix_free(nl_matrix* m);

/* ---- spectrum ---- */
typedef struct {
  double lambda_min_nonzero;
  double lambda_max;
  double kappa_eff;
  int64_t null_dim;
  int iterations;
  double residual;
  char method[16]; /* "dense" or "lanczos" */
} nl_spectrum_report;

/* method: "auto", "dense", or "lanczos"; null_tol_rel <= 0 and
 * dense_threshold <= 0 select the defaults (1e-10, 4000). */
int nl_spectrum(const nl_matrix* m, double null_tol_rel,
                int64_t dense_threshold, const char* method, unsigned seed,
                nl_spectrum_report* out);
int nl_rayleigh_quotient(const nl_matrix* m, const double* u, int64_t len,
                         double mass_scale, double* out);

/* ---- two-domain substructuring ---- */
int nl_partition_create(const nl_grid* g, double delta, nl_partition** out);
void nl_partition_free(nl_partition* p);
/* which: 0 -> I1, 1 -> I2, 2 -> IGamma. */
int64_t nl_partition_size(const nl_partition* p, int which);
double nl_partition_width(const nl_partition* p);

/* Interface Schur complement S = Kgg - sum_i Kgi Kii^-1 Kig as a matrix over
 * the interface unknowns. */
int nl_schur_complement(const nl_matrix* m, const nl_partition* p,
                        nl_matrix** out);
/* Solves M u = f through the interface system; Neumann data is projected to
 * mean zero and the returned u has zero mean. */
int nl_solve_substructured(const nl_matrix* m, const nl_partition* p,
                           const double* f, double* u);
/* Monolithic pseudo-inverse reference solve, same canonicalization. */
int nl_solve_monolithic(const nl_matrix* m, const double* f, double* u);
/* r[0], r[1], r[2] = inf-norms of (M u - f) on I1, I2, IGamma. */
int nl_residual_report(const nl_matrix* m, const nl_partition* p,
                       const double* f, const double* u, double r[3]);

/* ---- analysis ---- */
/* Least squares on (log x, log y). */
int nl_fit_power_law(const double* xs, const double* ys, int count,
                     double* exponent, double* log_prefactor,
                     double* r_squared);

/* p-energy by midpoint quadrature; half != 0 applies the 1/2 factor of the
 * symmetric quadratic form. */
int nl_energy_p(const nl_grid* g, const nl_kernel* k,
                double (*u)(const double* x, int dim, void* ctx), void* ctx,
                double p, int half, double* out);

/* Scaled-energy convergence to the gradient seminorm on [0,1]; writes one
 * row per delta. slope/r_squared receive the fit of |error| against delta. */
int nl_local_limit(double (*u)(double x, void* ctx),
                   double (*du)(double x, void* ctx), void* ctx,
                   const double* deltas, int count, int n, double* scaled,
                   double* local, double* errors, double* slope,
                   double* r_squared);

typedef struct {
  int index;
  double area;
  double area_certain;
  double area_possible;
  double bound_in;
  double bound_out;
  int full;
  int within_bounds;
} nl_strip_row;

/* shape: "unit_square" or "unit_disk". Returns band rows (up to cap) and
 * the total band count through *count. all_within reports whether every
 * full band passed the annulus bound check. */
int nl_strips(const char* shape, double delta, int m, int64_t resolution,
              int workers, nl_strip_row* rows, int64_t cap, int64_t* count,
              double* width, int* all_within);

#ifdef __cplusplus
}
#endif

#endif
