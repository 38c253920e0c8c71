// Command-line driver for the nonlocal stiffness / substructuring library.
// Links only the public C API.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "nonlocal/nonlocal.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CliError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] void fail(const std::string& msg) { throw CliError(msg); }

void check(int rc, const char* what) {
  if (rc != NL_OK) {
    fail(std::string(what) + ": " + nl_error_message());
  }
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.5e", v);
  return buf;
}

struct GridHandle {
  nl_grid* p = nullptr;
  ~GridHandle() { nl_grid_free(p); }
};
struct KernelHandle {
  nl_kernel* p = nullptr;
  ~KernelHandle() { nl_kernel_free(p); }
};
struct MatrixHandle {
  nl_matrix* p = nullptr;
  ~MatrixHandle() { nl_matrix_free(p); }
};
struct PartitionHandle {
  nl_partition* p = nullptr;
  ~PartitionHandle() { nl_partition_free(p); }
};

struct Config {
  int dim = 1;
  std::vector<int> ns{20};
  std::vector<double> deltas{0.3};
  std::string bc = "neumann";
  std::string kernel = "canonical";
  std::string quadrature = "midpoint";
  std::string layout = "cell";
  std::string norm = "euclidean";
  std::string target = "stiffness";
  std::string out;
  std::string export_matrix;
  std::string shape = "unit_square";
  std::string method = "auto";
  int m = 1;
  long long resolution = 2000;
  unsigned seed = 12345;
  int workers = 0;
  int local_n = 4000;
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) fail("out: cannot open '" + path + "' for writing");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void require_single(const std::vector<int>& ns, const char* flag) {
  if (ns.size() != 1) {
    fail(std::string(flag) + ": exactly one value expected, got " +
         std::to_string(ns.size()));
  }
}

void require_single(const std::vector<double>& ds, const char* flag) {
  if (ds.size() != 1) {
    fail(std::string(flag) + ": exactly one value expected, got " +
         std::to_string(ds.size()));
  }
}

struct Assembled {
  GridHandle grid;
  KernelHandle kernel;
  MatrixHandle matrix;
};

void assemble_one(const Config& cfg, int n, double delta, int workers,
                  Assembled& out) {
  check(nl_grid_create(cfg.dim, n, delta, cfg.bc.c_str(), cfg.layout.c_str(),
                       &out.grid.p),
        "grid");
  check(nl_kernel_create(cfg.kernel.c_str(), delta, &out.kernel.p), "kernel");
  check(nl_assemble(out.grid.p, out.kernel.p, cfg.quadrature.c_str(),
                    cfg.norm.c_str(), workers, &out.matrix.p),
        "assemble");
}

struct PointResult {
  double h = 0.0;
  double w_actual = -1.0;  // < 0: not applicable
  long long n_gamma = -1;
  nl_spectrum_report rep{};
};

PointResult run_point(const Config& cfg, int n, double delta) {
  Assembled a;
  assemble_one(cfg, n, delta, 1, a);
  PointResult r;
  r.h = nl_grid_h(a.grid.p);
  if (cfg.target == "schur") {
    PartitionHandle part;
    check(nl_partition_create(a.grid.p, delta, &part.p), "partition");
    MatrixHandle schur;
    check(nl_schur_complement(a.matrix.p, part.p, &schur.p), "schur");
    r.w_actual = nl_partition_width(part.p);
    r.n_gamma = nl_partition_size(part.p, 2);
    check(nl_spectrum(schur.p, 0.0, 0, cfg.method.c_str(), cfg.seed, &r.rep),
          "spectrum");
  } else if (cfg.target == "stiffness") {
    check(nl_spectrum(a.matrix.p, 0.0, 0, cfg.method.c_str(), cfg.seed,
                      &r.rep),
          "spectrum");
  } else {
    fail("target: expected 'stiffness' or 'schur', got '" + cfg.target + "'");
  }
  return r;
}

void emit_sweep_header(std::ostream& os) {
  os << "dim,n,h,delta,bc,kernel,quadrature,norm,layout,target,w_actual,"
        "n_gamma,lambda_min,lambda_max,kappa,null_dim,method\n";
}

void emit_sweep_row(std::ostream& os, const Config& cfg, int n, double delta,
                    const PointResult& r) {
  os << cfg.dim << "," << n << "," << fmt(r.h) << "," << fmt(delta) << ","
     << cfg.bc << "," << cfg.kernel << "," << cfg.quadrature << "," << cfg.norm
     << "," << cfg.layout << "," << cfg.target << ",";
  if (r.w_actual >= 0.0) os << fmt(r.w_actual);
  os << ",";
  if (r.n_gamma >= 0) os << r.n_gamma;
  os << "," << fmt(r.rep.lambda_min_nonzero) << "," << fmt(r.rep.lambda_max)
     << "," << fmt(r.rep.kappa_eff) << "," << r.rep.null_dim << ","
     << r.rep.method << "\n";
}

// Runs one job per sweep point on a bounded pool; rows come out in input
// order whatever the worker count.
template <typename Job>
void run_pool(int njobs, int workers, Job&& job) {
  if (workers <= 0) {
    workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }
  workers = std::min(workers, std::max(njobs, 1));
  if (workers == 1) {
    for (int i = 0; i < njobs; ++i) job(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  for (int t = 0; t < workers; ++t) {
    pool.emplace_back([&, t]() {
      try {
        for (int i = t; i < njobs; i += workers) job(i);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

int cmd_version(const Config&) {
  std::cout << nl_version() << "\n";
  return kExitOk;
}

int cmd_assemble(const Config& cfg) {
  require_single(cfg.ns, "--n");
  require_single(cfg.deltas, "--delta");
  Assembled a;
  assemble_one(cfg, cfg.ns[0], cfg.deltas[0], cfg.workers, a);
  if (!cfg.export_matrix.empty()) {
    check(nl_matrix_export_mm(a.matrix.p, cfg.export_matrix.c_str()),
          "export-matrix");
  }
  Output out(cfg.out);
  out.stream() << "dim,n,h,delta,bc,kernel,quadrature,norm,layout,order,nnz\n"
               << cfg.dim << "," << cfg.ns[0] << "," << fmt(nl_grid_h(a.grid.p))
               << "," << fmt(cfg.deltas[0]) << "," << cfg.bc << ","
               << cfg.kernel << "," << cfg.quadrature << "," << cfg.norm << ","
               << cfg.layout << "," << nl_matrix_order(a.matrix.p) << ","
               << nl_matrix_nnz(a.matrix.p) << "\n";
  return kExitOk;
}

int cmd_spectrum(const Config& cfg) {
  require_single(cfg.ns, "--n");
  require_single(cfg.deltas, "--delta");
  Config c = cfg;
  c.target = "stiffness";
  const PointResult r = run_point(c, cfg.ns[0], cfg.deltas[0]);
  Output out(cfg.out);
  out.stream() << "dim,n,h,delta,bc,lambda_min,lambda_max,kappa,null_dim,"
                  "method\n"
               << cfg.dim << "," << cfg.ns[0] << "," << fmt(r.h) << ","
               << fmt(cfg.deltas[0]) << "," << cfg.bc << ","
               << fmt(r.rep.lambda_min_nonzero) << "," << fmt(r.rep.lambda_max)
               << "," << fmt(r.rep.kappa_eff) << "," << r.rep.null_dim << ","
               << r.rep.method << "\n";
  return kExitOk;
}

int cmd_sweep_h(const Config& cfg) {
  require_single(cfg.deltas, "--delta");
  std::vector<PointResult> results(cfg.ns.size());
  run_pool(static_cast<int>(cfg.ns.size()), cfg.workers, [&](int i) {
    results[static_cast<std::size_t>(i)] =
        run_point(cfg, cfg.ns[static_cast<std::size_t>(i)], cfg.deltas[0]);
  });
  Output out(cfg.out);
  emit_sweep_header(out.stream());
  for (std::size_t i = 0; i < cfg.ns.size(); ++i) {
    emit_sweep_row(out.stream(), cfg, cfg.ns[i], cfg.deltas[0], results[i]);
  }
  return kExitOk;
}

int cmd_sweep_delta(const Config& cfg) {
  require_single(cfg.ns, "--n");
  std::vector<PointResult> results(cfg.deltas.size());
  run_pool(static_cast<int>(cfg.deltas.size()), cfg.workers, [&](int i) {
    results[static_cast<std::size_t>(i)] =
        run_point(cfg, cfg.ns[0], cfg.deltas[static_cast<std::size_t>(i)]);
  });
  Output out(cfg.out);
  emit_sweep_header(out.stream());
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    emit_sweep_row(out.stream(), cfg, cfg.ns[0], cfg.deltas[i], results[i]);
  }
  return kExitOk;
}

int cmd_schur(const Config& cfg) {
  require_single(cfg.ns, "--n");
  require_single(cfg.deltas, "--delta");
  Config c = cfg;
  c.target = "schur";
  const PointResult r = run_point(c, cfg.ns[0], cfg.deltas[0]);
  Output out(cfg.out);
  out.stream() << "dim,n,h,delta,w_actual,n_gamma,lambda_min,lambda_max,"
                  "kappa\n"
               << cfg.dim << "," << cfg.ns[0] << "," << fmt(r.h) << ","
               << fmt(cfg.deltas[0]) << "," << fmt(r.w_actual) << ","
               << r.n_gamma << "," << fmt(r.rep.lambda_min_nonzero) << ","
               << fmt(r.rep.lambda_max) << "," << fmt(r.rep.kappa_eff) << "\n";
  return kExitOk;
}

int cmd_equivalence(const Config& cfg) {
  require_single(cfg.ns, "--n");
  require_single(cfg.deltas, "--delta");
  Assembled a;
  assemble_one(cfg, cfg.ns[0], cfg.deltas[0], cfg.workers, a);
  PartitionHandle part;
  check(nl_partition_create(a.grid.p, cfg.deltas[0], &part.p), "partition");

  const int64_t order = nl_matrix_order(a.matrix.p);
  std::mt19937 rng(cfg.seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> w(static_cast<std::size_t>(order));
  for (auto& v : w) v = dist(rng);
  std::vector<double> f(w.size());
  check(nl_matrix_apply(a.matrix.p, w.data(), f.data()), "apply");

  std::vector<double> u_sub(w.size()), u_mono(w.size());
  check(nl_solve_substructured(a.matrix.p, part.p, f.data(), u_sub.data()),
        "solve");
  check(nl_solve_monolithic(a.matrix.p, f.data(), u_mono.data()), "solve");
  double r[3] = {0, 0, 0};
  check(nl_residual_report(a.matrix.p, part.p, f.data(), u_sub.data(), r),
        "equivalence");
  double diff = 0.0, scale = 0.0, fnorm = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    diff = std::max(diff, std::abs(u_sub[i] - u_mono[i]));
    scale = std::max(scale, std::abs(u_mono[i]));
    fnorm = std::max(fnorm, std::abs(f[i]));
  }
  Output out(cfg.out);
  out.stream() << "dim,n,h,delta,w_actual,rhs_seed,f_inf_norm,r1,r2,rgamma,"
                  "trace_gap,solution_diff_rel\n"
               << cfg.dim << "," << cfg.ns[0] << "," << fmt(nl_grid_h(a.grid.p))
               << "," << fmt(cfg.deltas[0]) << ","
               << fmt(nl_partition_width(part.p)) << "," << cfg.seed << ","
               << fmt(fnorm) << "," << fmt(r[0]) << "," << fmt(r[1]) << ","
               << fmt(r[2]) << "," << fmt(0.0) << ","
               << fmt(scale > 0.0 ? diff / scale : diff) << "\n";
  return kExitOk;
}

double sin_pi(double x, void*) { return std::sin(M_PI * x); }
double dsin_pi(double x, void*) { return M_PI * std::cos(M_PI * x); }

int cmd_local_limit(const Config& cfg) {
  if (cfg.deltas.size() < 3) fail("--delta: need at least 3 values");
  std::vector<double> scaled(cfg.deltas.size()), local(cfg.deltas.size()),
      errs(cfg.deltas.size());
  double slope = 0.0, r2 = 0.0;
  check(nl_local_limit(sin_pi, dsin_pi, nullptr, cfg.deltas.data(),
                       static_cast<int>(cfg.deltas.size()), cfg.local_n,
                       scaled.data(), local.data(), errs.data(), &slope, &r2),
        "local-limit");
  Output out(cfg.out);
  out.stream() << "n,delta,scaled_energy,local_energy,error,slope,r_squared\n";
  for (std::size_t i = 0; i < cfg.deltas.size(); ++i) {
    out.stream() << cfg.local_n << "," << fmt(cfg.deltas[i]) << ","
                 << fmt(scaled[i]) << "," << fmt(local[i]) << ","
                 << fmt(errs[i]) << "," << fmt(slope) << "," << fmt(r2)
                 << "\n";
  }
  return kExitOk;
}

int cmd_poincare_fit(const Config& cfg) {
  require_single(cfg.ns, "--n");
  if (cfg.deltas.size() < 3) fail("--delta: need at least 3 values");
  std::vector<PointResult> results(cfg.deltas.size());
  Config c = cfg;
  c.target = "stiffness";
  run_pool(static_cast<int>(cfg.deltas.size()), cfg.workers, [&](int i) {
    results[static_cast<std::size_t>(i)] =
        run_point(c, cfg.ns[0], cfg.deltas[static_cast<std::size_t>(i)]);
  });
  std::vector<double> lmins(cfg.deltas.size());
  for (std::size_t i = 0; i < results.size(); ++i) {
    lmins[i] = results[i].rep.lambda_min_nonzero;
  }
  double expo = 0.0, pref = 0.0, r2 = 0.0;
  check(nl_fit_power_law(cfg.deltas.data(), lmins.data(),
                         static_cast<int>(cfg.deltas.size()), &expo, &pref,
                         &r2),
        "fit");
  Output out(cfg.out);
  out.stream() << "dim,n,kernel,quadrature,norm,layout,num_points,exponent,"
                  "log_prefactor,r_squared\n"
               << cfg.dim << "," << cfg.ns[0] << "," << cfg.kernel << ","
               << cfg.quadrature << "," << cfg.norm << "," << cfg.layout << ","
               << cfg.deltas.size() << "," << fmt(expo) << "," << fmt(pref)
               << "," << fmt(r2) << "\n";
  return kExitOk;
}

int cmd_strips(const Config& cfg) {
  require_single(cfg.deltas, "--delta");
  int64_t count = 0;
  double width = 0.0;
  int all_within = 0;
  check(nl_strips(cfg.shape.c_str(), cfg.deltas[0], cfg.m, cfg.resolution,
                  cfg.workers, nullptr, 0, &count, &width, &all_within),
        "strips");
  std::vector<nl_strip_row> rows(static_cast<std::size_t>(count));
  check(nl_strips(cfg.shape.c_str(), cfg.deltas[0], cfg.m, cfg.resolution,
                  cfg.workers, rows.data(), count, &count, &width,
                  &all_within),
        "strips");
  Output out(cfg.out);
  out.stream() << "shape,delta,m,resolution,width,strip_index,area,"
                  "area_certain,area_possible,bound_in,bound_out,full,"
                  "within_bounds\n";
  for (const auto& r : rows) {
    out.stream() << cfg.shape << "," << fmt(cfg.deltas[0]) << "," << cfg.m
                 << "," << cfg.resolution << "," << fmt(width) << ","
                 << r.index << "," << fmt(r.area) << "," << fmt(r.area_certain)
                 << "," << fmt(r.area_possible) << "," << fmt(r.bound_in)
                 << "," << fmt(r.bound_out) << "," << r.full << ","
                 << r.within_bounds << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonlocal horizon-kernel stiffness, spectrum, and "
               "substructuring experiments"};
  app.require_subcommand(1);
  app.set_config("--config");

  Config cfg;
  if (const char* env = std::getenv("NONLOCAL_WORKERS")) {
    try {
      cfg.workers = std::stoi(env);
    } catch (const std::exception&) {
      std::cerr << "error: NONLOCAL_WORKERS: not an integer: '" << env
                << "'\n";
      return kExitUsage;
    }
  }

  const auto add_common = [&](CLI::App* sub, bool with_target) {
    sub->add_option("--dim", cfg.dim, "Spatial dimension (1, 2, or 3)");
    sub->add_option("--n", cfg.ns, "Elements per side (list allowed)")
        ->delimiter(',');
    sub->add_option("--delta", cfg.deltas, "Horizon radius (list allowed)")
        ->delimiter(',');
    sub->add_option("--bc", cfg.bc, "Boundary handling: neumann|dirichlet");
    sub->add_option("--kernel", cfg.kernel, "Kernel: canonical|scaled1d");
    sub->add_option("--quadrature", cfg.quadrature,
                    "Pair integrals: midpoint|subdiv:<q>|exact");
    sub->add_option("--layout", cfg.layout, "Unknown placement: cell|node");
    sub->add_option("--norm", cfg.norm, "Ball norm: euclidean|max");
    sub->add_option("--method", cfg.method,
                    "Eigen solver path: auto|dense|lanczos");
    sub->add_option("--seed", cfg.seed, "Deterministic seed");
    sub->add_option("--workers", cfg.workers,
                    "Worker threads (default: NONLOCAL_WORKERS or auto)");
    sub->add_option("--out", cfg.out, "Write CSV here instead of stdout");
    if (with_target) {
      sub->add_option("--target", cfg.target,
                      "Spectrum target: stiffness|schur");
    }
  };

  int (*handler)(const Config&) = nullptr;
  const auto bind = [&](CLI::App* sub, int (*fn)(const Config&)) {
    sub->callback([&handler, fn]() { handler = fn; });
  };

  auto* s_assemble =
      app.add_subcommand("assemble", "Assemble the stiffness matrix");
  add_common(s_assemble, false);
  s_assemble->add_option("--export-matrix", cfg.export_matrix,
                         "Write the matrix in Matrix Market format");
  bind(s_assemble, cmd_assemble);

  auto* s_spectrum =
      app.add_subcommand("spectrum", "Extreme eigenvalues of the stiffness");
  add_common(s_spectrum, false);
  bind(s_spectrum, cmd_spectrum);

  auto* s_sweep_h =
      app.add_subcommand("sweep-h", "Fix delta, iterate over mesh sizes");
  add_common(s_sweep_h, true);
  bind(s_sweep_h, cmd_sweep_h);

  auto* s_sweep_d =
      app.add_subcommand("sweep-delta", "Fix n, iterate over horizons");
  add_common(s_sweep_d, true);
  bind(s_sweep_d, cmd_sweep_delta);

  auto* s_schur = app.add_subcommand(
      "schur", "Interface Schur complement conditioning");
  add_common(s_schur, false);
  bind(s_schur, cmd_schur);

  auto* s_equiv = app.add_subcommand(
      "equivalence", "Substructured vs monolithic solve residuals");
  add_common(s_equiv, false);
  bind(s_equiv, cmd_equivalence);

  auto* s_local = app.add_subcommand(
      "local-limit", "Scaled-energy convergence to the gradient seminorm");
  add_common(s_local, false);
  s_local->add_option("--local-n", cfg.local_n,
                      "1D sampling resolution for the energy sums");
  bind(s_local, cmd_local_limit);

  auto* s_poincare = app.add_subcommand(
      "poincare-fit", "Exponent of the smallest nonzero eigenvalue in delta");
  add_common(s_poincare, false);
  bind(s_poincare, cmd_poincare_fit);

  auto* s_strips = app.add_subcommand(
      "strips", "Boundary-distance bands against annulus area bounds");
  add_common(s_strips, false);
  s_strips->add_option("--shape", cfg.shape, "unit_square|unit_disk");
  s_strips->add_option("--m", cfg.m, "Band width exponent: delta^m / 2");
  s_strips->add_option("--resolution", cfg.resolution,
                       "Measuring subgrid cells per side");
  bind(s_strips, cmd_strips);

  auto* s_version = app.add_subcommand("version", "Print the version");
  bind(s_version, cmd_version);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints the message
    return kExitUsage;
  }

  try {
    return handler ? handler(cfg) : kExitUsage;
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
