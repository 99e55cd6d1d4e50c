#include "krein/workflow.hpp"

#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>

#include "krein/errors.hpp"
#include "krein/report.hpp"

namespace krein {

namespace {

using cd = std::complex<double>;
using ojson = nlohmann::ordered_json;

Potential with_amplitude(const Potential& p, double s) { return s == 1.0 ? p : Potential::scaled(p, s); }

double fd_branch(const Potential& p, const ProblemParams& params, const Grid& g, int branch) {
  return eigenvalues_by_index(assemble_h(p, params, g), branch, branch)(0);
}

double fourier_branch(const Potential& p, const ProblemParams& params, const FourierGrid& fg, int branch) {
  const KreinOperator op = assemble_l(p, params, fg);
  if (branch >= op.size()) throw std::invalid_argument("fourier branch out of range");
  return hermitian_eigenvalues(op.matrix)(branch);
}

// Root of f in [lo, hi] given a sign change; returns the bracket end with the
// smaller residual.
std::pair<double, double> bracketed_root(const std::function<double(double)>& f, double lo, double hi, double flo,
                                         double fhi) {
  if (flo == 0.0) return {lo, 0.0};
  if (fhi == 0.0) return {hi, 0.0};
  std::uintmax_t iters = 200;
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                        boost::math::tools::eps_tolerance<double>(50), iters);
  const double fa = f(a), fb = f(b);
  return std::abs(fa) <= std::abs(fb) ? std::pair{a, fa} : std::pair{b, fb};
}

double tune_amplitude(const std::function<double(double)>& f, double window, int branch, const char* who) {
  const double lo = 1.0 - window, hi = 1.0 + window;
  const double flo = f(lo), fhi = f(hi);
  if (flo * fhi > 0.0)
    throw NumericalError(std::string(who) + ": eigenvalue branch " + std::to_string(branch) +
                         " does not cross zero for amplitude factors in [" + format_double(lo) + ", " +
                         format_double(hi) + "]");
  return bracketed_root(f, lo, hi, flo, fhi).first;
}

ojson optional_json(const std::optional<double>& x) { return x ? ojson(*x) : ojson(); }
ojson optional_json(const std::optional<int>& x) { return x ? ojson(*x) : ojson(); }

ojson below(const Eigen::VectorXd& eigenvalues, double threshold) {
  ojson a = ojson::array();
  for (Eigen::Index i = 0; i < eigenvalues.size() && eigenvalues(i) < threshold; ++i) a.push_back(eigenvalues(i));
  return a;
}

ojson index_json(const IndexReport& r) {
  ojson j;
  j["kappa_minus"] = r.kappa_minus;
  j["kernel_dim"] = r.kernel_dim;
  j["d_v"] = optional_json(r.d_v);
  j["kappa_minus_d"] = optional_json(r.kappa_minus_d);
  j["kappa_ham"] = optional_json(r.kappa_ham);
  j["verdict"] = to_string(r.verdict);
  j["notes"] = r.notes;
  return j;
}

ojson fd_json(const FdAnalysis& fd, const ProblemParams& params) {
  ojson j;
  j["half_width"] = fd.grid.half_width();
  j["n_interior"] = fd.grid.size();
  j["spacing"] = fd.grid.spacing();
  j["amplitude_factor"] = fd.amplitude;
  j["eigenvalues_below_threshold"] = below(fd.spectrum.eigenvalues, params.threshold());
  j["kappa_minus"] = fd.kappa_minus;
  j["kernel"] = {{"dimension", fd.kernel.dimension},
                 {"eigenvalue", fd.kernel.dimension ? ojson(fd.kernel.raw_eigenvalue) : ojson()},
                 {"window", fd.spectrum.kernel_window()}};
  j["d_v"] = optional_json(fd.d_v);
  j["degeneracy_tol"] = fd.degeneracy_tol;
  j["jordan_chain_length"] = optional_json(fd.chain_length);
  return j;
}

ojson fourier_json(const FourierAnalysis& fa, const ProblemParams& params) {
  ojson j;
  j["half_period"] = fa.grid.half_period();
  j["n_modes"] = fa.grid.n_modes();
  j["retained_modes"] = fa.grid.size();
  j["amplitude_factor"] = fa.amplitude;
  j["zero_mode_diagonal"] = fa.op.zero_mode_diagonal;
  j["eigenvalues_below_threshold"] = below(fa.spectrum.eigenvalues, params.threshold());
  j["kappa_minus"] = fa.kappa_minus;
  j["kernel"] = {{"dimension", fa.kernel.dimension},
                 {"eigenvalue", fa.kernel.dimension ? ojson(fa.kernel.raw_eigenvalue) : ojson()},
                 {"window", fa.spectrum.kernel_window()}};
  j["d_krein"] = optional_json(fa.d_krein);
  j["krein_admissibility"] = optional_json(fa.admissibility);
  return j;
}

ojson bounds_json(const BoundsReport& b) {
  ojson j;
  j["bargmann"] = optional_json(b.bargmann);
  j["birman_schwinger"] = b.birman_schwinger;
  j["kappa_minus_observed"] = b.kappa_minus_observed;
  j["kernel_dim_observed"] = b.kernel_dim_observed;
  j["bargmann_holds"] = b.bargmann_holds();
  j["birman_schwinger_holds"] = b.birman_schwinger_holds();
  j["note"] = "integrals truncated to the grid interval";
  return j;
}

ojson pencil_json(const PencilAnalysis& pa, const ProblemParams& params) {
  ojson j;
  j["exactified"] = pa.exactified;
  j["dimension"] = pa.spectrum.eigenvalues.size();
  const auto& c = pa.classes.counts;
  j["counts"] = {{"kappa_c_plus", c.kappa_c_plus},
                 {"kappa_imag_pos", c.kappa_imag_pos},
                 {"kappa_quadrant_I", c.kappa_quadrant_I},
                 {"kappa_quadrant_II", c.kappa_quadrant_II},
                 {"kappa_real_pos_neg_krein", c.kappa_real_pos_neg_krein},
                 {"kappa_ham_direct", c.kappa_ham_direct},
                 {"near_zero", c.near_zero}};
  // nonreal, near-zero and in-gap eigenvalues; the rest is continuum
  std::vector<const ClassifiedEigenvalue*> shown;
  for (const auto& e : pa.classes.eigenvalues) {
    const bool real = e.cls == EigenClass::RealPositive || e.cls == EigenClass::RealNegative;
    if (!real || std::abs(e.z.real()) < params.threshold()) shown.push_back(&e);
  }
  std::sort(shown.begin(), shown.end(), [](const auto* a, const auto* b) {
    return a->z.imag() != b->z.imag() ? a->z.imag() > b->z.imag() : a->z.real() < b->z.real();
  });
  ojson list = ojson::array();
  for (const auto* e : shown) {
    ojson item;
    item["re"] = e->z.real();
    item["im"] = e->z.imag();
    item["class"] = to_string(e->cls);
    item["krein_negative"] = e->krein_negative ? ojson(*e->krein_negative) : ojson();
    item["residual"] = e->residual;
    list.push_back(item);
  }
  j["discrete_eigenvalues"] = list;
  j["symmetry"] = {{"conjugation_mismatch", pa.symmetry.conjugation_mismatch},
                   {"reflection_mismatch", pa.symmetry.reflection_mismatch},
                   {"excluded_near_zero", pa.symmetry.excluded_near_zero}};
  j["min_l_eigenvalue"] = pa.min_l_eigenvalue;
  j["diagnostics"] = pa.classes.diagnostics;
  return j;
}

class Stopwatch {
 public:
  void mark(const std::string& stage) {
    const auto now = std::chrono::steady_clock::now();
    times_[stage] = std::chrono::duration<double>(now - last_).count();
    last_ = now;
  }
  ojson to_json() const { return times_; }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
  ojson times_ = ojson::object();
};

CsvTable hermitian_table(const std::string& suffix, const Eigen::VectorXd& ev) {
  CsvTable t{suffix, {"index", "lambda"}, {}};
  for (Eigen::Index i = 0; i < ev.size(); ++i) t.rows.push_back({std::to_string(i), format_double(ev(i))});
  return t;
}

CsvTable pencil_table(const Classification& c) {
  CsvTable t{"_pencil.csv", {"index", "re", "im", "class"}, {}};
  for (std::size_t i = 0; i < c.eigenvalues.size(); ++i) {
    const auto& e = c.eigenvalues[i];
    t.rows.push_back({std::to_string(i), format_double(e.z.real()), format_double(e.z.imag()), to_string(e.cls)});
  }
  return t;
}

bool has_fault(const std::vector<Fault>& faults, Fault f) {
  return std::find(faults.begin(), faults.end(), f) != faults.end();
}

}  // namespace

int thread_cap() {
  if (const char* env = std::getenv("KREIN_INDEX_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<int>(std::min(v, 1024L));
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

double sharpen_fd(const Potential& p, const ProblemParams& params, const Grid& g, int branch, double window) {
  auto f = [&](double s) { return fd_branch(with_amplitude(p, s), params, g, branch); };
  return tune_amplitude(f, window, branch, "sharpen_fd");
}

double sharpen_fourier(const Potential& p, const ProblemParams& params, const FourierGrid& fg, int branch,
                       double window) {
  auto f = [&](double s) { return fourier_branch(with_amplitude(p, s), params, fg, branch); };
  return tune_amplitude(f, window, branch, "sharpen_fourier");
}

FdAnalysis analyze_fd(const Potential& p, const ProblemParams& params, const GridConfig& grid, const Tolerances& tol,
                      const std::optional<SharpenConfig>& sharpen, bool flip_dv_sign) {
  FdAnalysis fd(Grid(grid.half_width, grid.n_fd));
  if (sharpen) fd.amplitude = sharpen_fd(p, params, fd.grid, sharpen->branch, sharpen->window);
  const Potential pe = with_amplitude(p, fd.amplitude);
  fd.spectrum = eig_hermitian(assemble_h(pe, params, fd.grid), params, tol.kernel_tol);
  fd.kernel = detect_kernel(fd.spectrum);
  fd.kappa_minus = count_negative(fd.spectrum);
  fd.degeneracy_tol = tol.degeneracy_tol.value_or(0.0);
  if (fd.kernel.dimension == 1) {
    const SkewTridiag d = assemble_d(fd.grid);
    fd.d_v = compute_dv(fd.spectrum, fd.kernel, d);
    if (flip_dv_sign) fd.d_v = -*fd.d_v;
    if (!tol.degeneracy_tol) fd.degeneracy_tol = default_degeneracy_tol(fd.kernel, d, params);
    fd.chain_length = jordan_chain_at_zero(fd.spectrum, fd.kernel, d, 4).length();
  }
  fd.index = kappa_ham_formula(fd.kappa_minus, fd.kernel.dimension, fd.d_v, fd.degeneracy_tol);
  return fd;
}

FourierAnalysis analyze_fourier(const Potential& p, const ProblemParams& params, const GridConfig& grid,
                                const Tolerances& tol, const std::optional<SharpenConfig>& sharpen) {
  FourierAnalysis fa(FourierGrid(grid.half_width, grid.n_fourier));
  if (sharpen) fa.amplitude = sharpen_fourier(p, params, fa.grid, sharpen->branch, sharpen->window);
  fa.op = assemble_l(with_amplitude(p, fa.amplitude), params, fa.grid);
  fa.spectrum = eig_hermitian(fa.op.matrix, params, tol.kernel_tol);
  fa.kernel = detect_kernel(fa.spectrum);
  fa.kappa_minus = count_negative(fa.spectrum);
  if (fa.kernel.dimension == 1) {
    const SignatureDiag j = assemble_j(fa.grid);
    fa.admissibility = std::abs(j.signs.cast<cd>().cwiseProduct(fa.kernel.psi0).dot(fa.kernel.psi0));
    fa.d_krein = compute_d_krein(fa.spectrum, fa.kernel, j, fa.grid, fa.op);
  }
  return fa;
}

PencilAnalysis analyze_pencil(const FourierAnalysis& fa, const ProblemParams& params, const Tolerances& tol,
                              bool exactify, const std::vector<Fault>& faults) {
  PencilAnalysis pa;
  pa.exactified = exactify;
  const Eigen::MatrixXcd l = exactify ? kernel_exactify<cd>(fa.op.matrix, fa.spectrum) : fa.op.matrix;
  pa.min_l_eigenvalue = exactify ? exactify_spectrum(fa.spectrum).eigenvalues.minCoeff() : fa.spectrum.eigenvalues(0);
  SignatureDiag j = assemble_j(fa.grid);
  if (has_fault(faults, Fault::FlipSignature)) {
    for (Eigen::Index i = 0; i < j.size(); ++i)
      if (j.signs(i) > 0) {
        j.signs(i) = -1.0;
        break;
      }
  }
  Eigen::MatrixXcd a = assemble_pencil(l, j);
  if (has_fault(faults, Fault::ImaginaryShift)) a.diagonal().array() += cd(0.0, 0.1 * params.threshold());
  pa.spectrum = eig_general(a, true);
  pa.classes = classify_spectrum(pa.spectrum, l, params, tol.tol_class, tol.kernel_tol);
  pa.symmetry = check_spectral_symmetries(pa.spectrum, tol.kernel_tol * params.threshold());
  return pa;
}

SweepResult sweep_branch(const Potential& base, const ProblemParams& params, const Grid& g, const SweepConfig& sw,
                         int threads) {
  if (!(sw.s_min < sw.s_max) || sw.coarse_points < 2) throw std::invalid_argument("sweep_branch: bad range");
  if (sw.branch < 0 || sw.branch >= g.size()) throw std::invalid_argument("sweep_branch: branch out of range");
  SweepResult r;
  const auto n = static_cast<std::size_t>(sw.coarse_points);
  r.s_values.resize(n);
  r.branch_values.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    r.s_values[i] = sw.s_min + (sw.s_max - sw.s_min) * static_cast<double>(i) / static_cast<double>(n - 1);

  auto lambda = [&](double s) { return fd_branch(with_amplitude(base, s), params, g, sw.branch); };

  r.threads = std::max(1, std::min<int>(threads, static_cast<int>(n)));
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  for (int t = 0; t < r.threads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = static_cast<std::size_t>(t); i < n; i += static_cast<std::size_t>(r.threads))
          r.branch_values[i] = lambda(r.s_values[i]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  const double target = sw.bisection_tol * params.threshold();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double f0 = r.branch_values[i], f1 = r.branch_values[i + 1];
    const bool zero_here = f0 == 0.0 && (i == 0 || r.branch_values[i - 1] != 0.0);
    if (!(f0 * f1 < 0.0) && !zero_here) continue;
    Crossing c;
    std::tie(c.s, c.eigenvalue) = bracketed_root(lambda, r.s_values[i], r.s_values[i + 1], f0, f1);
    c.converged = std::abs(c.eigenvalue) <= target;
    const int lo = std::max(0, sw.branch - 1), hi = std::min(g.size() - 1, sw.branch + 1);
    const Eigen::VectorXd near = eigenvalues_by_index(assemble_h(with_amplitude(base, c.s), params, g), lo, hi);
    for (Eigen::Index k = 0; k + 1 < near.size(); ++k)
      if (near(k + 1) - near(k) < 1e-8) c.branch_gap_warning = true;
    r.crossings.push_back(c);
  }
  if (r.branch_values.back() == 0.0 && (n < 2 || r.branch_values[n - 2] != 0.0))
    r.crossings.push_back({r.s_values.back(), 0.0, true, false});
  return r;
}

std::vector<Check> validation_checks(const Potential& p, const ProblemParams& params, const Tolerances& tol,
                                     const FdAnalysis& fd, const FourierAnalysis& fa, const PencilAnalysis& pa,
                                     const BoundsReport& bounds) {
  std::vector<Check> checks;
  const auto& counts = pa.classes.counts;

  const IdentityCheck id = kappa_ham_direct_vs_formula(pa.classes, fd.index);
  checks.push_back({"index_identity", id.holds,
                    "direct " + std::to_string(id.direct) + ", formula " +
                        (id.formula ? std::to_string(*id.formula) : std::string("undefined")) +
                        (id.holds ? "" : "; " + id.detail)});

  checks.push_back({"pontryagin_bound", counts.kappa_c_plus <= fa.kappa_minus,
                    "kappa_c_plus " + std::to_string(counts.kappa_c_plus) + " <= kappa_minus(L) " +
                        std::to_string(fa.kappa_minus)});

  const double sym_limit = tol.symmetry_tol * params.threshold();
  checks.push_back({"spectral_symmetry", pa.symmetry.max_mismatch() <= sym_limit,
                    "conjugation " + format_double(pa.symmetry.conjugation_mismatch) + ", reflection " +
                        format_double(pa.symmetry.reflection_mismatch) + ", limit " + format_double(sym_limit)});

  if (fd.d_v && fa.d_krein) {
    const double rel = std::abs(*fa.d_krein - *fd.d_v) / std::abs(*fd.d_v);
    checks.push_back({"cross_formula", rel <= tol.cross_tol,
                      "D_V " + format_double(*fd.d_v) + ", D " + format_double(*fa.d_krein) + ", relative " +
                          format_double(rel)});
  } else if (fd.d_v || fa.d_krein) {
    checks.push_back({"cross_formula", false, "kernel present in only one discretization"});
  } else {
    checks.push_back({"cross_formula", true, "no kernel"});
  }

  checks.push_back({"kappa_minus_agreement", fd.kappa_minus == fa.kappa_minus,
                    "finite difference " + std::to_string(fd.kappa_minus) + ", Fourier " +
                        std::to_string(fa.kappa_minus)});
  checks.push_back({"kernel_agreement", fd.kernel.dimension == fa.kernel.dimension,
                    "finite difference " + std::to_string(fd.kernel.dimension) + ", Fourier " +
                        std::to_string(fa.kernel.dimension)});

  checks.push_back({"bounds", bounds.bargmann_holds() && bounds.birman_schwinger_holds(),
                    "Bargmann " + (bounds.bargmann ? format_double(*bounds.bargmann) : std::string("absent")) +
                        ", Birman-Schwinger " + format_double(bounds.birman_schwinger)});

  const bool expects_imaginary =
      std::find(fd.index.notes.begin(), fd.index.notes.end(), "at least one purely imaginary eigenvalue expected") !=
      fd.index.notes.end();
  if (expects_imaginary)
    checks.push_back({"imaginary_witness", counts.kappa_imag_pos >= 1,
                      std::to_string(counts.kappa_imag_pos) + " eigenvalues on the positive imaginary axis"});

  if (p.is_trivially_zero()) {
    const double eps = 1e-6 * params.threshold();
    int in_gap = 0;
    for (const auto& e : pa.classes.eigenvalues)
      if (std::abs(e.z) < params.threshold() - eps) ++in_gap;
    const bool bottom = std::abs(pa.min_l_eigenvalue - params.threshold()) <= 0.01 * params.threshold();
    checks.push_back({"free_gap", in_gap == 0 && bottom,
                      std::to_string(in_gap) + " eigenvalues inside the gap; min L eigenvalue " +
                          format_double(pa.min_l_eigenvalue)});
  }
  return checks;
}

RunOutcome run(const RunConfig& cfg) {
  validate_config(cfg);
  Stopwatch clock;
  RunOutcome out;
  ojson& rep = out.report;
  rep["tool"] = "krein_index";
  rep["config"] = cfg.to_json();

  const Potential& p = cfg.potential;
  const ProblemParams& params = cfg.params;
  const double X = cfg.grid.half_width;

  if (cfg.mode == Mode::Sweep) {
    const Grid g(X, cfg.grid.n_fd);
    const SweepResult sr = sweep_branch(p, params, g, *cfg.sweep, thread_cap());
    clock.mark("sweep");
    ojson sj;
    sj["branch"] = cfg.sweep->branch;
    sj["s_values"] = sr.s_values;
    sj["branch_values"] = sr.branch_values;
    ojson list = ojson::array();
    for (const Crossing& c : sr.crossings) {
      ojson cj;
      cj["s"] = c.s;
      cj["eigenvalue"] = c.eigenvalue;
      cj["converged"] = c.converged;
      cj["branch_gap_warning"] = c.branch_gap_warning;
      const Potential ps = Potential::scaled(p, c.s);
      const FdAnalysis fd = analyze_fd(ps, params, cfg.grid, cfg.tol, std::nullopt);
      cj["fd"] = fd_json(fd, params);
      cj["index"] = index_json(fd.index);
      try {
        const FourierAnalysis fa = analyze_fourier(ps, params, cfg.grid, cfg.tol, std::nullopt);
        cj["fourier"] = fourier_json(fa, params);
      } catch (const NumericalError& e) {
        cj["fourier"] = {{"error", e.what()}};
      }
      list.push_back(cj);
    }
    sj["crossings"] = list;
    sj["crossing_count"] = sr.crossings.size();
    if (sr.crossings.empty()) sj["note"] = "no sign change of the tracked eigenvalue in the range";
    rep["sweep"] = sj;
    clock.mark("crossings");
    out.tables.push_back(
        {"_sweep.csv", {"s", "lambda"}, {}});
    for (std::size_t i = 0; i < sr.s_values.size(); ++i)
      out.tables.back().rows.push_back({format_double(sr.s_values[i]), format_double(sr.branch_values[i])});
    if (cfg.timing) rep["timing_seconds"] = clock.to_json();
    return out;
  }

  rep["potential_checks"] = {{"m_v", m_v(p, X)},
                             {"decay_defect", decay_defect(p, 0.5 * X, X)},
                             {"decay_window", {0.5 * X, X}}};
  clock.mark("potential_checks");

  const bool wrong_dv = has_fault(cfg.faults, Fault::WrongDvSign);
  const FdAnalysis fd = analyze_fd(p, params, cfg.grid, cfg.tol, cfg.sharpen, wrong_dv);
  rep["fd"] = fd_json(fd, params);
  rep["index"] = index_json(fd.index);
  clock.mark("finite_difference");

  const Potential pf =
      has_fault(cfg.faults, Fault::ScaleFourierPotential) ? Potential::scaled(p, 1.05) : p;
  const FourierAnalysis fa = analyze_fourier(pf, params, cfg.grid, cfg.tol, cfg.sharpen);
  rep["fourier"] = fourier_json(fa, params);
  rep["cross_check"] = {{"kappa_minus_agree", fd.kappa_minus == fa.kappa_minus},
                        {"kernel_dim_agree", fd.kernel.dimension == fa.kernel.dimension}};
  clock.mark("fourier");

  const BoundsReport bounds = compute_bounds(p, params, X, fd.kappa_minus, fd.kernel.dimension);
  rep["bounds"] = bounds_json(bounds);
  clock.mark("bounds");

  out.tables.push_back(hermitian_table("_fd.csv", fd.spectrum.eigenvalues));
  out.tables.push_back(hermitian_table("_fourier.csv", fa.spectrum.eigenvalues));

  if (cfg.mode == Mode::Pencil || cfg.mode == Mode::Validate) {
    const bool exactify = cfg.mode == Mode::Validate;
    const PencilAnalysis pa = analyze_pencil(fa, params, cfg.tol, exactify, cfg.faults);
    rep["pencil"] = pencil_json(pa, params);
    out.tables.push_back(pencil_table(pa.classes));
    clock.mark("pencil");
    if (cfg.mode == Mode::Validate) {
      const auto checks = validation_checks(p, params, cfg.tol, fd, fa, pa, bounds);
      bool passed = true;
      ojson list = ojson::array();
      for (const Check& c : checks) {
        passed = passed && c.passed;
        list.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      }
      rep["validation"] = {{"passed", passed}, {"checks", list}};
      out.validation_failed = !passed;
    }
  }
  if (cfg.timing) rep["timing_seconds"] = clock.to_json();
  return out;
}

}  // namespace krein
