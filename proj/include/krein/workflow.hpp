#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "krein/bounds.hpp"
#include "krein/config.hpp"
#include "krein/index.hpp"
#include "krein/krein_fourier.hpp"
#include "krein/pencil.hpp"
#include "krein/schrodinger_fd.hpp"
#include "krein/spectra.hpp"

namespace krein {

struct FdAnalysis {
  explicit FdAnalysis(Grid g) : grid(g) {}

  double amplitude = 1.0;  // factor applied to the configured potential
  Grid grid;
  SpectrumResult<double> spectrum;
  KernelInfo<double> kernel;
  int kappa_minus = 0;
  std::optional<double> d_v;
  double degeneracy_tol = 0.0;
  std::optional<int> chain_length;
  IndexReport index;
};

struct FourierAnalysis {
  explicit FourierAnalysis(FourierGrid g) : grid(std::move(g)) {}

  double amplitude = 1.0;
  FourierGrid grid;
  KreinOperator op;
  SpectrumResult<std::complex<double>> spectrum;
  KernelInfo<std::complex<double>> kernel;
  int kappa_minus = 0;
  std::optional<double> d_krein;          // for the L^2-normalized kernel function
  std::optional<double> admissibility;    // |<J psi_0, psi_0>|
};

struct PencilAnalysis {
  bool exactified = false;
  ComplexSpectrum spectrum;
  Classification classes;
  SymmetryReport symmetry;
  double min_l_eigenvalue = 0.0;
};

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Crossing {
  double s = 0.0;
  double eigenvalue = 0.0;
  bool converged = false;
  bool branch_gap_warning = false;
};

struct SweepResult {
  std::vector<double> s_values;
  std::vector<double> branch_values;
  std::vector<Crossing> crossings;
  int threads = 1;
};

/// KREIN_INDEX_THREADS if set to a positive integer, else the hardware concurrency.
int thread_cap();

/// Amplitude factor s in [1 - window, 1 + window] with eigenvalue `branch`
/// (ascending, 0-based) of the discretized operator for s V exactly zero.
double sharpen_fd(const Potential& p, const ProblemParams& params, const Grid& g, int branch, double window);
double sharpen_fourier(const Potential& p, const ProblemParams& params, const FourierGrid& fg, int branch,
                       double window);

FdAnalysis analyze_fd(const Potential& p, const ProblemParams& params, const GridConfig& grid, const Tolerances& tol,
                      const std::optional<SharpenConfig>& sharpen, bool flip_dv_sign = false);

FourierAnalysis analyze_fourier(const Potential& p, const ProblemParams& params, const GridConfig& grid,
                                const Tolerances& tol, const std::optional<SharpenConfig>& sharpen);

/// Diagonalizes J L. With `exactify`, the kernel eigenvalue of L is removed first.
PencilAnalysis analyze_pencil(const FourierAnalysis& fa, const ProblemParams& params, const Tolerances& tol,
                              bool exactify, const std::vector<Fault>& faults = {});

SweepResult sweep_branch(const Potential& base, const ProblemParams& params, const Grid& g, const SweepConfig& sw,
                         int threads);

std::vector<Check> validation_checks(const Potential& p, const ProblemParams& params, const Tolerances& tol,
                                     const FdAnalysis& fd, const FourierAnalysis& fa, const PencilAnalysis& pa,
                                     const BoundsReport& bounds);

struct CsvTable {
  std::string suffix;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

struct RunOutcome {
  nlohmann::ordered_json report;
  bool validation_failed = false;
  std::vector<CsvTable> tables;
};

/// Executes the workflow selected by cfg.mode.
RunOutcome run(const RunConfig& cfg);

}  // namespace krein
