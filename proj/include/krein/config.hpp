#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "krein/potentials.hpp"

namespace krein {

enum class Mode { Analyze, Sweep, Pencil, Validate };

std::string to_string(Mode m);
Mode parse_mode(const std::string& s);

struct GridConfig {
  double half_width = 20.0;
  int n_fd = 2000;
  int n_fourier = 512;
};

struct Tolerances {
  double kernel_tol = 1e-4;
  std::optional<double> degeneracy_tol;  // default scales with |psi_0'|^2
  double tol_class = 1e-8;
  double symmetry_tol = 1e-7;   // relative to 2bc
  double cross_tol = 1e-3;      // relative |D - D_V|
};

struct SweepConfig {
  double s_min = 0.0;
  double s_max = 1.0;
  int branch = 0;               // 0-based index of the tracked eigenvalue
  double bisection_tol = 1e-10; // |lambda_k(s*)| <= bisection_tol * 2bc
  int coarse_points = 41;
};

/// Retunes the amplitude factor s in [1 - window, 1 + window] so that the
/// given eigenvalue branch of each discretization is exactly zero.
struct SharpenConfig {
  int branch = 0;
  double window = 0.05;
};

enum class Fault { FlipSignature, ImaginaryShift, ScaleFourierPotential, WrongDvSign };

std::string to_string(Fault f);
Fault parse_fault(const std::string& s);

struct RunConfig {
  nlohmann::ordered_json potential_spec;
  Potential potential;
  ProblemParams params;
  GridConfig grid;
  Tolerances tol;
  Mode mode = Mode::Analyze;
  std::optional<SweepConfig> sweep;
  std::optional<SharpenConfig> sharpen;
  std::vector<Fault> faults;
  std::string out;          // JSON report path; empty means stdout
  std::string csv_prefix;   // empty disables CSV output
  bool timing = false;
  bool kernel_tol_explicit = false;

  /// Echo of the effective configuration (stable key order).
  nlohmann::ordered_json to_json() const;
};

/// Builds a potential from its JSON description. Relative CSV paths are
/// resolved against `base_dir`.
Potential parse_potential(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
RunConfig load_config(const std::filesystem::path& path);

/// Cross-field checks; run after flag overrides are applied.
void validate_config(const RunConfig& cfg);

}  // namespace krein
