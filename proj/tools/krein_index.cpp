#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "krein/config.hpp"
#include "krein/errors.hpp"
#include "krein/report.hpp"
#include "krein/workflow.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitValidation = 4;

struct Overrides {
  std::string config;
  std::string potential;
  std::optional<double> b, c, half_width, kernel_tol, s_min, s_max;
  std::optional<int> points, modes, branch;
  std::string mode, out, csv;
  bool timing = false;
  std::vector<std::string> faults;
};

void add_options(CLI::App& app, Overrides& o) {
  app.add_option("--config", o.config, "JSON configuration file");
  app.add_option("--potential", o.potential, "potential as a JSON object, e.g. '{\"kind\":\"zero\"}'");
  app.add_option("--b", o.b, "constant b > 0");
  app.add_option("--c", o.c, "constant c > 0");
  app.add_option("--half-width", o.half_width, "half width X of the computational interval");
  app.add_option("--points", o.points, "interior points of the finite-difference grid");
  app.add_option("--modes", o.modes, "Fourier collocation points (even)");
  app.add_option("--kernel-tol", o.kernel_tol, "kernel window, relative to 2bc");
  app.add_option("--mode", o.mode, "analyze | sweep | pencil | validate");
  app.add_option("--out", o.out, "JSON report path (default: stdout)");
  app.add_option("--csv", o.csv, "prefix for CSV spectra");
  app.add_option("--s-min", o.s_min, "sweep: lower amplitude");
  app.add_option("--s-max", o.s_max, "sweep: upper amplitude");
  app.add_option("--branch", o.branch, "sweep: tracked eigenvalue index (0-based)");
  app.add_flag("--timing", o.timing, "include stage timings in the report");
  app.add_option("--inject-fault", o.faults, "validation negative control (repeatable)");
}

krein::RunConfig build_config(const Overrides& o, const std::string& subcommand) {
  std::optional<nlohmann::json> pj;
  if (!o.potential.empty()) {
    try {
      pj = nlohmann::json::parse(o.potential);
    } catch (const nlohmann::json::parse_error& e) {
      throw krein::ConfigError(std::string("--potential: ") + e.what());
    }
  }
  krein::RunConfig cfg;
  if (!o.config.empty()) {
    cfg = krein::load_config(o.config);
    if (pj) {
      cfg.potential = krein::parse_potential(*pj);
      cfg.potential_spec = *pj;
    }
  } else {
    if (!pj) throw krein::ConfigError("either --config or --potential is required");
    cfg = krein::parse_config(nlohmann::json{{"potential", *pj}});
  }
  if (o.b) cfg.params.b = *o.b;
  if (o.c) cfg.params.c = *o.c;
  if (o.half_width) cfg.grid.half_width = *o.half_width;
  if (o.points) cfg.grid.n_fd = *o.points;
  if (o.modes) cfg.grid.n_fourier = *o.modes;
  if (o.kernel_tol) {
    cfg.tol.kernel_tol = *o.kernel_tol;
    cfg.kernel_tol_explicit = true;
  }
  if (!o.mode.empty()) cfg.mode = krein::parse_mode(o.mode);
  if (!subcommand.empty()) cfg.mode = krein::parse_mode(subcommand);
  if (!o.out.empty()) cfg.out = o.out;
  if (!o.csv.empty()) cfg.csv_prefix = o.csv;
  if (o.timing) cfg.timing = true;
  if (o.s_min || o.s_max || o.branch) {
    if (!cfg.sweep) cfg.sweep = krein::SweepConfig{};
    if (o.s_min) cfg.sweep->s_min = *o.s_min;
    if (o.s_max) cfg.sweep->s_max = *o.s_max;
    if (o.branch) cfg.sweep->branch = *o.branch;
  }
  for (const auto& f : o.faults) cfg.faults.push_back(krein::parse_fault(f));
  krein::validate_config(cfg);
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hamiltonian-Krein index of -c^2 y'' + b^2 y + V y = -i z y'"};
  Overrides o;
  add_options(app, o);
  std::vector<CLI::App*> subs;
  for (const char* name : {"analyze", "sweep", "pencil", "validate"}) subs.push_back(app.add_subcommand(name));
  subs[0]->description("index formula, bounds and cross-discretization check");
  subs[1]->description("locate kernel crossings of an amplitude family");
  subs[2]->description("analysis plus the classified pencil spectrum");
  subs[3]->description("kernel-exact pencil checks; exit 4 on failure");
  for (auto* s : subs) s->fallthrough();
  app.require_subcommand(0, 1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  std::string subcommand;
  for (auto* s : subs)
    if (s->parsed()) subcommand = s->get_name();

  try {
    const krein::RunConfig cfg = build_config(o, subcommand);
    const krein::RunOutcome outcome = krein::run(cfg);
    const std::string text = krein::to_deterministic_json(outcome.report);
    if (cfg.out.empty())
      std::cout << text;
    else
      krein::write_text(cfg.out, text);
    if (!cfg.csv_prefix.empty()) krein::write_csv_tables(cfg.csv_prefix, outcome.tables);
    if (outcome.validation_failed) {
      std::cerr << "validation failed\n";
      return kExitValidation;
    }
    return 0;
  } catch (const krein::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const krein::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
}
