#include "krein/config.hpp"

#include <fstream>
#include <set>

#include "krein/errors.hpp"

namespace krein {

namespace {

using nlohmann::json;

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) throw ConfigError(where + ": expected an object");
  const std::set<std::string> ok(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items())
    if (!ok.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw ConfigError(where + ": missing '" + key + "'");
  const json& v = j.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  return v.get<double>();
}

double number_or(const json& j, const char* key, double fallback, const std::string& where) {
  return j.contains(key) ? number(j, key, where) : fallback;
}

int integer_or(const json& j, const char* key, int fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

std::string string_or(const json& j, const char* key, const std::string& fallback, const std::string& where) {
  if (!j.contains(key)) return fallback;
  const json& v = j.at(key);
  if (!v.is_string()) throw ConfigError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

Potential parse_potential_at(const json& j, const std::filesystem::path& base_dir, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw ConfigError(where + ": potential needs a string 'kind'");
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "zero") {
    check_keys(j, where, {"kind"});
    return Potential::zero();
  }
  if (kind == "poschl_teller") {
    check_keys(j, where, {"kind", "nu", "scale"});
    const double nu = number(j, "nu", where);
    require(nu > 0.0, where + ".nu must be positive");
    const double scale = j.contains("scale") ? number(j, "scale", where) : -nu * (nu + 1.0);
    return Potential::poschl_teller(nu, scale);
  }
  if (kind == "gaussian_well") {
    check_keys(j, where, {"kind", "depth", "width", "center"});
    const double width = number(j, "width", where);
    require(width > 0.0, where + ".width must be positive");
    return Potential::gaussian_well(number(j, "depth", where), width, number_or(j, "center", 0.0, where));
  }
  if (kind == "square_well") {
    check_keys(j, where, {"kind", "depth", "half_width"});
    const double hw = number(j, "half_width", where);
    require(hw > 0.0, where + ".half_width must be positive");
    return Potential::square_well(number(j, "depth", where), hw);
  }
  if (kind == "sampled") {
    check_keys(j, where, {"kind", "csv", "xs", "vs"});
    if (j.contains("csv")) {
      require(!j.contains("xs") && !j.contains("vs"), where + ": give either 'csv' or 'xs'/'vs', not both");
      std::filesystem::path path = string_or(j, "csv", "", where);
      if (path.is_relative() && !base_dir.empty()) path = base_dir / path;
      return load_sampled_csv(path.string());
    }
    require(j.contains("xs") && j.contains("vs"), where + ": sampled potential needs 'csv' or 'xs' and 'vs'");
    std::vector<double> xs, vs;
    try {
      xs = j.at("xs").get<std::vector<double>>();
      vs = j.at("vs").get<std::vector<double>>();
    } catch (const json::exception&) {
      throw ConfigError(where + ": 'xs' and 'vs' must be arrays of numbers");
    }
    try {
      return Potential::sampled(std::move(xs), std::move(vs));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(where + ": " + e.what());
    }
  }
  if (kind == "sum") {
    check_keys(j, where, {"kind", "parts"});
    require(j.contains("parts") && j.at("parts").is_array(), where + ": sum needs an array 'parts'");
    std::vector<Potential> parts;
    for (std::size_t i = 0; i < j.at("parts").size(); ++i)
      parts.push_back(parse_potential_at(j.at("parts")[i], base_dir, where + ".parts[" + std::to_string(i) + "]"));
    return Potential::sum(std::move(parts));
  }
  if (kind == "scaled") {
    check_keys(j, where, {"kind", "base", "s"});
    require(j.contains("base"), where + ": scaled needs 'base'");
    return Potential::scaled(parse_potential_at(j.at("base"), base_dir, where + ".base"), number(j, "s", where));
  }
  throw ConfigError(where + ": unknown potential kind '" + kind + "'");
}

}  // namespace

std::string to_string(Mode m) {
  switch (m) {
    case Mode::Analyze: return "analyze";
    case Mode::Sweep: return "sweep";
    case Mode::Pencil: return "pencil";
    case Mode::Validate: return "validate";
  }
  return "?";
}

Mode parse_mode(const std::string& s) {
  for (Mode m : {Mode::Analyze, Mode::Sweep, Mode::Pencil, Mode::Validate})
    if (to_string(m) == s) return m;
  throw ConfigError("unknown mode '" + s + "'");
}

std::string to_string(Fault f) {
  switch (f) {
    case Fault::FlipSignature: return "flip_signature";
    case Fault::ImaginaryShift: return "imaginary_shift";
    case Fault::ScaleFourierPotential: return "scale_fourier_potential";
    case Fault::WrongDvSign: return "wrong_dv_sign";
  }
  return "?";
}

Fault parse_fault(const std::string& s) {
  for (Fault f : {Fault::FlipSignature, Fault::ImaginaryShift, Fault::ScaleFourierPotential, Fault::WrongDvSign})
    if (to_string(f) == s) return f;
  throw ConfigError("unknown fault '" + s + "'");
}

Potential parse_potential(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  return parse_potential_at(j, base_dir, "potential");
}

RunConfig parse_config(const nlohmann::json& j, const std::filesystem::path& base_dir) {
  check_keys(j, "config",
             {"potential", "b", "c", "grid", "tolerances", "mode", "sweep", "sharpen_kernel", "faults", "out", "csv",
              "timing"});
  RunConfig cfg;
  if (!j.contains("potential")) throw ConfigError("config: missing 'potential'");
  cfg.potential_spec = j.at("potential");
  cfg.potential = parse_potential(j.at("potential"), base_dir);
  cfg.params.b = number_or(j, "b", 1.0, "config");
  cfg.params.c = number_or(j, "c", 1.0, "config");

  if (j.contains("grid")) {
    const json& g = j.at("grid");
    check_keys(g, "grid", {"half_width", "n_fd", "n_fourier"});
    cfg.grid.half_width = number_or(g, "half_width", cfg.grid.half_width, "grid");
    cfg.grid.n_fd = integer_or(g, "n_fd", cfg.grid.n_fd, "grid");
    cfg.grid.n_fourier = integer_or(g, "n_fourier", cfg.grid.n_fourier, "grid");
  }
  if (j.contains("tolerances")) {
    const json& t = j.at("tolerances");
    check_keys(t, "tolerances", {"kernel_tol", "degeneracy_tol", "tol_class", "symmetry_tol", "cross_tol"});
    if (t.contains("kernel_tol")) {
      cfg.tol.kernel_tol = number(t, "kernel_tol", "tolerances");
      cfg.kernel_tol_explicit = true;
    }
    if (t.contains("degeneracy_tol") && !t.at("degeneracy_tol").is_null())
      cfg.tol.degeneracy_tol = number(t, "degeneracy_tol", "tolerances");
    cfg.tol.tol_class = number_or(t, "tol_class", cfg.tol.tol_class, "tolerances");
    cfg.tol.symmetry_tol = number_or(t, "symmetry_tol", cfg.tol.symmetry_tol, "tolerances");
    cfg.tol.cross_tol = number_or(t, "cross_tol", cfg.tol.cross_tol, "tolerances");
  }
  cfg.mode = parse_mode(string_or(j, "mode", "analyze", "config"));
  if (j.contains("sweep")) {
    const json& s = j.at("sweep");
    check_keys(s, "sweep", {"s_min", "s_max", "branch", "bisection_tol", "coarse_points"});
    SweepConfig sw;
    sw.s_min = number(s, "s_min", "sweep");
    sw.s_max = number(s, "s_max", "sweep");
    sw.branch = integer_or(s, "branch", sw.branch, "sweep");
    sw.bisection_tol = number_or(s, "bisection_tol", sw.bisection_tol, "sweep");
    sw.coarse_points = integer_or(s, "coarse_points", sw.coarse_points, "sweep");
    cfg.sweep = sw;
  }
  if (j.contains("sharpen_kernel")) {
    const json& s = j.at("sharpen_kernel");
    check_keys(s, "sharpen_kernel", {"branch", "window"});
    SharpenConfig sh;
    sh.branch = integer_or(s, "branch", sh.branch, "sharpen_kernel");
    sh.window = number_or(s, "window", sh.window, "sharpen_kernel");
    cfg.sharpen = sh;
  }
  if (j.contains("faults")) {
    if (!j.at("faults").is_array()) throw ConfigError("faults: expected an array of names");
    for (const auto& f : j.at("faults")) {
      if (!f.is_string()) throw ConfigError("faults: expected an array of names");
      cfg.faults.push_back(parse_fault(f.get<std::string>()));
    }
  }
  cfg.out = string_or(j, "out", "", "config");
  cfg.csv_prefix = string_or(j, "csv", "", "config");
  if (j.contains("timing")) {
    if (!j.at("timing").is_boolean()) throw ConfigError("timing: expected a boolean");
    cfg.timing = j.at("timing").get<bool>();
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in, nullptr, true, true);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config parse error in " + path.string() + ": " + e.what());
  }
  return parse_config(j, path.parent_path());
}

void validate_config(const RunConfig& cfg) {
  require(cfg.params.b > 0.0 && cfg.params.c > 0.0, "b and c must be positive");
  require(cfg.grid.half_width > 0.0, "grid.half_width must be positive");
  require(cfg.grid.n_fd >= 3, "grid.n_fd must be at least 3");
  require(cfg.grid.n_fourier >= 8 && cfg.grid.n_fourier % 2 == 0, "grid.n_fourier must be even and at least 8");
  require(cfg.grid.n_fourier <= 4096, "grid.n_fourier must not exceed 4096 (dense pencil)");
  require(cfg.tol.kernel_tol > 0.0, "tolerances.kernel_tol must be positive");
  require(!cfg.tol.degeneracy_tol || *cfg.tol.degeneracy_tol >= 0.0, "tolerances.degeneracy_tol must be >= 0");
  require(cfg.tol.tol_class > 0.0, "tolerances.tol_class must be positive");
  require(cfg.tol.symmetry_tol > 0.0 && cfg.tol.cross_tol > 0.0, "tolerances must be positive");
  require(!cfg.potential.contains_sampled() || cfg.kernel_tol_explicit,
          "kernel_tol must be given explicitly for sampled potentials");
  if (cfg.mode == Mode::Sweep) {
    require(cfg.sweep.has_value(), "sweep mode needs a 'sweep' section");
    require(cfg.sweep->s_min < cfg.sweep->s_max, "sweep.s_min must be below sweep.s_max");
    require(cfg.sweep->branch >= 0 && cfg.sweep->branch < cfg.grid.n_fd, "sweep.branch out of range");
    require(cfg.sweep->bisection_tol > 0.0, "sweep.bisection_tol must be positive");
    require(cfg.sweep->coarse_points >= 2, "sweep.coarse_points must be at least 2");
  }
  if (cfg.sharpen) {
    require(cfg.sharpen->branch >= 0 && cfg.sharpen->branch < std::min(cfg.grid.n_fd, cfg.grid.n_fourier - 2),
            "sharpen_kernel.branch out of range");
    require(cfg.sharpen->window > 0.0 && cfg.sharpen->window < 1.0, "sharpen_kernel.window must lie in (0, 1)");
  }
}

nlohmann::ordered_json RunConfig::to_json() const {
  nlohmann::ordered_json j;
  j["mode"] = krein::to_string(mode);
  j["potential"] = potential_spec;
  j["b"] = params.b;
  j["c"] = params.c;
  j["grid"] = {{"half_width", grid.half_width}, {"n_fd", grid.n_fd}, {"n_fourier", grid.n_fourier}};
  nlohmann::ordered_json t;
  t["kernel_tol"] = tol.kernel_tol;
  t["degeneracy_tol"] = tol.degeneracy_tol ? nlohmann::ordered_json(*tol.degeneracy_tol) : nlohmann::ordered_json();
  t["tol_class"] = tol.tol_class;
  t["symmetry_tol"] = tol.symmetry_tol;
  t["cross_tol"] = tol.cross_tol;
  j["tolerances"] = t;
  if (sweep)
    j["sweep"] = {{"s_min", sweep->s_min},
                  {"s_max", sweep->s_max},
                  {"branch", sweep->branch},
                  {"bisection_tol", sweep->bisection_tol},
                  {"coarse_points", sweep->coarse_points}};
  if (sharpen) j["sharpen_kernel"] = {{"branch", sharpen->branch}, {"window", sharpen->window}};
  if (!faults.empty()) {
    nlohmann::ordered_json f = nlohmann::ordered_json::array();
    for (Fault x : faults) f.push_back(krein::to_string(x));
    j["faults"] = f;
  }
  return j;
}

}  // namespace krein
