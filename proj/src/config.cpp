#include "sgh/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sgh {

namespace {

[[noreturn]] void bad(const std::string& key, const std::string& value, const char* why) {
  throw std::invalid_argument("config: " + key + "=" + value + ": " + why);
}

double to_double(const std::string& key, const std::string& value) {
  size_t pos = 0;
  double d = 0;
  try {
    d = std::stod(value, &pos);
  } catch (const std::exception&) {
    bad(key, value, "not a number");
  }
  if (pos != value.size()) bad(key, value, "trailing characters");
  return d;
}

long to_long(const std::string& key, const std::string& value) {
  size_t pos = 0;
  long n = 0;
  try {
    n = std::stol(value, &pos);
  } catch (const std::exception&) {
    bad(key, value, "not an integer");
  }
  if (pos != value.size()) bad(key, value, "trailing characters");
  return n;
}

bool to_bool(const std::string& key, const std::string& value) {
  if (value == "1" || value == "true" || value == "on" || value == "yes") return true;
  if (value == "0" || value == "false" || value == "off" || value == "no") return false;
  bad(key, value, "not a boolean");
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ViscForm parse_visc_form(const std::string& s) {
  if (s == "classic") return ViscForm::Classic;
  if (s == "symmetric") return ViscForm::Symmetric;
  throw std::invalid_argument("config: form must be classic or symmetric, got " + s);
}

SedovSource parse_sedov_source(const std::string& s) {
  if (s == "origin") return SedovSource::Origin;
  if (s == "center-element") return SedovSource::CenterElement;
  throw std::invalid_argument("config: sedov-source must be origin or center-element, got " + s);
}

void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "problem") {
    cfg.problem = value;
  } else if (key == "order") {
    cfg.order = static_cast<int>(to_long(key, value));
  } else if (key == "nx") {
    cfg.nx = static_cast<int>(to_long(key, value));
  } else if (key == "ny") {
    cfg.ny = static_cast<int>(to_long(key, value));
  } else if (key == "cfl") {
    cfg.cfl = to_double(key, value);
  } else if (key == "c1") {
    cfg.c1 = to_double(key, value);
  } else if (key == "c2") {
    cfg.c2 = to_double(key, value);
  } else if (key == "hourglass") {
    cfg.hourglass = to_bool(key, value) ? 1 : 0;
  } else if (key == "viscosity") {
    cfg.viscosity = to_bool(key, value) ? 1 : 0;
  } else if (key == "form") {
    cfg.form = parse_visc_form(value);
  } else if (key == "hg-scale") {
    cfg.hg_scale = to_double(key, value);
  } else if (key == "tfinal") {
    cfg.t_final = to_double(key, value);
  } else if (key == "out") {
    cfg.out_dir = value;
  } else if (key == "vtk-every") {
    cfg.vtk_every = static_cast<int>(to_long(key, value));
  } else if (key == "dt-init") {
    cfg.dt_init = to_double(key, value);
  } else if (key == "max-dt-growth") {
    cfg.max_dt_growth = to_double(key, value);
  } else if (key == "max-e-clamps") {
    cfg.max_e_clamps = to_long(key, value);
  } else if (key == "sedov-source") {
    cfg.sedov_source = parse_sedov_source(value);
  } else if (key == "sedov-e-floor") {
    cfg.sedov_e_floor = to_double(key, value);
  } else if (key == "sedov-q1-energy") {
    cfg.sedov_q1_energy = to_bool(key, value);
  } else if (key == "dm-grading") {
    cfg.dm_grading = to_double(key, value);
  } else {
    throw std::invalid_argument("config: unknown key: " + key);
  }
}

RunConfig parse_config_file(const std::string& path, RunConfig base) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  int lineno = 0;
  while (std::getline(f, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: " + path + ":" + std::to_string(lineno) +
                                  ": expected key=value");
    apply_config_entry(base, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return base;
}

void validate_config(const RunConfig& cfg) {
  if (cfg.problem.empty()) {
    std::string names;
    for (const auto& n : problem_names()) names += " " + n;
    throw std::invalid_argument("config: problem is required; one of:" + names);
  }
  const auto& names = problem_names();
  if (std::find(names.begin(), names.end(), cfg.problem) == names.end())
    throw std::invalid_argument("config: unknown problem: " + cfg.problem);
  if (cfg.order < 1 || cfg.order > 3)
    throw std::invalid_argument("config: order must be 1, 2, or 3");
  if (cfg.nx < 0 || cfg.ny < 0) throw std::invalid_argument("config: nx/ny must be positive");
  if (cfg.cfl < 0.0) throw std::invalid_argument("config: cfl must be >= 0 (0 = automatic)");
  if (cfg.c1 < 0.0 || cfg.c2 < 0.0) throw std::invalid_argument("config: c1/c2 must be >= 0");
  if (cfg.hg_scale < 0.0) throw std::invalid_argument("config: hg-scale must be >= 0");
  if (cfg.vtk_every < 0) throw std::invalid_argument("config: vtk-every must be >= 0");
  if (cfg.dt_init < 0.0) throw std::invalid_argument("config: dt-init must be >= 0");
  if (cfg.max_dt_growth < 1.0)
    throw std::invalid_argument("config: max-dt-growth must be >= 1");
  if (cfg.sedov_e_floor <= 0.0)
    throw std::invalid_argument("config: sedov-e-floor must be positive");
  if (cfg.dm_grading <= 0.0) throw std::invalid_argument("config: dm-grading must be positive");
}

SolverOptions solver_options(const RunConfig& cfg, const Problem& pb) {
  SolverOptions opt;
  opt.hourglass = cfg.hourglass < 0 ? pb.default_hourglass : cfg.hourglass != 0;
  opt.viscosity = cfg.viscosity < 0 ? pb.default_viscosity : cfg.viscosity != 0;
  opt.form = cfg.form;
  opt.c1 = cfg.c1;
  opt.c2 = cfg.c2;
  // the explicit midpoint step is only weakly stable; the undamped growth per
  // step scales like (cfl * spectral radius)^4, and the radius grows with the
  // polynomial order, so the automatic default halves the factor per order
  opt.cfl = cfg.cfl > 0.0 ? cfg.cfl : 0.4 / static_cast<double>(1 << (cfg.order - 1));
  opt.hg_scale = cfg.hg_scale;
  opt.q1_energy_shapes = cfg.sedov_q1_energy;
  opt.max_energy_clamps = cfg.max_e_clamps;
  opt.threads = cfg.threads;
  return opt;
}

}  // namespace sgh
