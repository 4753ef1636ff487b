#pragma once

#include <string>

#include "sgh/problems.hpp"
#include "sgh/viscosity.hpp"

namespace sgh {

struct RunConfig {
  std::string problem;
  int order = 2;
  int nx = 0, ny = 0;  // 0 = problem default
  double cfl = 0.0;  // 0 = automatic: 0.4 / 2^(order-1)
  double c1 = 0.5, c2 = 2.0;
  int hourglass = -1;  // tri-state: -1 problem default, 0 off, 1 on
  int viscosity = -1;
  ViscForm form = ViscForm::Symmetric;
  double hg_scale = 1.0;
  double t_final = -1.0;  // <0 = problem default
  std::string out_dir = "out";
  int vtk_every = 0;  // steps between snapshots; 0 = final only
  double dt_init = 0.0;  // 0 = automatic
  double max_dt_growth = 1.02;
  long max_e_clamps = 10000000;
  SedovSource sedov_source = SedovSource::Origin;
  double sedov_e_floor = 1e-3;
  bool sedov_q1_energy = false;
  double dm_grading = 0.1;
  int threads = 1;  // from SGH_THREADS only
};

// assign one key=value pair; throws std::invalid_argument on unknown keys or
// malformed values
void apply_config_entry(RunConfig& cfg, const std::string& key, const std::string& value);

// flat key=value file; '#' comments and blank lines allowed
RunConfig parse_config_file(const std::string& path, RunConfig base = {});

// range/consistency checks shared by file and flag paths
void validate_config(const RunConfig& cfg);

ViscForm parse_visc_form(const std::string& s);
SedovSource parse_sedov_source(const std::string& s);

// resolved physics toggles: explicit setting wins, else the problem default
SolverOptions solver_options(const RunConfig& cfg, const Problem& pb);

}  // namespace sgh
