#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sgh/config.hpp"
#include "sgh/hydro.hpp"

namespace sgh {

struct RunResult {
  int exit_code = 0;
  int steps = 0;
  double t = 0.0;
  std::string message;  // abort diagnostics when exit_code != 0
};

// time loop shared by runs, the convergence harness, and tests: CFL bound with
// growth limiting, exact landing on t_final; per_step runs after each step
int advance_to(Solver& s, double t_final, double dt_init, double growth,
               const std::function<void(int, double, double)>& per_step = {});

// full artifact-writing run; guard aborts produce a partial dump and a nonzero
// exit code instead of propagating
RunResult run_simulation(const RunConfig& cfg);

struct ConvergenceRow {
  int n = 0;  // elements per side, h = 1/n
  long kin_dofs = 0;
  long thermo_dofs = 0;
  double err = 0.0;
  double order = 0.0;  // NaN on the first row
};

// runs the problem at each resolution and reports the L2 density-variation
// error against the problem's reference
std::vector<ConvergenceRow> convergence_harness(const RunConfig& cfg,
                                                const std::vector<int>& n_list);

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);

}  // namespace sgh
