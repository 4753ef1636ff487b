#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sgh/hydro.hpp"

namespace sgh {

enum class SedovSource { Origin, CenterElement };

struct ProblemOptions {
  int nx = 0, ny = 0;  // 0 = problem default
  SedovSource sedov_source = SedovSource::Origin;
  double sedov_e_floor = 1e-3;
  double dm_grading = 0.1;
};

struct Problem {
  std::string name;
  Mesh mesh;
  InitialState init;
  double t_final = 0.0;
  // per-problem physics defaults; explicit flags override
  bool default_hourglass = true;
  bool default_viscosity = true;
  // analytic references; empty when the problem has none
  std::function<double(double /*radius*/, double /*t*/)> radial_density_ref;
  std::function<double(double /*r*/, double /*z*/)> density_ref;  // convergence target
};

Problem taylor_green(int m, int nx, int ny);
Problem noh(int m, int nx, int ny);
Problem dukowicz_meltz(int m, double grading = 0.1);
Problem triple_point(int m, int nx, int ny);
Problem sedov(int m, int nx, int ny, SedovSource source = SedovSource::Origin,
              double e_floor = 1e-3);

// dispatch by CLI name; nx/ny of 0 picks the problem's default resolution
Problem make_problem(const std::string& name, int m, const ProblemOptions& opt = {});
const std::vector<std::string>& problem_names();

// full-plane blast energy giving the planar Sedov problem (gamma=1.4, rho0=1)
// a shock radius of exactly 1 at t=1; frozen from the similarity integral
constexpr double SEDOV_ALPHA = 0.9840740168807127;

// self-similar density ratio rho/rho0 at scaled radius lambda = r/r_shock
double sedov_density_profile(double lambda);

}  // namespace sgh
