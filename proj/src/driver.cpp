#include "sgh/driver.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <limits>
#include <stdexcept>

#include "sgh/output.hpp"

namespace sgh {

int advance_to(Solver& s, double t_final, double dt_init, double growth,
               const std::function<void(int, double, double)>& per_step) {
  const double t_eps = 1e-12 * std::max(t_final, 1.0);
  double t = 0.0, dt_prev = 0.0;
  int step = 0;
  while (t < t_final - t_eps) {
    double dt = s.compute_dt();
    // the CFL bound can be huge on cold initial states; the startup cap and
    // the growth limiter keep the first mesh motions resolved
    if (step == 0)
      dt = std::min(dt, dt_init > 0.0 ? dt_init : 1e-3 * t_final);
    else
      dt = std::min(dt, growth * dt_prev);
    if (!(dt > 0.0) || !std::isfinite(dt))
      throw std::runtime_error("time step collapsed to " + std::to_string(dt));
    if (t + dt >= t_final) dt = t_final - t;
    s.step(dt);
    t += dt;
    ++step;
    dt_prev = dt;
    if (per_step) per_step(step, t, dt);
    if (step > 10000000) throw std::runtime_error("step limit exceeded");
  }
  return step;
}

RunResult run_simulation(const RunConfig& cfg) {
  ProblemOptions po;
  po.nx = cfg.nx;
  po.ny = cfg.ny;
  po.sedov_source = cfg.sedov_source;
  po.sedov_e_floor = cfg.sedov_e_floor;
  po.dm_grading = cfg.dm_grading;
  Problem pb = make_problem(cfg.problem, cfg.order, po);
  const double t_final = cfg.t_final >= 0.0 ? cfg.t_final : pb.t_final;

  std::filesystem::create_directories(cfg.out_dir);
  auto out = [&](const std::string& name) { return cfg.out_dir + "/" + name; };

  Solver s(pb.mesh, std::move(pb.init), solver_options(cfg, pb));
  AuditWriter audit(out("audit.csv"));
  audit.row(0, 0.0, 0.0, s, 0.0);
  write_vtk(out("snap_0000.vtk"), s);

  int snap = 0;
  auto t_prev = std::chrono::steady_clock::now();
  RunResult res;
  try {
    res.steps = advance_to(s, t_final, cfg.dt_init, cfg.max_dt_growth,
                           [&](int step, double t, double dt) {
                             const auto now = std::chrono::steady_clock::now();
                             const double ms =
                                 std::chrono::duration<double, std::milli>(now - t_prev).count();
                             t_prev = now;
                             audit.row(step, t, dt, s, ms);
                             if (cfg.vtk_every > 0 && step % cfg.vtk_every == 0) {
                               char name[32];
                               std::snprintf(name, sizeof(name), "snap_%04d.vtk", ++snap);
                               write_vtk(out(name), s);
                             }
                             res.t = t;
                             res.steps = step;
                           });
    res.t = t_final;
  } catch (const std::exception& ex) {
    res.exit_code = 1;
    res.message = ex.what();
  }

  // final (or partial, after an abort) dump
  write_vtk(out("snap_final.vtk"), s);
  write_scatter_csv(out("scatter.csv"), s);
  if (pb.radial_density_ref) {
    std::vector<double> pr, pz;
    s.thermo_positions(pr, pz);
    double rmax = 0.0;
    for (size_t i = 0; i < pr.size(); ++i) rmax = std::max(rmax, std::hypot(pr[i], pz[i]));
    write_radial_reference_csv(out("reference.csv"), pb, res.t, rmax, 400);
  }
  return res;
}

std::vector<ConvergenceRow> convergence_harness(const RunConfig& cfg,
                                                const std::vector<int>& n_list) {
  std::vector<ConvergenceRow> rows;
  double prev_err = 0.0;
  for (size_t i = 0; i < n_list.size(); ++i) {
    const int n = n_list[i];
    ProblemOptions po;
    po.nx = n;
    po.ny = n;
    Problem pb = make_problem(cfg.problem, cfg.order, po);
    if (!pb.density_ref)
      throw std::invalid_argument("problem has no convergence reference: " + cfg.problem);
    const double t_final = cfg.t_final >= 0.0 ? cfg.t_final : pb.t_final;

    Solver s(pb.mesh, std::move(pb.init), solver_options(cfg, pb));
    advance_to(s, t_final, cfg.dt_init, cfg.max_dt_growth);

    ConvergenceRow row;
    row.n = n;
    row.kin_dofs = s.mesh().n_kin;
    row.thermo_dofs = static_cast<long>(s.mesh().n_elems) * s.basis().nt;
    row.err = s.l2_density_error(pb.density_ref);
    row.order = i == 0 ? std::numeric_limits<double>::quiet_NaN()
                       : std::log2(prev_err / row.err);
    prev_err = row.err;
    rows.push_back(row);
  }
  return rows;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows) {
  char buf[160];
  std::string s = "      h   kin dofs  thermo dofs      L2 error   order\n";
  for (const auto& r : rows) {
    if (std::isnan(r.order))
      std::snprintf(buf, sizeof(buf), "   1/%-3d %10ld %12ld  %12.4e       -\n", r.n, r.kin_dofs,
                    r.thermo_dofs, r.err);
    else
      std::snprintf(buf, sizeof(buf), "   1/%-3d %10ld %12ld  %12.4e  %6.4f\n", r.n, r.kin_dofs,
                    r.thermo_dofs, r.err, r.order);
    s += buf;
  }
  return s;
}

}  // namespace sgh
