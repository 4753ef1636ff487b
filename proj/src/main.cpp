#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sgh/driver.hpp"

namespace {

int env_threads() {
  const char* s = std::getenv("SGH_THREADS");
  if (!s) return 1;
  const long n = std::atol(s);
  return n > 0 ? static_cast<int>(n) : 1;
}

void add_physics_options(CLI::App* cmd, sgh::RunConfig& cfg) {
  cmd->add_option("--problem", cfg.problem, "benchmark name");
  cmd->add_option("--order", cfg.order, "polynomial order m (1..3)");
  cmd->add_option("--nx", cfg.nx, "elements in r (0 = problem default)");
  cmd->add_option("--ny", cfg.ny, "elements in z (0 = problem default)");
  cmd->add_option("--cfl", cfg.cfl, "CFL factor (0 = automatic: 0.4 / 2^(order-1))");
  cmd->add_option("--c1", cfg.c1, "linear viscosity coefficient");
  cmd->add_option("--c2", cfg.c2, "quadratic viscosity coefficient");
  cmd->add_flag_function("--hourglass", [&cfg](int64_t) { cfg.hourglass = 1; },
                         "force hourglass control on");
  cmd->add_flag_function("--no-hourglass", [&cfg](int64_t) { cfg.hourglass = 0; },
                         "disable hourglass control");
  cmd->add_flag_function("--viscosity", [&cfg](int64_t) { cfg.viscosity = 1; },
                         "force artificial viscosity on");
  cmd->add_flag_function("--no-viscosity", [&cfg](int64_t) { cfg.viscosity = 0; },
                         "disable artificial viscosity");
  cmd->add_option_function<std::string>(
      "--form", [&cfg](const std::string& s) { cfg.form = sgh::parse_visc_form(s); },
      "viscosity tensor form: classic|symmetric");
  cmd->add_option("--hg-scale", cfg.hg_scale, "hourglass force multiplier");
  cmd->add_option("--tfinal", cfg.t_final, "end time (problem default if unset)");
  cmd->add_option("--out", cfg.out_dir, "output directory");
  cmd->add_option("--dt-init", cfg.dt_init, "initial time-step cap (0 = auto)");
  cmd->add_option("--max-dt-growth", cfg.max_dt_growth, "time-step growth limit per step");
  cmd->add_option("--max-e-clamps", cfg.max_e_clamps, "energy-floor clamp budget");
  cmd->add_option_function<std::string>(
      "--sedov-source",
      [&cfg](const std::string& s) { cfg.sedov_source = sgh::parse_sedov_source(s); },
      "sedov deposit: origin|center-element");
  cmd->add_option("--sedov-e-floor", cfg.sedov_e_floor, "sedov background internal energy");
  cmd->add_flag_function("--sedov-q1-energy",
                         [&cfg](int64_t) { cfg.sedov_q1_energy = true; },
                         "vertex-based energy shapes for the order-2 pair");
  cmd->add_option("--dm-grading", cfg.dm_grading, "dukowicz-meltz interface column width");
}

}  // namespace

int main(int argc, char** argv) {
  // --config is applied first so flags override file entries
  std::vector<std::string> args;
  std::string config_path;
  for (int i = 1; i < argc; ++i) {
    std::string a = argv[i];
    if (a == "--config") {
      if (i + 1 >= argc) {
        std::fprintf(stderr, "error: --config requires a path\n");
        return 2;
      }
      config_path = argv[++i];
    } else if (a.rfind("--config=", 0) == 0) {
      config_path = a.substr(9);
    } else {
      args.push_back(std::move(a));
    }
  }

  sgh::RunConfig cfg;
  try {
    if (!config_path.empty()) cfg = sgh::parse_config_file(config_path);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }

  CLI::App app{"high-order staggered Lagrangian hydrodynamics"};
  app.require_subcommand(1);

  CLI::App* run = app.add_subcommand("run", "run a benchmark to t_final");
  add_physics_options(run, cfg);
  run->add_option("--vtk-every", cfg.vtk_every, "steps between VTK snapshots (0 = final only)");

  CLI::App* conv = app.add_subcommand("converge", "mesh-refinement study");
  add_physics_options(conv, cfg);
  std::vector<double> h_list;
  conv->add_option("--h-list", h_list,
                   "mesh sizes, as h (e.g. 0.25) or elements per side (e.g. 4)")
      ->expected(-1);

  std::vector<const char*> cargv;
  cargv.push_back(argv[0]);
  for (const auto& a : args) cargv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(cargv.size()), cargv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  cfg.threads = env_threads();
  if (conv->parsed() && cfg.problem.empty()) cfg.problem = "taylor-green";
  try {
    sgh::validate_config(cfg);
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 2;
  }

  try {
    if (run->parsed()) {
      sgh::RunResult res = sgh::run_simulation(cfg);
      if (res.exit_code != 0) {
        std::fprintf(stderr, "aborted after %d steps at t=%.6g: %s\n", res.steps, res.t,
                     res.message.c_str());
        std::fprintf(stderr, "partial output written to %s\n", cfg.out_dir.c_str());
        return res.exit_code;
      }
      std::printf("completed %d steps to t=%.6g; output in %s\n", res.steps, res.t,
                  cfg.out_dir.c_str());
      return 0;
    }
    // converge
    if (h_list.empty()) {
      std::fprintf(stderr, "error: --h-list is required\n");
      return 2;
    }
    std::vector<int> ns;
    for (double h : h_list)
      ns.push_back(h >= 1.0 ? static_cast<int>(std::lround(h))
                            : static_cast<int>(std::lround(1.0 / h)));
    auto rows = sgh::convergence_harness(cfg, ns);
    std::fputs(sgh::format_convergence_table(rows).c_str(), stdout);
    return 0;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
