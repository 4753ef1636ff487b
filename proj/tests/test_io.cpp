#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "sgh/config.hpp"
#include "sgh/driver.hpp"
#include "sgh/hydro.hpp"
#include "sgh/output.hpp"
#include "sgh/problems.hpp"

using namespace sgh;

namespace {

std::string scratch_dir() {
  auto d = std::filesystem::temp_directory_path() / "sgh_io_tests";
  std::filesystem::create_directories(d);
  return d.string();
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE(f.good());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) out.push_back(line);
  return out;
}

std::vector<std::string> split_fields(const std::string& line, char sep = ',') {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string cur;
  while (std::getline(is, cur, sep)) out.push_back(cur);
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  REQUIRE(f.good());
  f << text;
}

bool close(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

Solver make_solver(const std::string& name, int order, int nx, const SolverOptions& opt) {
  ProblemOptions po;
  po.nx = nx;
  Problem pb = make_problem(name, order, po);
  return Solver(pb.mesh, std::move(pb.init), opt);
}

}  // namespace

TEST_CASE("config entries cover every runtime knob") {
  RunConfig c;
  apply_config_entry(c, "problem", "noh");
  apply_config_entry(c, "order", "3");
  apply_config_entry(c, "nx", "12");
  apply_config_entry(c, "ny", "6");
  apply_config_entry(c, "cfl", "0.25");
  apply_config_entry(c, "c1", "0.7");
  apply_config_entry(c, "c2", "1.5");
  apply_config_entry(c, "hourglass", "off");
  apply_config_entry(c, "viscosity", "yes");
  apply_config_entry(c, "form", "classic");
  apply_config_entry(c, "hg-scale", "0.5");
  apply_config_entry(c, "tfinal", "0.3");
  apply_config_entry(c, "out", "results");
  apply_config_entry(c, "vtk-every", "25");
  apply_config_entry(c, "dt-init", "1e-4");
  apply_config_entry(c, "max-dt-growth", "1.1");
  apply_config_entry(c, "max-e-clamps", "42");
  apply_config_entry(c, "sedov-source", "center-element");
  apply_config_entry(c, "sedov-e-floor", "0.01");
  apply_config_entry(c, "sedov-q1-energy", "true");
  apply_config_entry(c, "dm-grading", "0.2");

  CHECK(c.problem == "noh");
  CHECK(c.order == 3);
  CHECK(c.nx == 12);
  CHECK(c.ny == 6);
  CHECK(c.cfl == 0.25);
  CHECK(c.c1 == 0.7);
  CHECK(c.c2 == 1.5);
  CHECK(c.hourglass == 0);
  CHECK(c.viscosity == 1);
  CHECK(c.form == ViscForm::Classic);
  CHECK(c.hg_scale == 0.5);
  CHECK(c.t_final == 0.3);
  CHECK(c.out_dir == "results");
  CHECK(c.vtk_every == 25);
  CHECK(c.dt_init == 1e-4);
  CHECK(c.max_dt_growth == 1.1);
  CHECK(c.max_e_clamps == 42);
  CHECK(c.sedov_source == SedovSource::CenterElement);
  CHECK(c.sedov_e_floor == 0.01);
  CHECK(c.sedov_q1_energy);
  CHECK(c.dm_grading == 0.2);
}

TEST_CASE("config values are validated as they are parsed") {
  RunConfig c;
  for (const char* v : {"1", "true", "on", "yes"}) {
    apply_config_entry(c, "viscosity", v);
    CHECK(c.viscosity == 1);
  }
  for (const char* v : {"0", "false", "off", "no"}) {
    apply_config_entry(c, "viscosity", v);
    CHECK(c.viscosity == 0);
  }
  CHECK_THROWS_AS(apply_config_entry(c, "viscosity", "2"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "hourglass", "maybe"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "order", "2x"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "order", "fast"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "cfl", "0.5.1"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "cfl", "big"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "form", "upwind"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "sedov-source", "corner"), std::invalid_argument);
  // thread count comes from the environment, not the config file
  CHECK_THROWS_AS(apply_config_entry(c, "threads", "4"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "Problem", "noh"), std::invalid_argument);
  CHECK_THROWS_AS(apply_config_entry(c, "", "1"), std::invalid_argument);
}

TEST_CASE("config files accept comments and keep unset defaults") {
  const std::string dir = scratch_dir();
  const std::string path = dir + "/run.cfg";
  write_text(path,
             "# driver setup\n"
             "problem = noh   # trailing comment\n"
             "order=3\n"
             "\n"
             "   \t\n"
             "  nx = 10\n"
             "tfinal = 0.25\n");
  RunConfig base;
  base.cfl = 0.3;
  RunConfig c = parse_config_file(path, base);
  CHECK(c.problem == "noh");
  CHECK(c.order == 3);
  CHECK(c.nx == 10);
  CHECK(c.t_final == 0.25);
  CHECK(c.cfl == 0.3);          // inherited from the base, file does not mention it
  CHECK(c.hourglass == -1);     // still the tri-state default
  CHECK(c.out_dir == "out");
}

TEST_CASE("config files report the offending line") {
  const std::string dir = scratch_dir();
  const std::string path = dir + "/bad.cfg";
  write_text(path, "problem = noh\norder error\n");
  try {
    parse_config_file(path);
    FAIL("expected a parse error");
  } catch (const std::invalid_argument& ex) {
    CHECK(std::string(ex.what()).find(":2:") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_config_file(dir + "/no_such_file.cfg"), std::invalid_argument);
}

TEST_CASE("config validation enforces ranges") {
  RunConfig ok;
  ok.problem = "sedov";
  CHECK_NOTHROW(validate_config(ok));

  auto reject = [&](auto&& tweak) {
    RunConfig c = ok;
    tweak(c);
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
  };
  reject([](RunConfig& c) { c.problem = ""; });
  reject([](RunConfig& c) { c.problem = "kelvin-helmholtz"; });
  reject([](RunConfig& c) { c.order = 0; });
  reject([](RunConfig& c) { c.order = 4; });
  reject([](RunConfig& c) { c.nx = -1; });
  reject([](RunConfig& c) { c.ny = -2; });
  reject([](RunConfig& c) { c.cfl = -0.1; });
  reject([](RunConfig& c) { c.c1 = -0.1; });
  reject([](RunConfig& c) { c.c2 = -1.0; });
  reject([](RunConfig& c) { c.hg_scale = -0.5; });
  reject([](RunConfig& c) { c.vtk_every = -1; });
  reject([](RunConfig& c) { c.dt_init = -1e-3; });
  reject([](RunConfig& c) { c.max_dt_growth = 0.9; });
  reject([](RunConfig& c) { c.sedov_e_floor = 0.0; });
  reject([](RunConfig& c) { c.dm_grading = 0.0; });
}

TEST_CASE("explicit physics toggles override problem defaults") {
  Problem pb = make_problem("taylor-green", 2, {});
  CHECK(pb.default_hourglass);
  CHECK_FALSE(pb.default_viscosity);

  RunConfig c;
  SolverOptions opt = solver_options(c, pb);
  CHECK(opt.hourglass);
  CHECK_FALSE(opt.viscosity);

  // cfl = 0 resolves by order: 0.4 / 2^(order-1)
  CHECK(c.cfl == 0.0);
  CHECK(opt.cfl == 0.2);
  c.order = 1;
  CHECK(solver_options(c, pb).cfl == 0.4);
  c.order = 3;
  CHECK(solver_options(c, pb).cfl == 0.1);
  c.order = 2;

  c.hourglass = 0;
  c.viscosity = 1;
  c.cfl = 0.4;
  c.c1 = 0.6;
  c.c2 = 1.7;
  c.hg_scale = 0.25;
  c.form = ViscForm::Classic;
  c.sedov_q1_energy = true;
  c.max_e_clamps = 17;
  c.threads = 3;
  opt = solver_options(c, pb);
  CHECK_FALSE(opt.hourglass);
  CHECK(opt.viscosity);
  CHECK(opt.cfl == 0.4);
  CHECK(opt.c1 == 0.6);
  CHECK(opt.c2 == 1.7);
  CHECK(opt.hg_scale == 0.25);
  CHECK(opt.form == ViscForm::Classic);
  CHECK(opt.q1_energy_shapes);
  CHECK(opt.max_energy_clamps == 17);
  CHECK(opt.threads == 3);
}

TEST_CASE("enumeration parsers accept exactly the documented names") {
  CHECK(parse_visc_form("classic") == ViscForm::Classic);
  CHECK(parse_visc_form("symmetric") == ViscForm::Symmetric);
  CHECK_THROWS_AS(parse_visc_form("Symmetric"), std::invalid_argument);
  CHECK(parse_sedov_source("origin") == SedovSource::Origin);
  CHECK(parse_sedov_source("center-element") == SedovSource::CenterElement);
  CHECK_THROWS_AS(parse_sedov_source("center"), std::invalid_argument);
}

TEST_CASE("vtk snapshots carry the full mesh and all fields") {
  Solver s = make_solver("taylor-green", 2, 2, {});
  const Mesh& mesh = s.mesh();
  const int m = mesh.order, nt = m * m;
  const int npts = mesh.n_kin, ncells = mesh.n_elems * nt;

  const std::string path = scratch_dir() + "/snap.vtk";
  write_vtk(path, s);

  std::ifstream f(path);
  REQUIRE(f.good());
  std::string line;
  std::getline(f, line);
  CHECK(line == "# vtk DataFile Version 3.0");
  std::getline(f, line);
  std::getline(f, line);
  CHECK(line == "ASCII");
  std::getline(f, line);
  CHECK(line == "DATASET UNSTRUCTURED_GRID");

  std::string kw, word;
  int n = 0;
  f >> kw >> n >> word;
  CHECK(kw == "POINTS");
  CHECK(n == npts);
  CHECK(word == "double");
  std::vector<double> px(npts), py(npts);
  for (int i = 0; i < npts; ++i) {
    double zero = -1;
    REQUIRE(static_cast<bool>(f >> px[i] >> py[i] >> zero));
    CHECK(px[i] == s.r()[i]);
    CHECK(py[i] == s.z()[i]);
    CHECK(zero == 0.0);
  }

  int total = 0;
  f >> kw >> n >> total;
  CHECK(kw == "CELLS");
  CHECK(n == ncells);
  CHECK(total == 5 * ncells);
  std::vector<char> used(npts, 0);
  for (int c = 0; c < ncells; ++c) {
    int cnt = 0, idx[4];
    REQUIRE(static_cast<bool>(f >> cnt >> idx[0] >> idx[1] >> idx[2] >> idx[3]));
    CHECK(cnt == 4);
    for (int k = 0; k < 4; ++k) {
      REQUIRE(idx[k] >= 0);
      REQUIRE(idx[k] < npts);
      used[idx[k]] = 1;
    }
    // corners must wind counterclockwise: positive shoelace area
    double area = 0.0;
    for (int k = 0; k < 4; ++k) {
      const int a = idx[k], b = idx[(k + 1) % 4];
      area += px[a] * py[b] - px[b] * py[a];
    }
    CHECK(area > 0.0);
  }
  CHECK(std::count(used.begin(), used.end(), 1) == npts);

  f >> kw >> n;
  CHECK(kw == "CELL_TYPES");
  CHECK(n == ncells);
  for (int c = 0; c < ncells; ++c) {
    int t = 0;
    f >> t;
    CHECK(t == 9);
  }

  f >> kw >> n;
  CHECK(kw == "POINT_DATA");
  CHECK(n == npts);
  f >> kw >> word >> line;
  CHECK(kw == "VECTORS");
  CHECK(word == "velocity");
  for (int i = 0; i < npts; ++i) {
    double u = 0, v = 0, zero = -1;
    REQUIRE(static_cast<bool>(f >> u >> v >> zero));
    CHECK(u == s.u()[i]);
    CHECK(v == s.v()[i]);
    CHECK(zero == 0.0);
  }

  f >> kw >> n;
  CHECK(kw == "CELL_DATA");
  CHECK(n == ncells);
  auto check_scalar = [&](const std::string& name, const std::vector<double>& field) {
    std::string a, b, cpts, one, lut, def;
    f >> a >> b >> cpts >> one >> lut >> def;
    CHECK(a == "SCALARS");
    CHECK(b == name);
    CHECK(cpts == "double");
    CHECK(one == "1");
    CHECK(lut == "LOOKUP_TABLE");
    CHECK(def == "default");
    for (int c = 0; c < ncells; ++c) {
      double val = 0;
      REQUIRE(static_cast<bool>(f >> val));
      CHECK(val == field[c]);
    }
  };
  check_scalar("density", s.thermo().rho);
  check_scalar("pressure", s.thermo().p);
  check_scalar("internal_energy", s.thermo().e);
  CHECK_FALSE(static_cast<bool>(f >> kw));  // nothing after the last block

  CHECK_THROWS_AS(write_vtk("/no_such_dir_sgh/x.vtk", s), std::runtime_error);
}

TEST_CASE("scatter files list every thermodynamic point") {
  Solver s = make_solver("taylor-green", 2, 2, {});
  const std::string path = scratch_dir() + "/scatter.csv";
  write_scatter_csv(path, s);

  const auto lines = split_lines(slurp(path));
  const int nt = s.basis().nt;
  REQUIRE(static_cast<int>(lines.size()) == 1 + s.mesh().n_elems * nt);
  CHECK(lines[0] == "r,z,radius,rho,p,e");

  std::vector<double> pr, pz;
  s.thermo_positions(pr, pz);
  for (size_t l = 0; l + 1 < lines.size(); ++l) {
    const auto fields = split_fields(lines[l + 1]);
    REQUIRE(fields.size() == 6);
    const double r = std::stod(fields[0]), z = std::stod(fields[1]);
    CHECK(r == pr[l]);
    CHECK(z == pz[l]);
    CHECK(close(std::stod(fields[2]), std::hypot(r, z), 1e-15));
    CHECK(std::stod(fields[3]) == s.thermo().rho[l]);
    CHECK(std::stod(fields[4]) == s.thermo().p[l]);
    CHECK(std::stod(fields[5]) == s.thermo().e[l]);
  }
}

TEST_CASE("radial reference files are written only when a profile exists") {
  const std::string dir = scratch_dir();
  const std::string path = dir + "/reference.csv";
  std::filesystem::remove(path);

  Problem tg = make_problem("taylor-green", 2, {});
  write_radial_reference_csv(path, tg, 0.75, 1.0, 10);
  CHECK_FALSE(std::filesystem::exists(path));

  Problem noh = make_problem("noh", 2, {});
  REQUIRE(static_cast<bool>(noh.radial_density_ref));
  write_radial_reference_csv(path, noh, 0.6, 1.0, 10);
  const auto lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 11);
  CHECK(lines[0] == "radius,rho");
  for (int i = 1; i <= 10; ++i) {
    const auto fields = split_fields(lines[i]);
    REQUIRE(fields.size() == 2);
    const double radius = std::stod(fields[0]);
    CHECK(close(radius, 0.1 * i, 1e-15));
    CHECK(close(std::stod(fields[1]), noh.radial_density_ref(radius, 0.6), 1e-15));
  }
}

TEST_CASE("audit rows track the running energy budget") {
  Solver s = make_solver("taylor-green", 2, 2, {});
  const std::string path = scratch_dir() + "/audit.csv";
  {
    AuditWriter audit(path);
    audit.row(0, 0.0, 0.0, s, 0.0);
    s.step(0.001);
    audit.row(1, 0.001, 0.001, s, 2.5);
  }
  const auto lines = split_lines(slurp(path));
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] ==
        "step,t,dt,kinetic,internal,total_energy,total_mass,max_abs_drho,min_detj,"
        "mesh_distortion,wall_ms");
  for (int row = 1; row <= 2; ++row) {
    const auto fields = split_fields(lines[row]);
    REQUIRE(fields.size() == 11);
    CHECK(std::stoi(fields[0]) == row - 1);
    const double ke = std::stod(fields[3]), ie = std::stod(fields[4]);
    CHECK(close(ke + ie, std::stod(fields[5]), 1e-15));
    CHECK(std::stod(fields[6]) > 0.0);   // mass
    CHECK(std::stod(fields[8]) > 0.0);   // min detJ
  }
  // the final row reflects the stepped state
  CHECK(close(std::stod(split_fields(lines[2])[6]), s.total_mass(), 1e-15));
}

TEST_CASE("threaded evaluation is bitwise deterministic") {
  SolverOptions opt;
  opt.hourglass = true;
  opt.viscosity = true;
  auto build = [&](int threads) {
    SolverOptions o = opt;
    o.threads = threads;
    return make_solver("taylor-green", 2, 4, o);
  };
  Solver a = build(1);
  Solver b = build(3);

  for (int k = 0; k < 10; ++k) {
    const double dta = a.compute_dt(), dtb = b.compute_dt();
    CHECK(dta == dtb);
    const double dt = std::min(dta, 0.002);
    a.step(dt);
    b.step(dt);
  }
  CHECK(a.u() == b.u());
  CHECK(a.v() == b.v());
  CHECK(a.r() == b.r());
  CHECK(a.z() == b.z());
  CHECK(a.thermo().rho == b.thermo().rho);
  CHECK(a.thermo().rho_hi == b.thermo().rho_hi);
  CHECK(a.thermo().p == b.thermo().p);
  CHECK(a.thermo().e == b.thermo().e);

  const std::string dir = scratch_dir();
  write_scatter_csv(dir + "/det_a.csv", a);
  write_scatter_csv(dir + "/det_b.csv", b);
  CHECK(slurp(dir + "/det_a.csv") == slurp(dir + "/det_b.csv"));

  // audit rows agree except for the wall-clock column
  {
    AuditWriter wa(dir + "/det_a_audit.csv");
    wa.row(1, 0.1, 0.002, a, 1.25);
  }
  {
    AuditWriter wb(dir + "/det_b_audit.csv");
    wb.row(1, 0.1, 0.002, b, 9.75);
  }
  const auto la = split_lines(slurp(dir + "/det_a_audit.csv"));
  const auto lb = split_lines(slurp(dir + "/det_b_audit.csv"));
  REQUIRE(la.size() == 2);
  REQUIRE(lb.size() == 2);
  CHECK(la[0] == lb[0]);
  auto strip_wall = [](const std::string& line) { return line.substr(0, line.rfind(',')); };
  CHECK(strip_wall(la[1]) == strip_wall(lb[1]));
  CHECK(strip_wall(la[1]) != la[1]);
}
