#include "sgh/problems.hpp"

#include <cmath>
#include <stdexcept>

#include "sgh/basis.hpp"

namespace sgh {

namespace {

constexpr double kPi = 3.14159265358979323846;

// piecewise-constant density: one value per element, copied to every point of
// each quadrature rule
void fill_density_per_elem(const Mesh& mesh, const BasisSet& b, const std::vector<double>& rho_e,
                           InitialState& s) {
  const size_t ne = static_cast<size_t>(mesh.n_elems);
  s.rho_lo.resize(ne * b.nt);
  s.rho_hi.resize(ne * b.nh);
  s.rho_lob.resize(ne * b.nh);
  for (size_t e = 0; e < ne; ++e) {
    for (int q = 0; q < b.nt; ++q) s.rho_lo[e * b.nt + q] = rho_e[e];
    for (int q = 0; q < b.nh; ++q) {
      s.rho_hi[e * b.nh + q] = rho_e[e];
      s.rho_lob[e * b.nh + q] = rho_e[e];
    }
  }
}

// zero the normal velocity component on the requested axis-aligned sides
void wall_bcs(const Mesh& mesh, BoundaryCondition& bc, uint8_t sides) {
  for (int i = 0; i < mesh.n_kin; ++i) {
    const uint8_t f = mesh.bdy[i] & sides;
    if (f & (BDY_RMIN | BDY_RMAX)) bc.fix_u(i, 0.0);
    if (f & (BDY_ZMIN | BDY_ZMAX)) bc.fix_v(i, 0.0);
  }
}

// physical positions of the thermodynamic dofs on the initial mesh
void thermo_dof_positions(const Mesh& mesh, const BasisSet& b, std::vector<double>& pr,
                          std::vector<double>& pz) {
  const size_t ne = static_cast<size_t>(mesh.n_elems);
  pr.assign(ne * b.nt, 0.0);
  pz.assign(ne * b.nt, 0.0);
  std::vector<double> er(b.nk), ez(b.nk);
  for (size_t e = 0; e < ne; ++e) {
    gather_elem(mesh, static_cast<int>(e), mesh.r, er);
    gather_elem(mesh, static_cast<int>(e), mesh.z, ez);
    for (int l = 0; l < b.nt; ++l) {
      double xr = 0.0, xz = 0.0;
      for (int i = 0; i < b.nk; ++i) {
        xr += b.kin_at_lo.v(l, i) * er[i];
        xz += b.kin_at_lo.v(l, i) * ez[i];
      }
      pr[e * b.nt + l] = xr;
      pz[e * b.nt + l] = xz;
    }
  }
}

double internal_energy(double p, double rho, double gamma) { return p / ((gamma - 1.0) * rho); }

}  // namespace

Problem taylor_green(int m, int nx, int ny) {
  const double gamma = 5.0 / 3.0;
  Problem pb;
  pb.name = "taylor-green";
  pb.mesh = build_cartesian_mesh(nx, ny, {0.0, 0.0, 1.0, 1.0}, m);
  BasisSet b = build_basis(m);

  pb.init.u.resize(pb.mesh.n_kin);
  pb.init.v.resize(pb.mesh.n_kin);
  for (int i = 0; i < pb.mesh.n_kin; ++i) {
    const double r = pb.mesh.r[i], z = pb.mesh.z[i];
    pb.init.u[i] = std::sin(kPi * r) * std::cos(kPi * z);
    pb.init.v[i] = -std::cos(kPi * r) * std::sin(kPi * z);
  }

  std::vector<double> rho_e(pb.mesh.n_elems, 1.0);
  fill_density_per_elem(pb.mesh, b, rho_e, pb.init);

  std::vector<double> pr, pz;
  thermo_dof_positions(pb.mesh, b, pr, pz);
  pb.init.e.resize(pr.size());
  for (size_t l = 0; l < pr.size(); ++l) {
    const double p = 0.25 * (std::cos(2.0 * kPi * pr[l]) + std::cos(2.0 * kPi * pz[l])) + 1.0;
    pb.init.e[l] = internal_energy(p, 1.0, gamma);
  }
  pb.init.gamma.assign(pb.mesh.n_elems, gamma);

  pb.init.bc.resize(pb.mesh.n_kin);
  wall_bcs(pb.mesh, pb.init.bc, BDY_RMIN | BDY_RMAX | BDY_ZMIN | BDY_ZMAX);

  // energy source keeping the vortex a steady manufactured solution:
  // de/dt = u.grad(e) along particle paths since div(u) = 0
  pb.init.energy_source = [](double r, double z) {
    return 3.0 * kPi / 8.0 *
           (std::cos(3.0 * kPi * r) * std::cos(kPi * z) -
            std::cos(kPi * r) * std::cos(3.0 * kPi * z));
  };

  pb.t_final = 0.75;
  pb.default_hourglass = true;
  pb.default_viscosity = false;  // smooth flow, convergence-study setting
  pb.density_ref = [](double, double) { return 1.0; };
  return pb;
}

Problem noh(int m, int nx, int ny) {
  const double gamma = 5.0 / 3.0;
  Problem pb;
  pb.name = "noh";
  pb.mesh = build_cartesian_mesh(nx, ny, {0.0, 0.0, 1.0, 1.0}, m);
  BasisSet b = build_basis(m);

  pb.init.u.resize(pb.mesh.n_kin);
  pb.init.v.resize(pb.mesh.n_kin);
  for (int i = 0; i < pb.mesh.n_kin; ++i) {
    const double r = pb.mesh.r[i], z = pb.mesh.z[i];
    const double rad = std::hypot(r, z);
    pb.init.u[i] = rad > 1e-14 ? -r / rad : 0.0;
    pb.init.v[i] = rad > 1e-14 ? -z / rad : 0.0;
  }

  std::vector<double> rho_e(pb.mesh.n_elems, 1.0);
  fill_density_per_elem(pb.mesh, b, rho_e, pb.init);
  pb.init.e.assign(static_cast<size_t>(pb.mesh.n_elems) * b.nt, 1e-10);
  pb.init.gamma.assign(pb.mesh.n_elems, gamma);

  // far boundaries keep the exact inflow; symmetry walls override on the axes
  pb.init.bc.resize(pb.mesh.n_kin);
  for (int i = 0; i < pb.mesh.n_kin; ++i) {
    if (pb.mesh.bdy[i] & (BDY_RMAX | BDY_ZMAX)) {
      pb.init.bc.fix_u(i, pb.init.u[i]);
      pb.init.bc.fix_v(i, pb.init.v[i]);
    }
  }
  wall_bcs(pb.mesh, pb.init.bc, BDY_RMIN | BDY_ZMIN);

  pb.t_final = 0.6;
  // cylindrical Noh: shock speed (gamma-1)/2, post-shock density
  // ((gamma+1)/(gamma-1))^2, pre-shock convergence density 1 + t/r
  pb.radial_density_ref = [gamma](double radius, double t) {
    const double rs = 0.5 * (gamma - 1.0) * t;
    if (radius < rs) {
      const double j = (gamma + 1.0) / (gamma - 1.0);
      return j * j;
    }
    return radius > 1e-14 ? 1.0 + t / radius : 1.0;
  };
  return pb;
}

Problem dukowicz_meltz(int m, double grading) {
  Problem pb;
  pb.name = "dukowicz-meltz";
  pb.mesh = build_dm_mesh(m, grading);
  BasisSet b = build_basis(m);

  pb.init.u.assign(pb.mesh.n_kin, 0.0);
  pb.init.v.assign(pb.mesh.n_kin, 0.0);

  // trapezoid columns carry rho=1, parallelogram columns rho=1.5
  std::vector<double> rho_e(pb.mesh.n_elems, 1.0);
  const int cols = DM_LEFT_COLS + DM_RIGHT_COLS;
  for (int e = 0; e < pb.mesh.n_elems; ++e)
    if (e % cols >= DM_LEFT_COLS) rho_e[e] = 1.5;
  fill_density_per_elem(pb.mesh, b, rho_e, pb.init);
  pb.init.e.assign(static_cast<size_t>(pb.mesh.n_elems) * b.nt, 2.5);
  pb.init.gamma.assign(pb.mesh.n_elems, 1.4);

  pb.init.bc.resize(pb.mesh.n_kin);
  // fixed right boundary; the shock never reaches it by t_final
  for (int i = 0; i < pb.mesh.n_kin; ++i) {
    if (pb.mesh.bdy[i] & BDY_RMAX) {
      pb.init.bc.fix_u(i, 0.0);
      pb.init.bc.fix_v(i, 0.0);
    }
  }
  wall_bcs(pb.mesh, pb.init.bc, BDY_ZMIN | BDY_ZMAX);
  // piston drives the left boundary; tangential slip along the face
  for (int i = 0; i < pb.mesh.n_kin; ++i) {
    if (pb.mesh.bdy[i] & BDY_RMIN) {
      pb.init.bc.fix_u(i, 1.48);
      pb.init.u[i] = 1.48;
    }
  }

  pb.t_final = 1.3;
  return pb;
}

Problem triple_point(int m, int nx, int ny) {
  Problem pb;
  pb.name = "triple-point";
  const double lx = 7.0, ly = 3.0;
  // region interfaces at r=1 and z=1.5 must land on element boundaries
  const double cx = nx * 1.0 / lx, cy = ny * 1.5 / ly;
  if (std::abs(cx - std::round(cx)) > 1e-12 || std::abs(cy - std::round(cy)) > 1e-12)
    throw std::invalid_argument("triple point mesh must align with the region interfaces");
  pb.mesh = build_cartesian_mesh(nx, ny, {0.0, 0.0, lx, ly}, m);
  BasisSet b = build_basis(m);

  pb.init.u.assign(pb.mesh.n_kin, 0.0);
  pb.init.v.assign(pb.mesh.n_kin, 0.0);

  std::vector<double> rho_e(pb.mesh.n_elems), gam_e(pb.mesh.n_elems), p_e(pb.mesh.n_elems);
  const double dx = lx / nx, dy = ly / ny;
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const int e = ey * nx + ex;
      const double xc = (ex + 0.5) * dx, yc = (ey + 0.5) * dy;
      if (xc < 1.0) {
        gam_e[e] = 1.5;
        rho_e[e] = 1.0;
        p_e[e] = 1.0;
      } else if (yc < 1.5) {
        gam_e[e] = 1.4;
        rho_e[e] = 1.0;
        p_e[e] = 0.1;
      } else {
        gam_e[e] = 1.6;
        rho_e[e] = 0.125;
        p_e[e] = 0.1;
      }
    }
  }
  fill_density_per_elem(pb.mesh, b, rho_e, pb.init);
  pb.init.e.resize(static_cast<size_t>(pb.mesh.n_elems) * b.nt);
  for (int e = 0; e < pb.mesh.n_elems; ++e)
    for (int l = 0; l < b.nt; ++l)
      pb.init.e[static_cast<size_t>(e) * b.nt + l] = internal_energy(p_e[e], rho_e[e], gam_e[e]);
  pb.init.gamma.assign(gam_e.begin(), gam_e.end());

  pb.init.bc.resize(pb.mesh.n_kin);
  wall_bcs(pb.mesh, pb.init.bc, BDY_RMIN | BDY_RMAX | BDY_ZMIN | BDY_ZMAX);

  pb.t_final = 2.5;
  return pb;
}

Problem sedov(int m, int nx, int ny, SedovSource source, double e_floor) {
  const double gamma = 1.4;
  const double lx = 1.2;
  Problem pb;
  pb.name = "sedov";
  pb.mesh = build_cartesian_mesh(nx, ny, {0.0, 0.0, lx, lx}, m);
  BasisSet b = build_basis(m);

  pb.init.u.assign(pb.mesh.n_kin, 0.0);
  pb.init.v.assign(pb.mesh.n_kin, 0.0);

  std::vector<double> rho_e(pb.mesh.n_elems, 1.0);
  fill_density_per_elem(pb.mesh, b, rho_e, pb.init);
  pb.init.e.assign(static_cast<size_t>(pb.mesh.n_elems) * b.nt, e_floor);
  pb.init.gamma.assign(pb.mesh.n_elems, gamma);

  // quarter-plane share of the blast energy, deposited as specific internal
  // energy so the integrated deposit is exact
  const double edep = SEDOV_ALPHA / 4.0;
  const double dx = lx / nx, dy = lx / ny;
  const double detj0 = 0.25 * dx * dy;
  if (source == SedovSource::Origin) {
    // thermo point of the corner element nearest the origin
    pb.init.e[0] += edep / (b.q_lo.w[0] * detj0);
  } else {
    const double elem_mass = dx * dy;  // rho0 = 1
    for (int l = 0; l < b.nt; ++l) pb.init.e[l] += edep / elem_mass;
  }

  pb.init.bc.resize(pb.mesh.n_kin);
  wall_bcs(pb.mesh, pb.init.bc, BDY_RMIN | BDY_ZMIN);

  pb.t_final = 1.0;
  // with E_fullplane = SEDOV_ALPHA and rho0 = 1 the shock radius is exactly
  // sqrt(t); the profile table gives the interior density ratio
  pb.radial_density_ref = [](double radius, double t) {
    if (t <= 0.0) return 1.0;
    const double lam = radius / std::sqrt(t);
    return lam > 1.0 ? 1.0 : sedov_density_profile(lam);
  };
  return pb;
}

double sedov_density_profile(double lambda) {
  // (lambda, rho/rho0) for gamma = 1.4, planar geometry, from the similarity
  // solution; linear interpolation between rows
  static const double tab[][2] = {
      {0.000, 0.0},          {0.050, 6.126995e-07}, {0.100, 1.960639e-05}, {0.150, 1.488862e-04},
      {0.200, 6.274117e-04}, {0.250, 1.914794e-03}, {0.300, 4.765310e-03}, {0.350, 1.030374e-02},
      {0.400, 2.010722e-02}, {0.450, 3.630395e-02}, {0.500, 6.171256e-02}, {0.550, 1.000721e-01},
      {0.600, 1.564612e-01}, {0.650, 2.381029e-01}, {0.700, 3.559606e-01}, {0.750, 5.280141e-01},
      {0.800, 7.863344e-01}, {0.850, 1.193455e+00}, {0.900, 1.883868e+00}, {0.920, 2.300056e+00},
      {0.940, 2.845040e+00}, {0.960, 3.575086e+00}, {0.980, 4.578681e+00}, {1.000, 6.000000e+00}};
  const int n = static_cast<int>(sizeof(tab) / sizeof(tab[0]));
  if (lambda <= 0.0) return 0.0;
  if (lambda >= 1.0) return tab[n - 1][1];
  int i = 1;
  while (i < n - 1 && tab[i][0] < lambda) ++i;
  const double t = (lambda - tab[i - 1][0]) / (tab[i][0] - tab[i - 1][0]);
  return tab[i - 1][1] + t * (tab[i][1] - tab[i - 1][1]);
}

Problem make_problem(const std::string& name, int m, const ProblemOptions& opt) {
  auto nx = [&](int d) { return opt.nx > 0 ? opt.nx : d; };
  auto ny = [&](int d) { return opt.ny > 0 ? opt.ny : d; };
  if (name == "taylor-green") return taylor_green(m, nx(8), ny(nx(8)));
  if (name == "noh") return noh(m, nx(20), ny(nx(20)));
  if (name == "dukowicz-meltz") return dukowicz_meltz(m, opt.dm_grading);
  if (name == "triple-point") return triple_point(m, nx(56), ny(24));
  if (name == "sedov") return sedov(m, nx(24), ny(nx(24)), opt.sedov_source, opt.sedov_e_floor);
  throw std::invalid_argument("unknown problem: " + name);
}

const std::vector<std::string>& problem_names() {
  static const std::vector<std::string> names = {"taylor-green", "noh", "dukowicz-meltz",
                                                 "triple-point", "sedov"};
  return names;
}

}  // namespace sgh
