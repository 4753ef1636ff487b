#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "sgh/basis.hpp"

namespace sgh {

struct Rect {
  double r0 = 0, z0 = 0, r1 = 1, z1 = 1;
};

// boundary membership flags per kinematic dof (logical mesh sides)
enum BdyFlag : uint8_t {
  BDY_RMIN = 1,
  BDY_RMAX = 2,
  BDY_ZMIN = 4,
  BDY_ZMAX = 8,
};

// structured curvilinear quad mesh; elements share Q^m face dofs
struct Mesh {
  int order = 0;  // m
  int nx = 0, ny = 0;
  int n_elems = 0;
  int n_kin = 0;
  std::vector<int> edofs;   // n_elems x (m+1)^2, R-fastest local ordering
  std::vector<double> r;    // initial dof positions
  std::vector<double> z;
  std::vector<uint8_t> bdy;  // BdyFlag bits per dof

  int nk() const { return (order + 1) * (order + 1); }
  std::span<const int> elem_dofs(int e) const {
    return {edofs.data() + static_cast<size_t>(e) * nk(), static_cast<size_t>(nk())};
  }
};

Mesh build_cartesian_mesh(int nx, int ny, Rect domain, int m);

// structured mesh over an explicit vertex grid ((nx+1) x (ny+1) corner points,
// R-fastest); interior dofs placed by the bilinear map of each quad
Mesh build_vertex_grid_mesh(int nx, int ny, std::span<const double> vr,
                            std::span<const double> vz, int m);

// Dukowicz-Meltz mesh: 18x15 graded trapezoid + 20x15 uniform parallelogram,
// interface inclined at 60 degrees. `grading` is the target width of the
// trapezoid column adjacent to the interface (matches the uniform region).
Mesh build_dm_mesh(int m, double grading = 0.1);
constexpr int DM_LEFT_COLS = 18;   // trapezoid columns
constexpr int DM_RIGHT_COLS = 20;  // parallelogram columns
constexpr int DM_ROWS = 15;
constexpr double DM_HEIGHT = 1.5;
constexpr double DM_INTERFACE_X0 = 1.0;  // interface foot on the z=0 axis

// geometry map Jacobian at one tabulated point: row 1 = d(r)/d(xi,eta),
// row 2 = d(z)/d(xi,eta)
struct Jac2 {
  double j11 = 0, j12 = 0, j21 = 0, j22 = 0;
  double det = 0;
};

// scaled physical gradient (grad N * detJ) of a function with reference
// gradient (dxi, deta)
inline void scaled_grad(const Jac2& J, double dxi, double deta, double& gr, double& gz) {
  gr = J.j22 * dxi - J.j21 * deta;
  gz = -J.j12 * dxi + J.j11 * deta;
}

void gather_elem(const Mesh& mesh, int e, std::span<const double> field, std::span<double> out);

Jac2 jacobian_point(const ShapeTable& g, int q, std::span<const double> er,
                    std::span<const double> ez);

void jacobians(const ShapeTable& g, std::span<const double> er, std::span<const double> ez,
               std::span<Jac2> out);

// detJ <= floor anywhere is a fatal mesh state (closed threshold)
struct GuardReport {
  bool ok = true;
  double min_det = 0;
  std::vector<std::pair<int, int>> failures;  // (element, point)
};

GuardReport guard_jacobians(const Mesh& mesh, const BasisSet& basis, std::span<const double> r,
                            std::span<const double> z, double floor);

// t=0 snapshot used by strong mass conservation and the viscosity length scale
struct InitialGeometry {
  int n_elems = 0, nt = 0, nh = 0;
  std::vector<double> detj0_lo;  // n_elems x m^2
  std::vector<double> mass_lo;   // rho0 * detJ0 at the m^2 points
  std::vector<Jac2> j0_hi;       // n_elems x (m+1)^2
  std::vector<double> detj0_hi;
  std::vector<double> mass_hi;
  double detj_scale = 0;  // min detJ0 across both rules, basis for the guard floor
};

InitialGeometry snapshot_initial_geometry(const Mesh& mesh, const BasisSet& basis,
                                          std::span<const double> rho0_lo,
                                          std::span<const double> rho0_hi);

}  // namespace sgh
