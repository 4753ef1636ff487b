#pragma once

#include <span>
#include <vector>

#include "sgh/quadrature.hpp"

namespace sgh {

// values of the 1d Lagrange basis through `nodes` at point t, plus derivatives
void lagrange_1d(std::span<const double> nodes, double t, std::span<double> val,
                 std::span<double> der);

// values/reference-gradients of a tensor-product Lagrange basis at a set of points;
// functions and points both ordered R-fastest
struct ShapeTable {
  int npts = 0;
  int nfun = 0;
  std::vector<double> val;   // npts x nfun
  std::vector<double> dxi;   // d/dxi
  std::vector<double> deta;  // d/deta
  double v(int q, int i) const { return val[q * nfun + i]; }
  double gx(int q, int i) const { return dxi[q * nfun + i]; }
  double gy(int q, int i) const { return deta[q * nfun + i]; }
};

// tabulate the tensor basis with given 1d nodes at the given points
ShapeTable tabulate(std::span<const double> nodes1d, std::span<const double> px,
                    std::span<const double> py);
ShapeTable tabulate(std::span<const double> nodes1d, const Rule2d& rule);

// reference-element data for the Q^m (kinematic) / Q^{m-1} (thermodynamic) pair
struct BasisSet {
  int order = 0;  // m
  int nk = 0;     // (m+1)^2 kinematic dofs per element
  int nt = 0;     // m^2 thermodynamic dofs per element
  int nh = 0;     // (m+1)^2 points of the high rule

  Rule1d kin_nodes;     // Gauss-Lobatto(m+1), kinematic dof locations per axis
  Rule1d thermo_nodes;  // Gauss-Legendre(m), thermodynamic dof locations per axis

  Rule2d q_lo;   // m^2 Gauss-Legendre (conservation-law rule)
  Rule2d q_hi;   // (m+1)^2 Gauss-Legendre (hourglass/viscosity rule)
  Rule2d q_lob;  // (m+1)^2 Gauss-Lobatto (mass-lumping rule)

  ShapeTable kin_at_lo;     // N at the m^2 points
  ShapeTable kin_at_hi;     // N at the (m+1)^2 points
  ShapeTable kin_at_lob;    // N at the Lobatto points (identity values)
  ShapeTable thermo_at_lo;  // phi at the m^2 points (identity values)
  ShapeTable thermo_at_hi;  // phi at the (m+1)^2 points

  // interpolation matrix, (m+1)^2 x m^2 row-major: entry (q,k) = phi_k(xi_q)
  // at the (m+1)^2 Gauss-Legendre points; rows of thermo_at_hi
  std::vector<double> m_interp;
};

BasisSet build_basis(int m);
std::vector<double> build_interp_matrix(int m);

}  // namespace sgh
