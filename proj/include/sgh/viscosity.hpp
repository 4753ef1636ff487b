#pragma once

#include <span>

#include "sgh/mesh.hpp"

namespace sgh {

// scaled velocity gradient at one point: row 1 = grad(u)*detJ, row 2 = grad(v)*detJ
struct GradPoint {
  double ur = 0, uz = 0;  // d(u)/dr * detJ, d(u)/dz * detJ
  double vr = 0, vz = 0;
  double det = 0;
  double trace() const { return ur + vz; }  // div(u) * detJ
};

// G_q = sum_i [u_i; v_i] (grad N_i detJ)_q at every tabulated point
void scaled_velocity_gradients(const ShapeTable& grads, std::span<const Jac2> J,
                               std::span<const double> eu, std::span<const double> ev,
                               std::span<GradPoint> out);

// closed-form minimum eigenpair of a symmetric 2x2 matrix; isotropic ties
// resolve to the unit R-direction
struct EigMin {
  double lam = 0;
  double e1 = 1, e2 = 0;  // unit eigenvector
};
EigMin min_eig_2x2(double a11, double a12, double a22);

// |div u| / ||grad u||_F, capped at 1; 1 by convention for zero gradients
double vorticity_factor(double dudr, double dudz, double dvdr, double dvdz);

// directional length l0*|(J0)^-1 J e| with l0 = sqrt(wq*detJ0); e must be unit
double characteristic_length(const Jac2& J0, const Jac2& J, double e1, double e2, double wq);

// mu = 0 unless compressing (lam < 0)
double viscosity_mu(double rho, double cs, double lc, double lam, double cvor, double c1,
                    double c2);

enum class ViscForm { Classic, Symmetric };

// viscous force with the dissipative sign
//   fv_j -= sum_q mu_q w_q (1/detJ_q) sigma_q (grad N_j detJ)_q
// sigma = G (classic) or (G+G^T)/2 (symmetric); work_q returns the per-point
// kinetic work density sum_j u_j . fv_j(xi_q) = -mu_q/detJ_q (sigma_q : G_q)
void viscous_force(const ShapeTable& grads, std::span<const double> w, std::span<const Jac2> J,
                   std::span<const GradPoint> G, std::span<const double> mu, ViscForm form,
                   std::span<double> fr, std::span<double> fz, std::span<double> work_q);

// squared minimum singular value of J (time-step length scale)
double singular_length_sq(const Jac2& J);

}  // namespace sgh
