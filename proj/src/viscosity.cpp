#include "sgh/viscosity.hpp"

#include <cmath>

namespace sgh {

void scaled_velocity_gradients(const ShapeTable& grads, std::span<const Jac2> J,
                               std::span<const double> eu, std::span<const double> ev,
                               std::span<GradPoint> out) {
  for (int q = 0; q < grads.npts; ++q) {
    GradPoint g;
    g.det = J[q].det;
    for (int i = 0; i < grads.nfun; ++i) {
      double gr, gz;
      scaled_grad(J[q], grads.gx(q, i), grads.gy(q, i), gr, gz);
      g.ur += eu[i] * gr;
      g.uz += eu[i] * gz;
      g.vr += ev[i] * gr;
      g.vz += ev[i] * gz;
    }
    out[q] = g;
  }
}

EigMin min_eig_2x2(double a11, double a12, double a22) {
  EigMin r;
  const double mean = 0.5 * (a11 + a22);
  const double diff = 0.5 * (a11 - a22);
  const double rad = std::sqrt(diff * diff + a12 * a12);
  r.lam = mean - rad;
  // eigenvector (a12, lam - a11); for the isotropic tie keep (1,0)
  const double v1 = a12;
  const double v2 = r.lam - a11;
  const double norm = std::sqrt(v1 * v1 + v2 * v2);
  if (norm > 0) {
    r.e1 = v1 / norm;
    r.e2 = v2 / norm;
  }
  return r;
}

double vorticity_factor(double dudr, double dudz, double dvdr, double dvdz) {
  const double div = dudr + dvdz;
  const double norm =
      std::sqrt(dudr * dudr + dudz * dudz + dvdr * dvdr + dvdz * dvdz);
  if (norm < 1e-300) return 1.0;  // zero gradient: mu vanishes anyway
  return std::min(std::abs(div) / norm, 1.0);
}

double characteristic_length(const Jac2& J0, const Jac2& J, double e1, double e2, double wq) {
  // M = adj(J0) * J = detJ0 * (J0)^-1 J
  const double m11 = J0.j22 * J.j11 - J0.j12 * J.j21;
  const double m12 = J0.j22 * J.j12 - J0.j12 * J.j22;
  const double m21 = J0.j11 * J.j21 - J0.j21 * J.j11;
  const double m22 = J0.j11 * J.j22 - J0.j21 * J.j12;
  const double w1 = m11 * e1 + m12 * e2;
  const double w2 = m21 * e1 + m22 * e2;
  // l0 |(J0)^-1 J e| = sqrt(wq detJ0) |M e| / detJ0 = sqrt(wq/detJ0) |M e|
  return std::sqrt(wq / J0.det * (w1 * w1 + w2 * w2));
}

double viscosity_mu(double rho, double cs, double lc, double lam, double cvor, double c1,
                    double c2) {
  if (lam >= 0) return 0.0;
  return rho * (c1 * cvor * cs * lc + c2 * lc * lc * std::abs(lam));
}

void viscous_force(const ShapeTable& grads, std::span<const double> w, std::span<const Jac2> J,
                   std::span<const GradPoint> G, std::span<const double> mu, ViscForm form,
                   std::span<double> fr, std::span<double> fz, std::span<double> work_q) {
  for (int q = 0; q < grads.npts; ++q) {
    if (mu[q] == 0.0) {
      work_q[q] = 0.0;
      continue;
    }
    // sigma in scaled form (already times detJ)
    double s11 = G[q].ur, s12 = G[q].uz, s21 = G[q].vr, s22 = G[q].vz;
    if (form == ViscForm::Symmetric) {
      s12 = s21 = 0.5 * (G[q].uz + G[q].vr);
    }
    const double c = mu[q] / J[q].det;
    for (int j = 0; j < grads.nfun; ++j) {
      double gr, gz;
      scaled_grad(J[q], grads.gx(q, j), grads.gy(q, j), gr, gz);
      fr[j] -= c * w[q] * (s11 * gr + s12 * gz);
      fz[j] -= c * w[q] * (s21 * gr + s22 * gz);
    }
    work_q[q] = -c * (s11 * G[q].ur + s12 * G[q].uz + s21 * G[q].vr + s22 * G[q].vz);
  }
}

double singular_length_sq(const Jac2& J) {
  const double a = J.j11 * J.j11, b = J.j12 * J.j12, c = J.j21 * J.j21, d = J.j22 * J.j22;
  const double mean = 0.5 * (a + b + c + d);
  const double diff = a + c - b - d;
  const double cross = J.j11 * J.j12 + J.j21 * J.j22;
  return mean - 0.5 * std::sqrt(diff * diff + 4.0 * cross * cross);
}

}  // namespace sgh
