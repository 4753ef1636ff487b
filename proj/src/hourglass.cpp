#include "sgh/hourglass.hpp"

#include <algorithm>

namespace sgh {

void density_variation(std::span<const double> m_interp, int nh, int nt,
                       std::span<const double> rho_lo, std::span<const double> rho_hi,
                       std::span<double> drho) {
  for (int q = 0; q < nh; ++q) {
    double interp = 0.0;
    for (int k = 0; k < nt; ++k) interp += m_interp[q * nt + k] * rho_lo[k];
    drho[q] = rho_hi[q] - interp;
  }
}

void pressure_variation(std::span<const double> m_interp, int nh, int nt,
                        std::span<const double> cs_lo, std::span<const double> drho,
                        std::span<double> cs_hi, std::span<double> dp) {
  for (int q = 0; q < nh; ++q) {
    double interp = 0.0;
    for (int k = 0; k < nt; ++k) interp += m_interp[q * nt + k] * cs_lo[k];
    // interpolation can overshoot below zero near strong gradients
    cs_hi[q] = std::max(interp, 0.0);
    dp[q] = cs_hi[q] * cs_hi[q] * drho[q];
  }
}

void hourglass_force(const ShapeTable& grads, std::span<const double> w,
                     std::span<const Jac2> J, std::span<const double> dp, double scale,
                     std::span<double> fr, std::span<double> fz) {
  for (int q = 0; q < grads.npts; ++q) {
    const double c = scale * w[q] * dp[q];
    for (int j = 0; j < grads.nfun; ++j) {
      double gr, gz;
      scaled_grad(J[q], grads.gx(q, j), grads.gy(q, j), gr, gz);
      fr[j] += c * gr;
      fz[j] += c * gz;
    }
  }
}

}  // namespace sgh
