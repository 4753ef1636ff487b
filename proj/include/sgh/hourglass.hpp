#pragma once

#include <span>

#include "sgh/mesh.hpp"

namespace sgh {

// pointwise density variation at the (m+1)^2 points:
// drho_q = rho_hi_q - (M_interp rho_lo)_q
void density_variation(std::span<const double> m_interp, int nh, int nt,
                       std::span<const double> rho_lo, std::span<const double> rho_hi,
                       std::span<double> drho);

// interpolated sound speed (clamped at 0) and pressure variation
// dp_q = cs_hi_q^2 * drho_q
void pressure_variation(std::span<const double> m_interp, int nh, int nt,
                        std::span<const double> cs_lo, std::span<const double> drho,
                        std::span<double> cs_hi, std::span<double> dp);

// anti-hourglass force, same sign convention as the pressure force:
// fh_j += scale * sum_q w_q dp_q (grad N_j detJ)_q
void hourglass_force(const ShapeTable& grads, std::span<const double> w,
                     std::span<const Jac2> J, std::span<const double> dp, double scale,
                     std::span<double> fr, std::span<double> fz);

}  // namespace sgh
