#include "sgh/state.hpp"

#include <cmath>
#include <stdexcept>

namespace sgh {

double eos_pressure(double rho, double e, double gamma) {
  if (rho <= 0 || e < 0 || gamma <= 1)
    throw std::domain_error("eos_pressure: non-physical input");
  return (gamma - 1.0) * rho * e;
}

double sound_speed(double rho, double p, double gamma) {
  if (rho <= 0 || p < 0) throw std::domain_error("sound_speed: non-physical input");
  return std::sqrt(gamma * p / rho);
}

void update_density_strong(std::span<const double> mass0_lo, std::span<const double> detj_lo,
                           std::span<double> rho_lo, std::span<const double> mass0_hi,
                           std::span<const double> detj_hi, std::span<double> rho_hi) {
  for (size_t q = 0; q < rho_lo.size(); ++q) rho_lo[q] = mass0_lo[q] / detj_lo[q];
  for (size_t q = 0; q < rho_hi.size(); ++q) rho_hi[q] = mass0_hi[q] / detj_hi[q];
}

void update_eos(std::span<const double> rho, std::span<const double> e, double gamma,
                std::span<double> p, std::span<double> cs) {
  for (size_t q = 0; q < rho.size(); ++q) {
    p[q] = (gamma - 1.0) * rho[q] * e[q];
    cs[q] = std::sqrt(gamma * p[q] / rho[q]);
  }
}

}  // namespace sgh
