#pragma once

#include <span>
#include <vector>

#include "sgh/mesh.hpp"

namespace sgh {

// thermodynamic fields at the m^2 Gauss-Legendre points per element, plus the
// high-order density at the (m+1)^2 points
struct ThermoField {
  int n_elems = 0, nt = 0, nh = 0;
  std::vector<double> rho;     // n_elems x nt
  std::vector<double> p;
  std::vector<double> e;
  std::vector<double> cs;
  std::vector<double> rho_hi;  // n_elems x nh
  std::vector<double> gamma;   // per element

  void resize(int n_elems_, int nt_, int nh_) {
    n_elems = n_elems_;
    nt = nt_;
    nh = nh_;
    rho.assign(static_cast<size_t>(n_elems) * nt, 0.0);
    p = rho;
    e = rho;
    cs = rho;
    rho_hi.assign(static_cast<size_t>(n_elems) * nh, 0.0);
    gamma.assign(n_elems, 0.0);
  }
};

// gamma-law closure
double eos_pressure(double rho, double e, double gamma);
double sound_speed(double rho, double p, double gamma);

// strong mass conservation: rho = rho0*detJ0/detJ pointwise at both rules.
// detj spans are the current determinants for one element.
void update_density_strong(std::span<const double> mass0_lo, std::span<const double> detj_lo,
                           std::span<double> rho_lo, std::span<const double> mass0_hi,
                           std::span<const double> detj_hi, std::span<double> rho_hi);

// p and cs from (rho, e, gamma) for one element's m^2 points
void update_eos(std::span<const double> rho, std::span<const double> e, double gamma,
                std::span<double> p, std::span<double> cs);

}  // namespace sgh
