#pragma once

#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "sgh/mesh.hpp"

namespace test_util {

// deterministic RNG for reproducible property tests
inline std::mt19937_64 make_rng(unsigned seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// corners in local node order: (-1,-1), (1,-1), (-1,1), (1,1)
struct Quad {
  std::array<double, 4> r, z;
};

// bilinear shapes on [-1,1]^2, node order matching Quad
inline std::array<double, 4> q1_shapes(double xi, double eta) {
  return {0.25 * (1 - xi) * (1 - eta), 0.25 * (1 + xi) * (1 - eta),
          0.25 * (1 - xi) * (1 + eta), 0.25 * (1 + xi) * (1 + eta)};
}

inline sgh::Jac2 q1_jacobian(const Quad& q, double xi, double eta) {
  // dN/dxi, dN/deta for the four bilinear shapes
  std::array<double, 4> dxi = {-0.25 * (1 - eta), 0.25 * (1 - eta),
                               -0.25 * (1 + eta), 0.25 * (1 + eta)};
  std::array<double, 4> deta = {-0.25 * (1 - xi), -0.25 * (1 + xi),
                                0.25 * (1 - xi), 0.25 * (1 + xi)};
  sgh::Jac2 J{0, 0, 0, 0, 0};
  for (int i = 0; i < 4; ++i) {
    J.j11 += dxi[i] * q.r[i];
    J.j12 += deta[i] * q.r[i];
    J.j21 += dxi[i] * q.z[i];
    J.j22 += deta[i] * q.z[i];
  }
  J.det = J.j11 * J.j22 - J.j12 * J.j21;
  return J;
}

// random non-degenerate quad: unit square corners jittered, resampled until
// the Jacobian stays positive at the four corners (hence everywhere)
inline Quad random_quad(std::mt19937_64& rng, double jitter = 0.15) {
  const double br[4] = {0, 1, 0, 1};
  const double bz[4] = {0, 0, 1, 1};
  while (true) {
    Quad q;
    for (int i = 0; i < 4; ++i) {
      q.r[i] = br[i] + uniform(rng, -jitter, jitter);
      q.z[i] = bz[i] + uniform(rng, -jitter, jitter);
    }
    bool ok = true;
    for (double eta : {-1.0, 1.0})
      for (double xi : {-1.0, 1.0})
        ok = ok && q1_jacobian(q, xi, eta).det > 1e-3;
    if (ok) return q;
  }
}

// edge-difference identities for (detJ grad N_j) of the bilinear element,
// an independent evaluation path used as an oracle; r_ab = r_a - r_b with
// 1-based node labels in the same order as Quad
inline void q1_grad_detj(const Quad& q, double xi, double eta, int j,
                         double& gr, double& gz) {
  auto N = q1_shapes(xi, eta);
  const double N1 = N[0], N2 = N[1], N3 = N[2], N4 = N[3];
  auto rd = [&](int a, int b) { return q.r[a - 1] - q.r[b - 1]; };
  auto zd = [&](int a, int b) { return q.z[a - 1] - q.z[b - 1]; };
  switch (j) {
    case 0:
      gr = 0.25 * (-N1 * zd(3, 2) - N2 * zd(4, 2) - N3 * zd(3, 4));
      gz = 0.25 * (N1 * rd(3, 2) + N2 * rd(4, 2) + N3 * rd(3, 4));
      return;
    case 1:
      gr = 0.25 * (-N1 * zd(1, 3) + N2 * zd(4, 1) - N4 * zd(3, 4));
      gz = 0.25 * (N1 * rd(1, 3) - N2 * rd(4, 1) + N4 * rd(3, 4));
      return;
    case 2:
      gr = 0.25 * (-N1 * zd(2, 1) - N3 * zd(4, 1) - N4 * zd(4, 2));
      gz = 0.25 * (N1 * rd(2, 1) + N3 * rd(4, 1) + N4 * rd(4, 2));
      return;
    default:
      gr = 0.25 * (-N2 * zd(2, 1) - N3 * zd(1, 3) + N4 * zd(3, 2));
      gz = 0.25 * (N2 * rd(2, 1) + N3 * rd(1, 3) - N4 * rd(3, 2));
      return;
  }
}

struct SymEig {
  double lam_min, lam_max;
  double vmin1, vmin2;  // unit eigenvector of lam_min
};

// Jacobi-rotation eigensolver for symmetric 2x2, independent of production code
inline SymEig sym_eig_2x2(double a, double b, double c) {
  double theta = 0.5 * std::atan2(2.0 * b, a - c);
  double cs = std::cos(theta), sn = std::sin(theta);
  double l1 = a * cs * cs + 2.0 * b * sn * cs + c * sn * sn;
  double l2 = a * sn * sn - 2.0 * b * sn * cs + c * cs * cs;
  SymEig e;
  if (l1 <= l2) {
    e.lam_min = l1;
    e.lam_max = l2;
    e.vmin1 = cs;
    e.vmin2 = sn;
  } else {
    e.lam_min = l2;
    e.lam_max = l1;
    e.vmin1 = -sn;
    e.vmin2 = cs;
  }
  return e;
}

// single-element Q^m mesh with prescribed corners
inline sgh::Mesh single_element_mesh(const Quad& q, int order) {
  std::vector<double> vr = {q.r[0], q.r[1], q.r[2], q.r[3]};
  std::vector<double> vz = {q.z[0], q.z[1], q.z[2], q.z[3]};
  return sgh::build_vertex_grid_mesh(1, 1, vr, vz, order);
}

}  // namespace test_util
