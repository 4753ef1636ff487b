#include "sgh/basis.hpp"

#include <cassert>
#include <stdexcept>

namespace sgh {

void lagrange_1d(std::span<const double> nodes, double t, std::span<double> val,
                 std::span<double> der) {
  const int n = static_cast<int>(nodes.size());
  assert(static_cast<int>(val.size()) == n && static_cast<int>(der.size()) == n);
  for (int i = 0; i < n; ++i) {
    double v = 1.0;
    double d = 0.0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      const double s = 1.0 / (nodes[i] - nodes[j]);
      d = d * (t - nodes[j]) * s + v * s;
      v *= (t - nodes[j]) * s;
    }
    val[i] = v;
    der[i] = d;
  }
}

ShapeTable tabulate(std::span<const double> nodes1d, std::span<const double> px,
                    std::span<const double> py) {
  const int n1 = static_cast<int>(nodes1d.size());
  const int nfun = n1 * n1;
  const int npts = static_cast<int>(px.size());
  ShapeTable tab;
  tab.npts = npts;
  tab.nfun = nfun;
  tab.val.resize(npts * nfun);
  tab.dxi.resize(npts * nfun);
  tab.deta.resize(npts * nfun);
  std::vector<double> lx(n1), dlx(n1), ly(n1), dly(n1);
  for (int q = 0; q < npts; ++q) {
    lagrange_1d(nodes1d, px[q], lx, dlx);
    lagrange_1d(nodes1d, py[q], ly, dly);
    for (int jy = 0; jy < n1; ++jy) {
      for (int ix = 0; ix < n1; ++ix) {
        const int i = jy * n1 + ix;
        tab.val[q * nfun + i] = lx[ix] * ly[jy];
        tab.dxi[q * nfun + i] = dlx[ix] * ly[jy];
        tab.deta[q * nfun + i] = lx[ix] * dly[jy];
      }
    }
  }
  return tab;
}

ShapeTable tabulate(std::span<const double> nodes1d, const Rule2d& rule) {
  return tabulate(nodes1d, rule.x, rule.y);
}

BasisSet build_basis(int m) {
  if (m < 1) throw std::invalid_argument("build_basis: order must be >= 1");
  BasisSet b;
  b.order = m;
  b.nk = (m + 1) * (m + 1);
  b.nt = m * m;
  b.nh = (m + 1) * (m + 1);
  b.kin_nodes = gauss_lobatto_1d(m + 1);
  b.thermo_nodes = gauss_legendre_1d(m);
  b.q_lo = gauss_legendre_2d(m);
  b.q_hi = gauss_legendre_2d(m + 1);
  b.q_lob = gauss_lobatto_2d(m + 1);
  b.kin_at_lo = tabulate(b.kin_nodes.x, b.q_lo);
  b.kin_at_hi = tabulate(b.kin_nodes.x, b.q_hi);
  b.kin_at_lob = tabulate(b.kin_nodes.x, b.q_lob);
  b.thermo_at_lo = tabulate(b.thermo_nodes.x, b.q_lo);
  b.thermo_at_hi = tabulate(b.thermo_nodes.x, b.q_hi);
  b.m_interp = b.thermo_at_hi.val;
  return b;
}

std::vector<double> build_interp_matrix(int m) {
  if (m < 1) throw std::invalid_argument("build_interp_matrix: order must be >= 1");
  const Rule1d tnodes = gauss_legendre_1d(m);
  const Rule2d hi = gauss_legendre_2d(m + 1);
  return tabulate(tnodes.x, hi).val;
}

}  // namespace sgh
