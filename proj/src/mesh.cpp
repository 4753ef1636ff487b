#include "sgh/mesh.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sgh {

namespace {

// connectivity and boundary tags for a structured nx x ny grid of Q^m elements
Mesh structured_skeleton(int nx, int ny, int m) {
  Mesh mesh;
  mesh.order = m;
  mesh.nx = nx;
  mesh.ny = ny;
  mesh.n_elems = nx * ny;
  const int ngx = nx * m + 1;
  const int ngy = ny * m + 1;
  mesh.n_kin = ngx * ngy;
  mesh.r.assign(mesh.n_kin, 0.0);
  mesh.z.assign(mesh.n_kin, 0.0);
  mesh.bdy.assign(mesh.n_kin, 0);
  const int nk = (m + 1) * (m + 1);
  mesh.edofs.resize(static_cast<size_t>(mesh.n_elems) * nk);
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const int e = ey * nx + ex;
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= m; ++i) {
          const int gid = (ey * m + j) * ngx + (ex * m + i);
          mesh.edofs[static_cast<size_t>(e) * nk + j * (m + 1) + i] = gid;
        }
      }
    }
  }
  for (int gy = 0; gy < ngy; ++gy) {
    for (int gx = 0; gx < ngx; ++gx) {
      uint8_t f = 0;
      if (gx == 0) f |= BDY_RMIN;
      if (gx == ngx - 1) f |= BDY_RMAX;
      if (gy == 0) f |= BDY_ZMIN;
      if (gy == ngy - 1) f |= BDY_ZMAX;
      mesh.bdy[gy * ngx + gx] = f;
    }
  }
  return mesh;
}

}  // namespace

Mesh build_vertex_grid_mesh(int nx, int ny, std::span<const double> vr,
                            std::span<const double> vz, int m) {
  if (nx < 1 || ny < 1) throw std::invalid_argument("mesh: nx, ny must be >= 1");
  if (m < 1) throw std::invalid_argument("mesh: order must be >= 1");
  assert(static_cast<int>(vr.size()) == (nx + 1) * (ny + 1));
  Mesh mesh = structured_skeleton(nx, ny, m);
  const Rule1d lob = gauss_lobatto_1d(m + 1);
  const int ngx = nx * m + 1;
  // place dofs by the bilinear map of each element's corner quad; shared
  // edges are straight, so neighbours agree on shared dofs
  for (int ey = 0; ey < ny; ++ey) {
    for (int ex = 0; ex < nx; ++ex) {
      const int v00 = ey * (nx + 1) + ex;
      const int v10 = v00 + 1;
      const int v01 = v00 + (nx + 1);
      const int v11 = v01 + 1;
      for (int j = 0; j <= m; ++j) {
        for (int i = 0; i <= m; ++i) {
          const double a = 0.5 * (1.0 + lob.x[i]);  // [0,1] along xi
          const double b = 0.5 * (1.0 + lob.x[j]);
          const int gid = (ey * m + j) * ngx + (ex * m + i);
          mesh.r[gid] = (1 - a) * (1 - b) * vr[v00] + a * (1 - b) * vr[v10] +
                        (1 - a) * b * vr[v01] + a * b * vr[v11];
          mesh.z[gid] = (1 - a) * (1 - b) * vz[v00] + a * (1 - b) * vz[v10] +
                        (1 - a) * b * vz[v01] + a * b * vz[v11];
        }
      }
    }
  }
  return mesh;
}

Mesh build_cartesian_mesh(int nx, int ny, Rect domain, int m) {
  if (domain.r1 <= domain.r0 || domain.z1 <= domain.z0)
    throw std::invalid_argument("mesh: degenerate domain");
  std::vector<double> vr((nx + 1) * (ny + 1)), vz((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      vr[j * (nx + 1) + i] = domain.r0 + (domain.r1 - domain.r0) * i / nx;
      vz[j * (nx + 1) + i] = domain.z0 + (domain.z1 - domain.z0) * j / ny;
    }
  }
  return build_vertex_grid_mesh(nx, ny, vr, vz, m);
}

namespace {

// geometric-grading ratio g for `cols` widths summing to `total` with the
// last width equal to `last`: last*(g^cols - 1)/(g^(cols-1)*(g-1)) = total
double solve_grading_ratio(int cols, double total, double last) {
  auto total_of = [&](double g) {
    if (std::abs(g - 1.0) < 1e-13) return last * cols;
    return last * (std::pow(g, cols) - 1.0) / (std::pow(g, cols - 1) * (g - 1.0));
  };
  // total_of is decreasing in g; bracket and bisect
  double lo = 0.2, hi = 5.0;
  if (total_of(lo) < total || total_of(hi) > total)
    throw std::invalid_argument("dm mesh: grading target incompatible with region width");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (total_of(mid) > total)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace

Mesh build_dm_mesh(int m, double grading) {
  if (grading <= 0) throw std::invalid_argument("dm mesh: grading must be positive");
  const int nx = DM_LEFT_COLS + DM_RIGHT_COLS;
  const int ny = DM_ROWS;
  const double dy = DM_HEIGHT / ny;
  const double slope = 1.0 / std::sqrt(3.0);  // dx per dz of the 60-degree interface
  const double wright = 2.0 / DM_RIGHT_COLS;  // uniform parallelogram column width
  std::vector<double> vr((nx + 1) * (ny + 1)), vz((nx + 1) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    const double y = dy * j;
    const double xi = DM_INTERFACE_X0 + slope * y;  // interface position at this row
    const double g = solve_grading_ratio(DM_LEFT_COLS, xi, grading);
    const double w0 = grading / std::pow(g, DM_LEFT_COLS - 1);
    double x = 0.0;
    double w = w0;
    for (int i = 0; i <= nx; ++i) {
      vr[j * (nx + 1) + i] = (i <= DM_LEFT_COLS) ? x : xi + wright * (i - DM_LEFT_COLS);
      vz[j * (nx + 1) + i] = y;
      if (i < DM_LEFT_COLS) {
        x += w;
        w *= g;
      }
    }
    vr[j * (nx + 1) + DM_LEFT_COLS] = xi;  // exact interface, no accumulation drift
  }
  return build_vertex_grid_mesh(nx, ny, vr, vz, m);
}

void gather_elem(const Mesh& mesh, int e, std::span<const double> field, std::span<double> out) {
  const auto dofs = mesh.elem_dofs(e);
  for (size_t i = 0; i < dofs.size(); ++i) out[i] = field[dofs[i]];
}

Jac2 jacobian_point(const ShapeTable& g, int q, std::span<const double> er,
                    std::span<const double> ez) {
  Jac2 J;
  for (int i = 0; i < g.nfun; ++i) {
    const double dxi = g.gx(q, i);
    const double deta = g.gy(q, i);
    J.j11 += er[i] * dxi;
    J.j12 += er[i] * deta;
    J.j21 += ez[i] * dxi;
    J.j22 += ez[i] * deta;
  }
  J.det = J.j11 * J.j22 - J.j12 * J.j21;
  return J;
}

void jacobians(const ShapeTable& g, std::span<const double> er, std::span<const double> ez,
               std::span<Jac2> out) {
  for (int q = 0; q < g.npts; ++q) out[q] = jacobian_point(g, q, er, ez);
}

GuardReport guard_jacobians(const Mesh& mesh, const BasisSet& basis, std::span<const double> r,
                            std::span<const double> z, double floor) {
  GuardReport rep;
  rep.min_det = std::numeric_limits<double>::max();
  const int nk = mesh.nk();
  std::vector<double> er(nk), ez(nk);
  std::vector<Jac2> J(basis.nh);
  for (int e = 0; e < mesh.n_elems; ++e) {
    gather_elem(mesh, e, r, er);
    gather_elem(mesh, e, z, ez);
    jacobians(basis.kin_at_hi, er, ez, J);
    for (int q = 0; q < basis.nh; ++q) {
      rep.min_det = std::min(rep.min_det, J[q].det);
      if (J[q].det <= floor) rep.failures.emplace_back(e, q);
    }
  }
  rep.ok = rep.failures.empty();
  return rep;
}

InitialGeometry snapshot_initial_geometry(const Mesh& mesh, const BasisSet& basis,
                                          std::span<const double> rho0_lo,
                                          std::span<const double> rho0_hi) {
  InitialGeometry geo;
  geo.n_elems = mesh.n_elems;
  geo.nt = basis.nt;
  geo.nh = basis.nh;
  geo.detj0_lo.resize(static_cast<size_t>(mesh.n_elems) * basis.nt);
  geo.mass_lo.resize(geo.detj0_lo.size());
  geo.j0_hi.resize(static_cast<size_t>(mesh.n_elems) * basis.nh);
  geo.detj0_hi.resize(geo.j0_hi.size());
  geo.mass_hi.resize(geo.j0_hi.size());
  geo.detj_scale = std::numeric_limits<double>::max();
  const int nk = mesh.nk();
  std::vector<double> er(nk), ez(nk);
  std::vector<Jac2> J(std::max(basis.nt, basis.nh));
  for (int e = 0; e < mesh.n_elems; ++e) {
    gather_elem(mesh, e, mesh.r, er);
    gather_elem(mesh, e, mesh.z, ez);
    jacobians(basis.kin_at_lo, er, ez, std::span<Jac2>(J.data(), basis.nt));
    for (int q = 0; q < basis.nt; ++q) {
      const size_t k = static_cast<size_t>(e) * basis.nt + q;
      if (J[q].det <= 0) throw std::runtime_error("initial mesh has nonpositive detJ");
      geo.detj0_lo[k] = J[q].det;
      geo.mass_lo[k] = rho0_lo[k] * J[q].det;
      geo.detj_scale = std::min(geo.detj_scale, J[q].det);
    }
    jacobians(basis.kin_at_hi, er, ez, std::span<Jac2>(J.data(), basis.nh));
    for (int q = 0; q < basis.nh; ++q) {
      const size_t k = static_cast<size_t>(e) * basis.nh + q;
      if (J[q].det <= 0) throw std::runtime_error("initial mesh has nonpositive detJ");
      geo.j0_hi[k] = J[q];
      geo.detj0_hi[k] = J[q].det;
      geo.mass_hi[k] = rho0_hi[k] * J[q].det;
      geo.detj_scale = std::min(geo.detj_scale, J[q].det);
    }
  }
  return geo;
}

}  // namespace sgh
