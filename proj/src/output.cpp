#include "sgh/output.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace sgh {

namespace {

std::FILE* open_or_throw(const std::string& path) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("cannot open for writing: " + path);
  return f;
}

}  // namespace

void write_vtk(const std::string& path, const Solver& s) {
  const Mesh& mesh = s.mesh();
  const int m = mesh.order, n1 = m + 1;
  const int ncells = mesh.n_elems * m * m;

  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "# vtk DataFile Version 3.0\n");
  std::fprintf(f, "sgh snapshot\n");
  std::fprintf(f, "ASCII\n");
  std::fprintf(f, "DATASET UNSTRUCTURED_GRID\n");

  std::fprintf(f, "POINTS %d double\n", mesh.n_kin);
  for (int i = 0; i < mesh.n_kin; ++i)
    std::fprintf(f, "%.17g %.17g 0\n", s.r()[i], s.z()[i]);

  std::fprintf(f, "CELLS %d %d\n", ncells, 5 * ncells);
  for (int e = 0; e < mesh.n_elems; ++e) {
    auto dofs = mesh.elem_dofs(e);
    for (int jy = 0; jy < m; ++jy) {
      for (int jx = 0; jx < m; ++jx) {
        const int a = jy * n1 + jx, b = jy * n1 + jx + 1;
        const int c = (jy + 1) * n1 + jx + 1, d = (jy + 1) * n1 + jx;
        std::fprintf(f, "4 %d %d %d %d\n", dofs[a], dofs[b], dofs[c], dofs[d]);
      }
    }
  }
  std::fprintf(f, "CELL_TYPES %d\n", ncells);
  for (int c = 0; c < ncells; ++c) std::fprintf(f, "9\n");

  std::fprintf(f, "POINT_DATA %d\n", mesh.n_kin);
  std::fprintf(f, "VECTORS velocity double\n");
  for (int i = 0; i < mesh.n_kin; ++i)
    std::fprintf(f, "%.17g %.17g 0\n", s.u()[i], s.v()[i]);

  const ThermoField& th = s.thermo();
  const int nt = m * m;
  auto cell_scalar = [&](const char* name, const std::vector<double>& field) {
    std::fprintf(f, "SCALARS %s double 1\n", name);
    std::fprintf(f, "LOOKUP_TABLE default\n");
    for (int e = 0; e < mesh.n_elems; ++e)
      for (int l = 0; l < nt; ++l)
        std::fprintf(f, "%.17g\n", field[static_cast<size_t>(e) * nt + l]);
  };
  std::fprintf(f, "CELL_DATA %d\n", ncells);
  cell_scalar("density", th.rho);
  cell_scalar("pressure", th.p);
  cell_scalar("internal_energy", th.e);
  std::fclose(f);
}

void write_scatter_csv(const std::string& path, const Solver& s) {
  std::vector<double> pr, pz;
  s.thermo_positions(pr, pz);
  const ThermoField& th = s.thermo();
  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "r,z,radius,rho,p,e\n");
  for (size_t l = 0; l < pr.size(); ++l)
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", pr[l], pz[l],
                 std::hypot(pr[l], pz[l]), th.rho[l], th.p[l], th.e[l]);
  std::fclose(f);
}

void write_radial_reference_csv(const std::string& path, const Problem& pb, double t,
                                double radius_max, int samples) {
  if (!pb.radial_density_ref) return;
  std::FILE* f = open_or_throw(path);
  std::fprintf(f, "radius,rho\n");
  for (int i = 1; i <= samples; ++i) {
    const double radius = radius_max * i / samples;
    std::fprintf(f, "%.17g,%.17g\n", radius, pb.radial_density_ref(radius, t));
  }
  std::fclose(f);
}

AuditWriter::AuditWriter(const std::string& path) : f_(open_or_throw(path)) {
  std::fprintf(f_,
               "step,t,dt,kinetic,internal,total_energy,total_mass,max_abs_drho,min_detj,"
               "mesh_distortion,wall_ms\n");
}

AuditWriter::~AuditWriter() {
  if (f_) std::fclose(f_);
}

void AuditWriter::row(int step, double t, double dt, const Solver& s, double wall_ms) {
  const double ke = s.total_kinetic(), ie = s.total_internal();
  std::fprintf(f_, "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n", step, t,
               dt, ke, ie, ke + ie, s.total_mass(), s.max_abs_drho(), s.min_detj(),
               s.mesh_distortion(std::numeric_limits<double>::infinity()), wall_ms);
  std::fflush(f_);
}

}  // namespace sgh
