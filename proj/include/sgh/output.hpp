#pragma once

#include <cstdio>
#include <string>

#include "sgh/hydro.hpp"
#include "sgh/problems.hpp"

namespace sgh {

// legacy ASCII VTK snapshot: points are the kinematic dofs, each element is
// subdivided into m x m straight-sided quads, one thermodynamic point per
// subcell for the cell data
void write_vtk(const std::string& path, const Solver& s);

// (r, z, radius, rho, p, e) at the thermodynamic dofs on the current mesh
void write_scatter_csv(const std::string& path, const Solver& s);

// analytic density-vs-radius curve, when the problem has one
void write_radial_reference_csv(const std::string& path, const Problem& pb, double t,
                                double radius_max, int samples);

// per-step energy/mass audit stream
class AuditWriter {
 public:
  explicit AuditWriter(const std::string& path);
  ~AuditWriter();
  AuditWriter(const AuditWriter&) = delete;
  AuditWriter& operator=(const AuditWriter&) = delete;

  void row(int step, double t, double dt, const Solver& s, double wall_ms);

 private:
  std::FILE* f_ = nullptr;
};

}  // namespace sgh
