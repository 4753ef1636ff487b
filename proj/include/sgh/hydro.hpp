#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sgh/hourglass.hpp"
#include "sgh/mesh.hpp"
#include "sgh/state.hpp"
#include "sgh/viscosity.hpp"

namespace sgh {

// per-dof velocity constraints: walls pin one component to 0, pistons and
// prescribed-inflow boundaries pin a component to a constant value
struct BoundaryCondition {
  std::vector<uint8_t> mask;  // bit 0: u constrained, bit 1: v constrained
  std::vector<double> uval;
  std::vector<double> vval;

  void resize(int n) {
    mask.assign(n, 0);
    uval.assign(n, 0.0);
    vval.assign(n, 0.0);
  }
  void fix_u(int dof, double val) {
    mask[dof] |= 1;
    uval[dof] = val;
  }
  void fix_v(int dof, double val) {
    mask[dof] |= 2;
    vval[dof] = val;
  }
};

// initial data bundle consumed by the solver
struct InitialState {
  std::vector<double> u, v;                      // per kinematic dof
  std::vector<double> rho_lo, rho_hi, rho_lob;   // rho0 at the three rules
  std::vector<double> e;                         // per element x m^2
  std::vector<double> gamma;                     // per element
  BoundaryCondition bc;
  std::function<double(double, double)> energy_source;  // de/dt per unit mass at (r,z)
};

struct SolverOptions {
  bool hourglass = true;
  bool viscosity = true;
  ViscForm form = ViscForm::Symmetric;
  double c1 = 0.5;
  double c2 = 2.0;
  double cfl = 0.5;
  double hg_scale = 1.0;
  bool q1_energy_shapes = false;  // energy-shape stability switch (order 2 only)
  double detj_floor_rel = 1e-12;  // times the initial detJ scale
  double drho_abort_factor = 10.0;
  long max_energy_clamps = 10000000;
  int threads = 1;
};

// fatal state errors carry the offending element/point for diagnostics
struct SolverAbort : std::runtime_error {
  int elem = -1, point = -1;
  SolverAbort(const std::string& msg, int e, int q) : std::runtime_error(msg), elem(e), point(q) {}
};

class Solver {
 public:
  Solver(Mesh mesh, InitialState init, SolverOptions opt);
  ~Solver();
  Solver(const Solver&) = delete;
  Solver& operator=(const Solver&) = delete;

  // CFL sound-speed/viscosity bound; growth limiting and output clipping are
  // the driver's concern
  double compute_dt();

  // two-stage midpoint update; forces recomputed at both stages
  void step(double dt);

  // observables
  double total_kinetic() const;
  double total_internal() const;
  double total_mass() const;
  double min_detj() const { return diag_min_detj_; }
  double max_abs_drho() const { return diag_max_drho_; }
  long energy_clamp_count() const { return e_clamps_; }

  // max over elements (all nodes within radius_limit of the origin) of the
  // Q^1 least-squares position-fit residual, normalized by element diameter
  double mesh_distortion(double radius_limit) const;

  // L2 norm of (rho_hi - ref) integrated with the (m+1)^2 rule
  double l2_density_error(const std::function<double(double, double)>& rho_ref) const;

  // state access
  const Mesh& mesh() const { return mesh_; }
  const BasisSet& basis() const { return basis_; }
  const ThermoField& thermo() const { return thermo_; }
  const std::vector<double>& r() const { return r_; }
  const std::vector<double>& z() const { return z_; }
  const std::vector<double>& u() const { return u_; }
  const std::vector<double>& v() const { return v_; }
  const std::vector<double>& nodal_mass() const { return mass_kin_; }
  const std::vector<double>& thermo_mass() const { return mass_th_; }
  const InitialGeometry& initial_geometry() const { return geo0_; }
  const SolverOptions& options() const { return opt_; }

  // physical positions of the thermodynamic dofs on the current mesh
  void thermo_positions(std::vector<double>& pr, std::vector<double>& pz) const;

  // derivative evaluation at the current state (exposed for property tests):
  // fills nodal accelerations (boundary-masked), per-thermo-dof energy rates,
  // and the assembled nodal force before masking
  void eval_derivatives(std::vector<double>& au, std::vector<double>& av,
                        std::vector<double>& edot, std::vector<double>* force_r = nullptr,
                        std::vector<double>* force_z = nullptr);

  // re-derive densities and EOS fields from current geometry
  void refresh_thermo();

 private:
  struct ElemWork;

  void element_derivatives(int e, ElemWork& w);
  void apply_velocity_bc();

  Mesh mesh_;
  BasisSet basis_;
  SolverOptions opt_;
  InitialGeometry geo0_;
  BoundaryCondition bc_;
  std::function<double(double, double)> source_;

  std::vector<double> r_, z_, u_, v_;
  ThermoField thermo_;
  std::vector<double> mass_kin_;   // lumped nodal masses
  std::vector<double> mass_th_;    // diagonal thermodynamic masses, n_elems x m^2
  std::vector<double> q1_at_hi_;   // vertex-based bilinear shapes at the high rule (order 2)

  // per-element derivative buffers (assembled serially for determinism)
  std::vector<double> fbuf_r_, fbuf_z_;  // n_elems x nk
  std::vector<double> edot_buf_;         // n_elems x nt
  std::vector<double> elem_min_detj_, elem_max_drho_;
  std::vector<int> elem_fail_det_, elem_fail_drho_;  // failing point + 1, or 0
  std::vector<double> elem_fail_det_val_;

  std::vector<ElemWork> work_;  // one workspace per thread

  // step scratch
  std::vector<double> r0_, z0_, u0_, v0_, e0_, au_, av_, edot_;

  double detj_floor_ = 0.0;
  double diag_min_detj_ = 0.0;
  double diag_max_drho_ = 0.0;
  long e_clamps_ = 0;
};

}  // namespace sgh
