#include "sgh/hydro.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace sgh {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long clamp_negative(std::vector<double>& e) {
  long c = 0;
  for (double& x : e) {
    if (x < 0.0) {
      x = 0.0;
      ++c;
    }
  }
  return c;
}

}  // namespace

struct Solver::ElemWork {
  std::vector<double> er, ez, eu, ev;  // gathered nodal data
  std::vector<Jac2> J_lo, J_hi;
  std::vector<GradPoint> G_lo, G_hi;
  std::vector<double> det_lo, det_hi;
  std::vector<double> wp;  // pressure work density at the m^2 points
  std::vector<double> drho, cs_hi, dp, mu, wv, work_hi;

  ElemWork(int nk, int nt, int nh)
      : er(nk), ez(nk), eu(nk), ev(nk), J_lo(nt), J_hi(nh), G_lo(nt), G_hi(nh), det_lo(nt),
        det_hi(nh), wp(nt), drho(nh), cs_hi(nh), dp(nh), mu(nh), wv(nh), work_hi(nh) {}
};

Solver::~Solver() = default;

Solver::Solver(Mesh mesh, InitialState init, SolverOptions opt)
    : mesh_(std::move(mesh)),
      basis_(build_basis(mesh_.order)),
      opt_(opt),
      bc_(std::move(init.bc)),
      source_(std::move(init.energy_source)) {
  const int nk = basis_.nk, nt = basis_.nt, nh = basis_.nh;
  const size_t ne = static_cast<size_t>(mesh_.n_elems);

  auto expect = [](size_t got, size_t want, const char* what) {
    if (got != want) throw std::invalid_argument(std::string("initial state size mismatch: ") + what);
  };
  expect(init.u.size(), mesh_.n_kin, "u");
  expect(init.v.size(), mesh_.n_kin, "v");
  expect(init.rho_lo.size(), ne * nt, "rho_lo");
  expect(init.rho_hi.size(), ne * nh, "rho_hi");
  expect(init.rho_lob.size(), ne * nh, "rho_lob");
  expect(init.e.size(), ne * nt, "e");
  expect(init.gamma.size(), ne, "gamma");
  for (double e0 : init.e)
    if (e0 < 0.0) throw std::invalid_argument("negative initial internal energy");
  if (bc_.mask.empty()) bc_.resize(mesh_.n_kin);
  expect(bc_.mask.size(), mesh_.n_kin, "bc");

  r_ = mesh_.r;
  z_ = mesh_.z;
  u_ = std::move(init.u);
  v_ = std::move(init.v);

  geo0_ = snapshot_initial_geometry(mesh_, basis_, init.rho_lo, init.rho_hi);
  detj_floor_ = opt_.detj_floor_rel * geo0_.detj_scale;

  thermo_.resize(mesh_.n_elems, nt, nh);
  thermo_.e = std::move(init.e);
  thermo_.gamma = std::move(init.gamma);

  // diagonal thermodynamic masses, constant in time
  mass_th_.resize(ne * nt);
  for (size_t e = 0; e < ne; ++e)
    for (int l = 0; l < nt; ++l) mass_th_[e * nt + l] = basis_.q_lo.w[l] * geo0_.mass_lo[e * nt + l];

  // lumped kinematic masses: Lobatto collocation of rho0 detJ0, accumulated
  // over shared dofs, never updated afterwards
  mass_kin_.assign(mesh_.n_kin, 0.0);
  {
    std::vector<double> er(nk), ez(nk);
    std::vector<Jac2> J(nh);
    for (int e = 0; e < mesh_.n_elems; ++e) {
      gather_elem(mesh_, e, mesh_.r, er);
      gather_elem(mesh_, e, mesh_.z, ez);
      jacobians(basis_.kin_at_lob, er, ez, J);
      auto dofs = mesh_.elem_dofs(e);
      for (int q = 0; q < nh; ++q) {
        if (J[q].det <= 0.0) throw std::runtime_error("nonpositive initial jacobian at a mass-lumping point");
        mass_kin_[dofs[q]] += basis_.q_lob.w[q] * init.rho_lob[static_cast<size_t>(e) * nh + q] * J[q].det;
      }
    }
  }

  // vertex-based bilinear energy shapes, usable for the order-2 pair where
  // thermo dofs and vertices pair up one-to-one
  if (basis_.order == 2) {
    const double corners[2] = {-1.0, 1.0};
    q1_at_hi_ = tabulate(corners, basis_.q_hi).val;
  }

  fbuf_r_.assign(ne * nk, 0.0);
  fbuf_z_.assign(ne * nk, 0.0);
  edot_buf_.assign(ne * nt, 0.0);
  elem_min_detj_.assign(ne, 0.0);
  elem_max_drho_.assign(ne, 0.0);
  elem_fail_det_.assign(ne, 0);
  elem_fail_drho_.assign(ne, 0);
  elem_fail_det_val_.assign(ne, 0.0);

  int threads = std::max(1, opt_.threads);
  work_.reserve(threads);
  for (int t = 0; t < threads; ++t) work_.emplace_back(nk, nt, nh);

  apply_velocity_bc();
  refresh_thermo();
}

void Solver::apply_velocity_bc() {
  for (int i = 0; i < mesh_.n_kin; ++i) {
    if (bc_.mask[i] & 1) u_[i] = bc_.uval[i];
    if (bc_.mask[i] & 2) v_[i] = bc_.vval[i];
  }
}

void Solver::element_derivatives(int e, ElemWork& w) {
  const int nk = basis_.nk, nt = basis_.nt, nh = basis_.nh;
  const size_t ot = static_cast<size_t>(e) * nt, oh = static_cast<size_t>(e) * nh;

  double* fr = fbuf_r_.data() + static_cast<size_t>(e) * nk;
  double* fz = fbuf_z_.data() + static_cast<size_t>(e) * nk;
  std::fill(fr, fr + nk, 0.0);
  std::fill(fz, fz + nk, 0.0);
  double* edot = edot_buf_.data() + ot;
  std::fill(edot, edot + nt, 0.0);
  elem_fail_det_[e] = 0;
  elem_fail_drho_[e] = 0;
  elem_max_drho_[e] = 0.0;

  gather_elem(mesh_, e, r_, w.er);
  gather_elem(mesh_, e, z_, w.ez);
  gather_elem(mesh_, e, u_, w.eu);
  gather_elem(mesh_, e, v_, w.ev);

  jacobians(basis_.kin_at_lo, w.er, w.ez, w.J_lo);
  jacobians(basis_.kin_at_hi, w.er, w.ez, w.J_hi);
  double mindet = kInf;
  for (int q = 0; q < nt; ++q) {
    w.det_lo[q] = w.J_lo[q].det;
    mindet = std::min(mindet, w.det_lo[q]);
    if (w.det_lo[q] <= detj_floor_ && !elem_fail_det_[e]) {
      elem_fail_det_[e] = q + 1;
      elem_fail_det_val_[e] = w.det_lo[q];
    }
  }
  for (int q = 0; q < nh; ++q) {
    w.det_hi[q] = w.J_hi[q].det;
    mindet = std::min(mindet, w.det_hi[q]);
    if (w.det_hi[q] <= detj_floor_ && !elem_fail_det_[e]) {
      elem_fail_det_[e] = q + 1;
      elem_fail_det_val_[e] = w.det_hi[q];
    }
  }
  elem_min_detj_[e] = mindet;
  if (elem_fail_det_[e]) return;  // results unusable, caller aborts

  double* rho = thermo_.rho.data() + ot;
  double* p = thermo_.p.data() + ot;
  double* cs = thermo_.cs.data() + ot;
  double* rho_hi = thermo_.rho_hi.data() + oh;
  const double* en = thermo_.e.data() + ot;

  update_density_strong({geo0_.mass_lo.data() + ot, static_cast<size_t>(nt)}, w.det_lo,
                        {rho, static_cast<size_t>(nt)}, {geo0_.mass_hi.data() + oh, static_cast<size_t>(nh)},
                        w.det_hi, {rho_hi, static_cast<size_t>(nh)});
  update_eos({rho, static_cast<size_t>(nt)}, {en, static_cast<size_t>(nt)}, thermo_.gamma[e],
             {p, static_cast<size_t>(nt)}, {cs, static_cast<size_t>(nt)});

  // pressure force and its work density at the m^2 points
  scaled_velocity_gradients(basis_.kin_at_lo, w.J_lo, w.eu, w.ev, w.G_lo);
  for (int q = 0; q < nt; ++q) {
    const double c = basis_.q_lo.w[q] * p[q];
    for (int j = 0; j < nk; ++j) {
      double gr, gz;
      scaled_grad(w.J_lo[q], basis_.kin_at_lo.gx(q, j), basis_.kin_at_lo.gy(q, j), gr, gz);
      fr[j] += c * gr;
      fz[j] += c * gz;
    }
    w.wp[q] = p[q] * w.G_lo[q].trace();
  }

  density_variation(basis_.m_interp, nh, nt, {rho, static_cast<size_t>(nt)},
                    {rho_hi, static_cast<size_t>(nh)}, w.drho);
  double maxdrho = 0.0;
  int argmax = 0;
  for (int q = 0; q < nh; ++q) {
    if (std::abs(w.drho[q]) > maxdrho) {
      maxdrho = std::abs(w.drho[q]);
      argmax = q;
    }
  }
  elem_max_drho_[e] = maxdrho;
  if (opt_.hourglass) {
    double mass = 0.0, vol = 0.0, vol0 = 0.0;
    for (int l = 0; l < nt; ++l) {
      mass += basis_.q_lo.w[l] * geo0_.mass_lo[ot + l];
      vol += basis_.q_lo.w[l] * w.det_lo[l];
      vol0 += basis_.q_lo.w[l] * geo0_.detj0_lo[ot + l];
    }
    // scale by the larger of the initial and current mean density: strong
    // expansion (Sedov source) or compression legitimately grows |drho|
    // relative to one of the two, a true singularity outruns both
    const double mean = mass / std::min(vol, vol0);
    if (maxdrho > opt_.drho_abort_factor * mean) elem_fail_drho_[e] = argmax + 1;
  }

  const bool need_hi = opt_.hourglass || opt_.viscosity;
  std::fill(w.work_hi.begin(), w.work_hi.end(), 0.0);
  if (need_hi) {
    pressure_variation(basis_.m_interp, nh, nt, {cs, static_cast<size_t>(nt)}, w.drho, w.cs_hi, w.dp);
    scaled_velocity_gradients(basis_.kin_at_hi, w.J_hi, w.eu, w.ev, w.G_hi);
  }

  if (opt_.hourglass) {
    hourglass_force(basis_.kin_at_hi, basis_.q_hi.w, w.J_hi, w.dp, opt_.hg_scale,
                    {fr, static_cast<size_t>(nk)}, {fz, static_cast<size_t>(nk)});
    for (int q = 0; q < nh; ++q) w.work_hi[q] = opt_.hg_scale * w.dp[q] * w.G_hi[q].trace();
  }

  if (opt_.viscosity) {
    for (int q = 0; q < nh; ++q) {
      const GradPoint& G = w.G_hi[q];
      const double det = w.det_hi[q];
      EigMin eg = min_eig_2x2(G.ur / det, 0.5 * (G.uz + G.vr) / det, G.vz / det);
      const double cvor = vorticity_factor(G.ur, G.uz, G.vr, G.vz);
      const double lc = characteristic_length(geo0_.j0_hi[oh + q], w.J_hi[q], eg.e1, eg.e2,
                                              basis_.q_hi.w[q]);
      w.mu[q] = viscosity_mu(rho_hi[q], w.cs_hi[q], lc, eg.lam, cvor, opt_.c1, opt_.c2);
    }
    viscous_force(basis_.kin_at_hi, basis_.q_hi.w, w.J_hi, w.G_hi, w.mu, opt_.form,
                  {fr, static_cast<size_t>(nk)}, {fz, static_cast<size_t>(nk)}, w.wv);
    for (int q = 0; q < nh; ++q) w.work_hi[q] += w.wv[q];
  }

  // compatible energy rates: the pressure work collocates at the m^2 points,
  // the hourglass/viscous work is distributed through the energy shapes
  const double* phi = (opt_.q1_energy_shapes && basis_.order == 2) ? q1_at_hi_.data()
                                                                   : basis_.m_interp.data();
  for (int l = 0; l < nt; ++l) {
    double acc = -basis_.q_lo.w[l] * w.wp[l];
    if (need_hi)
      for (int q = 0; q < nh; ++q) acc -= basis_.q_hi.w[q] * w.work_hi[q] * phi[q * nt + l];
    edot[l] = acc / mass_th_[ot + l];
  }
  if (source_) {
    for (int l = 0; l < nt; ++l) {
      double xr = 0.0, xz = 0.0;
      for (int i = 0; i < nk; ++i) {
        xr += basis_.kin_at_lo.v(l, i) * w.er[i];
        xz += basis_.kin_at_lo.v(l, i) * w.ez[i];
      }
      edot[l] += source_(xr, xz);
    }
  }
}

void Solver::eval_derivatives(std::vector<double>& au, std::vector<double>& av,
                              std::vector<double>& edot, std::vector<double>* force_r,
                              std::vector<double>* force_z) {
  const int nk = basis_.nk;
  const int ne = mesh_.n_elems;

  const int threads = std::min<int>(static_cast<int>(work_.size()), std::max(1, ne));
  if (threads == 1) {
    for (int e = 0; e < ne; ++e) element_derivatives(e, work_[0]);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t) {
      pool.emplace_back([this, t, threads, ne]() {
        const int lo = static_cast<int>(static_cast<long>(ne) * t / threads);
        const int hi = static_cast<int>(static_cast<long>(ne) * (t + 1) / threads);
        for (int e = lo; e < hi; ++e) element_derivatives(e, work_[t]);
      });
    }
    for (auto& th : pool) th.join();
  }

  // guard scan in element order for deterministic failure reports
  for (int e = 0; e < ne; ++e) {
    if (elem_fail_det_[e]) {
      throw SolverAbort("jacobian determinant " + std::to_string(elem_fail_det_val_[e]) +
                            " at or below floor " + std::to_string(detj_floor_) + " (element " +
                            std::to_string(e) + ", point " + std::to_string(elem_fail_det_[e] - 1) +
                            ")",
                        e, elem_fail_det_[e] - 1);
    }
  }
  for (int e = 0; e < ne; ++e) {
    if (elem_fail_drho_[e]) {
      throw SolverAbort("density variation exceeds " + std::to_string(opt_.drho_abort_factor) +
                            "x the element mean density (element " + std::to_string(e) +
                            ", point " + std::to_string(elem_fail_drho_[e] - 1) + ")",
                        e, elem_fail_drho_[e] - 1);
    }
  }
  diag_min_detj_ = kInf;
  diag_max_drho_ = 0.0;
  for (int e = 0; e < ne; ++e) {
    diag_min_detj_ = std::min(diag_min_detj_, elem_min_detj_[e]);
    diag_max_drho_ = std::max(diag_max_drho_, elem_max_drho_[e]);
  }

  // serial element-ordered assembly keeps results independent of the thread
  // count
  au.assign(mesh_.n_kin, 0.0);
  av.assign(mesh_.n_kin, 0.0);
  for (int e = 0; e < ne; ++e) {
    auto dofs = mesh_.elem_dofs(e);
    const double* fr = fbuf_r_.data() + static_cast<size_t>(e) * nk;
    const double* fz = fbuf_z_.data() + static_cast<size_t>(e) * nk;
    for (int j = 0; j < nk; ++j) {
      au[dofs[j]] += fr[j];
      av[dofs[j]] += fz[j];
    }
  }
  if (force_r) *force_r = au;
  if (force_z) *force_z = av;
  edot = edot_buf_;
  for (int i = 0; i < mesh_.n_kin; ++i) {
    au[i] /= mass_kin_[i];
    av[i] /= mass_kin_[i];
    if (bc_.mask[i] & 1) au[i] = 0.0;
    if (bc_.mask[i] & 2) av[i] = 0.0;
  }
}

void Solver::refresh_thermo() {
  const int nt = basis_.nt, nh = basis_.nh;
  ElemWork& w = work_[0];
  diag_min_detj_ = kInf;
  diag_max_drho_ = 0.0;
  for (int e = 0; e < mesh_.n_elems; ++e) {
    const size_t ot = static_cast<size_t>(e) * nt, oh = static_cast<size_t>(e) * nh;
    gather_elem(mesh_, e, r_, w.er);
    gather_elem(mesh_, e, z_, w.ez);
    jacobians(basis_.kin_at_lo, w.er, w.ez, w.J_lo);
    jacobians(basis_.kin_at_hi, w.er, w.ez, w.J_hi);
    for (int q = 0; q < nt; ++q) {
      w.det_lo[q] = w.J_lo[q].det;
      if (w.det_lo[q] <= detj_floor_)
        throw SolverAbort("jacobian determinant " + std::to_string(w.det_lo[q]) +
                              " at or below floor (element " + std::to_string(e) + ", point " +
                              std::to_string(q) + ")",
                          e, q);
      diag_min_detj_ = std::min(diag_min_detj_, w.det_lo[q]);
    }
    for (int q = 0; q < nh; ++q) {
      w.det_hi[q] = w.J_hi[q].det;
      if (w.det_hi[q] <= detj_floor_)
        throw SolverAbort("jacobian determinant " + std::to_string(w.det_hi[q]) +
                              " at or below floor (element " + std::to_string(e) + ", point " +
                              std::to_string(q) + ")",
                          e, q);
      diag_min_detj_ = std::min(diag_min_detj_, w.det_hi[q]);
    }
    double* rho = thermo_.rho.data() + ot;
    double* rho_hi = thermo_.rho_hi.data() + oh;
    update_density_strong({geo0_.mass_lo.data() + ot, static_cast<size_t>(nt)}, w.det_lo,
                          {rho, static_cast<size_t>(nt)},
                          {geo0_.mass_hi.data() + oh, static_cast<size_t>(nh)}, w.det_hi,
                          {rho_hi, static_cast<size_t>(nh)});
    update_eos({rho, static_cast<size_t>(nt)}, {thermo_.e.data() + ot, static_cast<size_t>(nt)},
               thermo_.gamma[e], {thermo_.p.data() + ot, static_cast<size_t>(nt)},
               {thermo_.cs.data() + ot, static_cast<size_t>(nt)});
    density_variation(basis_.m_interp, nh, nt, {rho, static_cast<size_t>(nt)},
                      {rho_hi, static_cast<size_t>(nh)}, w.drho);
    for (int q = 0; q < nh; ++q) diag_max_drho_ = std::max(diag_max_drho_, std::abs(w.drho[q]));
  }
}

void Solver::step(double dt) {
  r0_ = r_;
  z0_ = z_;
  u0_ = u_;
  v0_ = v_;
  e0_ = thermo_.e;

  // stage 1: derivatives at t^n, advance to the midpoint
  eval_derivatives(au_, av_, edot_);
  for (int i = 0; i < mesh_.n_kin; ++i) {
    u_[i] = u0_[i] + 0.5 * dt * au_[i];
    v_[i] = v0_[i] + 0.5 * dt * av_[i];
  }
  apply_velocity_bc();
  for (int i = 0; i < mesh_.n_kin; ++i) {
    r_[i] = r0_[i] + 0.5 * dt * u0_[i];
    z_[i] = z0_[i] + 0.5 * dt * v0_[i];
  }
  for (size_t l = 0; l < thermo_.e.size(); ++l) thermo_.e[l] = e0_[l] + 0.5 * dt * edot_[l];
  e_clamps_ += clamp_negative(thermo_.e);

  // stage 2: midpoint derivatives, full update from t^n
  eval_derivatives(au_, av_, edot_);
  for (int i = 0; i < mesh_.n_kin; ++i) {
    r_[i] = r0_[i] + dt * u_[i];  // u_ holds the midpoint velocity
    z_[i] = z0_[i] + dt * v_[i];
  }
  for (int i = 0; i < mesh_.n_kin; ++i) {
    u_[i] = u0_[i] + dt * au_[i];
    v_[i] = v0_[i] + dt * av_[i];
  }
  apply_velocity_bc();
  for (size_t l = 0; l < thermo_.e.size(); ++l) thermo_.e[l] = e0_[l] + dt * edot_[l];
  e_clamps_ += clamp_negative(thermo_.e);

  refresh_thermo();
  if (e_clamps_ > opt_.max_energy_clamps)
    throw SolverAbort("internal energy clamp budget exceeded (" + std::to_string(e_clamps_) + ")",
                      -1, -1);
}

double Solver::compute_dt() {
  const int nt = basis_.nt, nh = basis_.nh;
  ElemWork& w = work_[0];
  double dtmin = kInf;
  for (int e = 0; e < mesh_.n_elems; ++e) {
    const size_t ot = static_cast<size_t>(e) * nt, oh = static_cast<size_t>(e) * nh;
    gather_elem(mesh_, e, r_, w.er);
    gather_elem(mesh_, e, z_, w.ez);
    gather_elem(mesh_, e, u_, w.eu);
    gather_elem(mesh_, e, v_, w.ev);
    jacobians(basis_.kin_at_hi, w.er, w.ez, w.J_hi);
    const double* cs = thermo_.cs.data() + ot;
    scaled_velocity_gradients(basis_.kin_at_hi, w.J_hi, w.eu, w.ev, w.G_hi);
    for (int q = 0; q < nh; ++q) {
      const double det = w.J_hi[q].det;
      if (det <= detj_floor_)
        throw SolverAbort("jacobian determinant at or below floor in time-step estimate", e, q);
      const double rho = geo0_.mass_hi[oh + q] / det;
      double csq = 0.0;
      for (int l = 0; l < nt; ++l) csq += basis_.m_interp[q * nt + l] * cs[l];
      csq = std::max(csq, 0.0);
      double mu = 0.0;
      if (opt_.viscosity) {
        const GradPoint& G = w.G_hi[q];
        EigMin eg = min_eig_2x2(G.ur / det, 0.5 * (G.uz + G.vr) / det, G.vz / det);
        const double cvor = vorticity_factor(G.ur, G.uz, G.vr, G.vz);
        const double lc = characteristic_length(geo0_.j0_hi[oh + q], w.J_hi[q], eg.e1, eg.e2,
                                                basis_.q_hi.w[q]);
        mu = viscosity_mu(rho, csq, lc, eg.lam, cvor, opt_.c1, opt_.c2);
      }
      const double lt2 = singular_length_sq(w.J_hi[q]);
      if (!(lt2 > 0.0))
        throw SolverAbort("singular jacobian in time-step estimate", e, q);
      const double denom = csq / std::sqrt(lt2) + mu / (rho * lt2);
      if (denom > 0.0) dtmin = std::min(dtmin, 1.0 / denom);
    }
  }
  return opt_.cfl * dtmin;
}

double Solver::total_kinetic() const {
  double k = 0.0;
  for (int i = 0; i < mesh_.n_kin; ++i) k += 0.5 * mass_kin_[i] * (u_[i] * u_[i] + v_[i] * v_[i]);
  return k;
}

double Solver::total_internal() const {
  double s = 0.0;
  for (size_t l = 0; l < thermo_.e.size(); ++l) s += mass_th_[l] * thermo_.e[l];
  return s;
}

double Solver::total_mass() const {
  const int nt = basis_.nt;
  std::vector<double> er(basis_.nk), ez(basis_.nk);
  std::vector<Jac2> J(nt);
  double m = 0.0;
  for (int e = 0; e < mesh_.n_elems; ++e) {
    gather_elem(mesh_, e, r_, er);
    gather_elem(mesh_, e, z_, ez);
    jacobians(basis_.kin_at_lo, er, ez, J);
    for (int q = 0; q < nt; ++q)
      m += basis_.q_lo.w[q] * thermo_.rho[static_cast<size_t>(e) * nt + q] * J[q].det;
  }
  return m;
}

double Solver::mesh_distortion(double radius_limit) const {
  // deviation of each dof from the hourglass-filtered position field: the
  // filter replaces a node by the midpoint of its two neighbors along each
  // logical grid line, and only the component perpendicular to the chord
  // counts, so smooth curvilinear bending (sagitta ~ curvature * spacing^2)
  // stays small while sawtooth node lines register at the zigzag amplitude.
  // Normalized by the half-chord to be resolution-independent.
  const int ngx = mesh_.order * mesh_.nx + 1;
  const int ngy = mesh_.order * mesh_.ny + 1;
  auto dev = [&](int i, int prev, int next) {
    const double cr = r_[next] - r_[prev], cz = z_[next] - z_[prev];
    const double c2 = cr * cr + cz * cz;
    if (c2 <= 0.0) return 0.0;
    const double dr = r_[i] - 0.5 * (r_[prev] + r_[next]);
    const double dz = z_[i] - 0.5 * (z_[prev] + z_[next]);
    const double perp = std::abs(dr * cz - dz * cr) / std::sqrt(c2);
    return perp / (0.5 * std::sqrt(c2));
  };
  double worst = 0.0;
  for (int gy = 0; gy < ngy; ++gy)
    for (int gx = 0; gx < ngx; ++gx) {
      const int i = gy * ngx + gx;
      if (std::hypot(r_[i], z_[i]) > radius_limit) continue;
      if (gx > 0 && gx < ngx - 1) worst = std::max(worst, dev(i, i - 1, i + 1));
      if (gy > 0 && gy < ngy - 1) worst = std::max(worst, dev(i, i - ngx, i + ngx));
    }
  return worst;
}

double Solver::l2_density_error(const std::function<double(double, double)>& rho_ref) const {
  const int nk = basis_.nk, nt = basis_.nt, nh = basis_.nh;
  std::vector<double> er(nk), ez(nk);
  std::vector<Jac2> J(nh);
  double s = 0.0;
  for (int e = 0; e < mesh_.n_elems; ++e) {
    gather_elem(mesh_, e, r_, er);
    gather_elem(mesh_, e, z_, ez);
    jacobians(basis_.kin_at_hi, er, ez, J);
    const double* rho = thermo_.rho.data() + static_cast<size_t>(e) * nt;
    for (int q = 0; q < nh; ++q) {
      double xr = 0.0, xz = 0.0;
      for (int i = 0; i < nk; ++i) {
        xr += basis_.kin_at_hi.v(q, i) * er[i];
        xz += basis_.kin_at_hi.v(q, i) * ez[i];
      }
      // evaluate the Q^{m-1} density solution itself at the integration points
      double ph = 0.0;
      for (int l = 0; l < nt; ++l) ph += basis_.m_interp[static_cast<size_t>(q) * nt + l] * rho[l];
      const double d = ph - rho_ref(xr, xz);
      s += basis_.q_hi.w[q] * d * d * J[q].det;
    }
  }
  return std::sqrt(s);
}

void Solver::thermo_positions(std::vector<double>& pr, std::vector<double>& pz) const {
  const int nk = basis_.nk, nt = basis_.nt;
  pr.assign(static_cast<size_t>(mesh_.n_elems) * nt, 0.0);
  pz.assign(static_cast<size_t>(mesh_.n_elems) * nt, 0.0);
  std::vector<double> er(nk), ez(nk);
  for (int e = 0; e < mesh_.n_elems; ++e) {
    gather_elem(mesh_, e, r_, er);
    gather_elem(mesh_, e, z_, ez);
    for (int l = 0; l < nt; ++l) {
      double xr = 0.0, xz = 0.0;
      for (int i = 0; i < nk; ++i) {
        xr += basis_.kin_at_lo.v(l, i) * er[i];
        xz += basis_.kin_at_lo.v(l, i) * ez[i];
      }
      pr[static_cast<size_t>(e) * nt + l] = xr;
      pz[static_cast<size_t>(e) * nt + l] = xz;
    }
  }
}

}  // namespace sgh
