#include "ldirk/integrators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldirk/limiter.hpp"

namespace ldirk {

// --- flattening --------------------------------------------------------------

Vec flatten(const Field1D& f) {
  Vec out(static_cast<std::size_t>(f.ncomp()) * f.n());
  flatten(f, out);
  return out;
}

void flatten(const Field1D& f, Vec& out) {
  const int m = f.ncomp();
  out.resize(static_cast<std::size_t>(m) * f.n());
  for (int j = 0; j < f.n(); ++j) {
    for (int c = 0; c < m; ++c) out[static_cast<std::size_t>(j) * m + c] = f(c, j);
  }
}

void unflatten(const Vec& v, Field1D& f) {
  const int m = f.ncomp();
  for (int j = 0; j < f.n(); ++j) {
    for (int c = 0; c < m; ++c) f(c, j) = v[static_cast<std::size_t>(j) * m + c];
  }
}

Vec flatten(const Field2D& f) {
  Vec out(static_cast<std::size_t>(f.ncomp()) * f.nx() * f.ny());
  flatten(f, out);
  return out;
}

void flatten(const Field2D& f, Vec& out) {
  const int m = f.ncomp();
  const int nx = f.nx();
  out.resize(static_cast<std::size_t>(m) * nx * f.ny());
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t node = static_cast<std::size_t>(j) * nx + i;
      for (int c = 0; c < m; ++c) out[node * m + c] = f(c, i, j);
    }
  }
}

void unflatten(const Vec& v, Field2D& f) {
  const int m = f.ncomp();
  const int nx = f.nx();
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t node = static_cast<std::size_t>(j) * nx + i;
      for (int c = 0; c < m; ++c) f(c, i, j) = v[node * m + c];
    }
  }
}

// --- ODE systems --------------------------------------------------------------

OdeSystem make_ode_system(const Op1D& op) {
  auto work = std::make_shared<Field1D>(op.ncomp(), op.grid().n);
  auto L = std::make_shared<Field1D>(op.ncomp(), op.grid().n);
  OdeSystem sys;
  sys.size = op.ncomp() * op.grid().n;
  sys.rhs = [&op, work, L](const Vec& v, Vec& out) {
    unflatten(v, *work);
    op.rhs(*work, *L);
    flatten(*L, out);
  };
  return sys;
}

OdeSystem make_ode_system(const Op2D& op) {
  auto work = std::make_shared<Field2D>(op.ncomp(), op.grid().x.n, op.grid().y.n);
  auto L = std::make_shared<Field2D>(op.ncomp(), op.grid().x.n, op.grid().y.n);
  OdeSystem sys;
  sys.size = op.ncomp() * op.grid().x.n * op.grid().y.n;
  sys.rhs = [&op, work, L](const Vec& v, Vec& out) {
    unflatten(v, *work);
    op.rhs(*work, *L);
    flatten(*L, out);
  };
  return sys;
}

SolveSettings settings_for(const Op1D& op, SolveSettings s) {
  s.strategy = JacStrategy::BandedFD;
  s.block_size = op.ncomp();
  s.stencil_radius = kGhost;
  s.periodic = op.grid().periodic;
  return s;
}

SolveSettings settings_for(const Op2D& op, SolveSettings s) {
  s.strategy = JacStrategy::MatrixFreeKrylov;
  s.block_size = op.ncomp();
  return s;
}

// --- generic steps --------------------------------------------------------------

Vec ode_step_ie(const OdeSystem& sys, const Vec& u, double dt,
                const SolveSettings& s, StageSolveReport& report) {
  Vec L(sys.size);
  auto resid = [&](const Vec& v, Vec& r) {
    sys.rhs(v, L);
    for (int t = 0; t < sys.size; ++t) r[t] = v[t] - u[t] - dt * L[t];
  };
  return solve_stage(resid, u, s, report);
}

Vec ode_step_dirk3(const OdeSystem& sys, const Vec& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  const ButcherTableau t = dirk3_tableau();
  const int N = sys.size;
  Vec L(N);
  Vec L1(N);
  Vec L2(N);
  StageSolveReport rep;

  auto resid1 = [&](const Vec& v, Vec& r) {
    sys.rhs(v, L);
    for (int k = 0; k < N; ++k) r[k] = v[k] - u[k] - dt * t.a[0][0] * L[k];
  };
  Vec u1 = solve_stage(resid1, u, s, rep);
  reports.push_back(rep);
  sys.rhs(u1, L1);

  auto resid2 = [&](const Vec& v, Vec& r) {
    sys.rhs(v, L);
    for (int k = 0; k < N; ++k) {
      r[k] = v[k] - u[k] - dt * (t.a[1][0] * L1[k] + t.a[1][1] * L[k]);
    }
  };
  Vec u2 = solve_stage(resid2, u1, s, rep);
  reports.push_back(rep);
  sys.rhs(u2, L2);

  auto resid3 = [&](const Vec& v, Vec& r) {
    sys.rhs(v, L);
    for (int k = 0; k < N; ++k) {
      r[k] = v[k] - u[k] - dt * (t.a[2][0] * L1[k] + t.a[2][1] * L2[k] + t.a[2][2] * L[k]);
    }
  };
  Vec u3 = solve_stage(resid3, u2, s, rep);
  reports.push_back(rep);
  return u3;  // stiffly accurate: b equals the last row
}

Vec ode_step_ie_chain(const OdeSystem& sys, const Vec& u, double dt,
                      const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  const Dirk3Constants& k = Dirk3Constants::get();
  StageSolveReport rep;
  Vec v = ode_step_ie(sys, u, k.alpha * dt, s, rep);
  reports.push_back(rep);
  v = ode_step_ie(sys, v, (k.tau2 - k.alpha) * dt, s, rep);
  reports.push_back(rep);
  v = ode_step_ie(sys, v, (1.0 - k.tau2) * dt, s, rep);
  reports.push_back(rep);
  return v;
}

Vec ode_step_ssprk3(const OdeSystem& sys, const Vec& u, double dt) {
  const int N = sys.size;
  Vec L(N);
  Vec u1(N);
  Vec u2(N);

  sys.rhs(u, L);
  for (int k = 0; k < N; ++k) u1[k] = u[k] + dt * L[k];

  sys.rhs(u1, L);
  for (int k = 0; k < N; ++k) u2[k] = 0.75 * u[k] + 0.25 * (u1[k] + dt * L[k]);

  sys.rhs(u2, L);
  Vec out(N);
  for (int k = 0; k < N; ++k) {
    out[k] = (1.0 / 3.0) * u[k] + (2.0 / 3.0) * (u2[k] + dt * L[k]);
  }
  return out;
}

Vec ode_step_bdf2(const OdeSystem& sys, const Vec& u_prev, const Vec& u, double dt,
                  const SolveSettings& s, StageSolveReport& report) {
  const int N = sys.size;
  Vec L(N);
  auto resid = [&](const Vec& v, Vec& r) {
    sys.rhs(v, L);
    for (int k = 0; k < N; ++k) {
      r[k] = v[k] - (4.0 * u[k] - u_prev[k]) / 3.0 - (2.0 / 3.0) * dt * L[k];
    }
  };
  return solve_stage(resid, u, s, report);
}

// --- 1D wrappers --------------------------------------------------------------

namespace {

Field1D to_field(const Op1D& op, const Vec& v) {
  Field1D f(op.ncomp(), op.grid().n);
  unflatten(v, f);
  return f;
}

Field2D to_field(const Op2D& op, const Vec& v) {
  Field2D f(op.ncomp(), op.grid().x.n, op.grid().y.n);
  unflatten(v, f);
  return f;
}

}  // namespace

Field1D step_ie(const Op1D& op, const Field1D& u, double dt,
                const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  StageSolveReport rep;
  Vec out = ode_step_ie(make_ode_system(op), flatten(u), dt, settings_for(op, s), rep);
  reports.push_back(rep);
  return to_field(op, out);
}

Field1D step_dirk3(const Op1D& op, const Field1D& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  return to_field(op, ode_step_dirk3(make_ode_system(op), flatten(u), dt,
                                     settings_for(op, s), reports));
}

Field1D step_ssprk3(const Op1D& op, const Field1D& u, double dt) {
  return to_field(op, ode_step_ssprk3(make_ode_system(op), flatten(u), dt));
}

Field1D step_bdf2(const Op1D& op, const Field1D& u_prev, const Field1D& u, double dt,
                  const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  StageSolveReport rep;
  Vec out = ode_step_bdf2(make_ode_system(op), flatten(u_prev), flatten(u), dt,
                          settings_for(op, s), rep);
  reports.push_back(rep);
  return to_field(op, out);
}

// --- L-DIRK3, 1D ----------------------------------------------------------------

namespace {

//! Per-stage limiter state for the 1D limited scheme: owns the interface
//! theta values and rebuilds them from the current iterate on refresh.
class ThetaStage1D {
 public:
  ThetaStage1D(const Op1D& op, LimiterMode mode, const ReferenceVariable& ref,
               const Field1D& prev_stage, double dt_stage)
      : op_(op), mode_(mode), ref_(ref), n_(op.grid().n),
        theta_if_(n_ + 1, 1.0), w_prev_(n_ + 2 * kGhost), w_cur_(n_ + 2 * kGhost),
        work_(op.ncomp(), n_), dt_stage_(dt_stage) {
    if (mode_ == LimiterMode::Off) return;
    if (mode_ == LimiterMode::ForcedZero) {
      std::fill(theta_if_.begin(), theta_if_.end(), 0.0);
      return;
    }
    op_.extract_reference(prev_stage, ref_, w_prev_);
    if (mode_ == LimiterMode::Legacy) {
      Field1D L(op_.ncomp(), n_);
      Field1D tmp = prev_stage;
      op_.rhs(tmp, L);
      rate_prev_.resize(n_);
      op_.reference_rate(prev_stage, L, ref_, rate_prev_);
      rate_cur_.resize(n_);
    }
  }

  bool needs_refresh() const {
    return mode_ == LimiterMode::NewRatio || mode_ == LimiterMode::Legacy;
  }

  void refresh(const Vec& v) {
    unflatten(v, work_);
    op_.fill(work_);
    op_.extract_reference(work_, ref_, w_cur_);

    std::vector<double> theta_padded;
    if (mode_ == LimiterMode::NewRatio) {
      theta_padded = stage_ratio_theta(w_prev_, w_cur_, n_, op_.bc());
    } else {
      Field1D L(op_.ncomp(), n_);
      op_.rhs(work_, L);
      op_.reference_rate(work_, L, ref_, rate_cur_);
      std::vector<double> theta = legacy_theta(
          std::span<const double>(w_prev_.data() + kGhost, n_),
          std::span<const double>(w_cur_.data() + kGhost, n_), rate_prev_, rate_cur_,
          dt_stage_);
      theta_padded.assign(n_ + 2 * kGhost, 0.0);
      std::copy(theta.begin(), theta.end(), theta_padded.begin() + kGhost);
      fill_ghosts_scalar(theta_padded, n_, op_.bc());
    }
    theta_if_ = theta_interface(theta_padded, n_);
  }

  const std::vector<double>& theta_if() const { return theta_if_; }

 private:
  const Op1D& op_;
  LimiterMode mode_;
  ReferenceVariable ref_;
  int n_;
  std::vector<double> theta_if_;
  std::vector<double> w_prev_;
  std::vector<double> w_cur_;
  std::vector<double> rate_prev_;
  std::vector<double> rate_cur_;
  Field1D work_;
  double dt_stage_;
};

}  // namespace

Field1D step_ldirk3(const Op1D& op, const Field1D& un, double dt, LimiterMode mode,
                    const ReferenceVariable& ref, const SolveSettings& s0,
                    std::vector<StageSolveReport>& reports) {
  const Grid1D& g = op.grid();
  const int n = g.n;
  const int m = op.ncomp();
  const double tau = dt / g.dx;
  const Dirk3Constants& k = Dirk3Constants::get();
  const SolveSettings s = settings_for(op, s0);

  Field1D work(m, n);
  FluxArray1D Fv(m, n);
  const Vec un_flat = flatten(un);
  StageSolveReport rep;

  // Stage 1: implicit Euler with coefficient alpha.
  auto resid1 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < m; ++c) {
        const std::size_t t = static_cast<std::size_t>(j) * m + c;
        r[t] = v[t] - un_flat[t] + tau * k.alpha * (Fv.at(c, j + 1) - Fv.at(c, j));
      }
    }
  };
  const Vec u1_flat = solve_stage(resid1, un_flat, s, rep);
  reports.push_back(rep);

  Field1D u1 = to_field(op, u1_flat);
  op.fill(u1);
  FluxArray1D F1(m, n);
  op.interface_flux(u1, F1);

  // Stage 2: interface coefficients from theta^(1), built against stage 1.
  std::vector<double> a21(n + 1);
  std::vector<double> a22(n + 1);
  ThetaStage1D theta1(op, mode, ref, u1, (k.tau2 - k.alpha) * dt);
  auto set_stage2 = [&]() {
    for (int i = 0; i <= n; ++i) {
      const Stage2Coeffs cs = limited_stage2(theta1.theta_if()[i]);
      a21[i] = cs.a21;
      a22[i] = cs.a22;
    }
  };
  set_stage2();
  RefreshFn refresh2;
  if (theta1.needs_refresh()) {
    refresh2 = [&](const Vec& v) {
      theta1.refresh(v);
      set_stage2();
    };
  }
  auto resid2 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < m; ++c) {
        const std::size_t t = static_cast<std::size_t>(j) * m + c;
        r[t] = v[t] - un_flat[t] +
               tau * (a21[j + 1] * F1.at(c, j + 1) - a21[j] * F1.at(c, j) +
                      a22[j + 1] * Fv.at(c, j + 1) - a22[j] * Fv.at(c, j));
      }
    }
  };
  const Vec u2_flat = solve_stage(resid2, u1_flat, s, rep, refresh2);
  reports.push_back(rep);

  Field1D u2 = to_field(op, u2_flat);
  op.fill(u2);
  FluxArray1D F2(m, n);
  op.interface_flux(u2, F2);

  // Stage 3: coefficients from theta^(2), built against stage 2.
  std::vector<double> a31(n + 1);
  std::vector<double> a32(n + 1);
  std::vector<double> a33(n + 1);
  ThetaStage1D theta2(op, mode, ref, u2, (1.0 - k.tau2) * dt);
  auto set_stage3 = [&]() {
    for (int i = 0; i <= n; ++i) {
      const Stage3Coeffs cs = limited_stage3(theta2.theta_if()[i]);
      a31[i] = cs.a31;
      a32[i] = cs.a32;
      a33[i] = cs.a33;
    }
  };
  set_stage3();
  RefreshFn refresh3;
  if (theta2.needs_refresh()) {
    refresh3 = [&](const Vec& v) {
      theta2.refresh(v);
      set_stage3();
    };
  }
  auto resid3 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < n; ++j) {
      for (int c = 0; c < m; ++c) {
        const std::size_t t = static_cast<std::size_t>(j) * m + c;
        r[t] = v[t] - un_flat[t] +
               tau * (a31[j + 1] * F1.at(c, j + 1) - a31[j] * F1.at(c, j) +
                      a32[j + 1] * F2.at(c, j + 1) - a32[j] * F2.at(c, j) +
                      a33[j + 1] * Fv.at(c, j + 1) - a33[j] * Fv.at(c, j));
      }
    }
  };
  const Vec out = solve_stage(resid3, u2_flat, s, rep, refresh3);
  reports.push_back(rep);
  return to_field(op, out);
}

Field1D step_global_tvd(const Op1D& op, const Field1D& u, double dt,
                        const ReferenceVariable& ref, const SolveSettings& s,
                        std::vector<StageSolveReport>& reports, bool* fell_back) {
  const int n = op.grid().n;
  std::vector<double> w(n + 2 * kGhost);

  Field1D uf = u;
  op.fill(uf);
  op.extract_reference(uf, ref, w);
  const double tv_old =
      total_variation(std::span<const double>(w.data() + kGhost, n), op.grid().periodic);

  Field1D tentative = step_dirk3(op, u, dt, s, reports);
  Field1D tf = tentative;
  op.fill(tf);
  op.extract_reference(tf, ref, w);
  const double tv_new =
      total_variation(std::span<const double>(w.data() + kGhost, n), op.grid().periodic);

  if (sensor_accepts(tv_old, tv_new)) {
    if (fell_back != nullptr) *fell_back = false;
    return tentative;
  }
  if (fell_back != nullptr) *fell_back = true;
  return to_field(op, ode_step_ie_chain(make_ode_system(op), flatten(u), dt,
                                        settings_for(op, s), reports));
}

// --- 2D wrappers ------------------------------------------------------------

Field2D step_ie(const Op2D& op, const Field2D& u, double dt,
                const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  StageSolveReport rep;
  Vec out = ode_step_ie(make_ode_system(op), flatten(u), dt, settings_for(op, s), rep);
  reports.push_back(rep);
  return to_field(op, out);
}

Field2D step_dirk3(const Op2D& op, const Field2D& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  return to_field(op, ode_step_dirk3(make_ode_system(op), flatten(u), dt,
                                     settings_for(op, s), reports));
}

Field2D step_ssprk3(const Op2D& op, const Field2D& u, double dt) {
  return to_field(op, ode_step_ssprk3(make_ode_system(op), flatten(u), dt));
}

Field2D step_bdf2(const Op2D& op, const Field2D& u_prev, const Field2D& u, double dt,
                  const SolveSettings& s, std::vector<StageSolveReport>& reports) {
  StageSolveReport rep;
  Vec out = ode_step_bdf2(make_ode_system(op), flatten(u_prev), flatten(u), dt,
                          settings_for(op, s), rep);
  reports.push_back(rep);
  return to_field(op, out);
}

// --- L-DIRK3, 2D -------------------------------------------------------------

namespace {

//! 2D analogue of ThetaStage1D with the four-direction nodal limiter and
//! per-axis interface averages.
class ThetaStage2D {
 public:
  ThetaStage2D(const Op2D& op, LimiterMode mode, const ReferenceVariable& ref,
               const Field2D& prev_stage)
      : op_(op), mode_(mode), ref_(ref), nx_(op.grid().x.n), ny_(op.grid().y.n),
        theta_x_(static_cast<std::size_t>(nx_ + 1) * ny_, 1.0),
        theta_y_(static_cast<std::size_t>(nx_) * (ny_ + 1), 1.0),
        work_(op.ncomp(), nx_, ny_) {
    if (mode_ == LimiterMode::Legacy) {
      throw std::invalid_argument("legacy limiter is defined for 1D problems only");
    }
    if (mode_ == LimiterMode::Off) return;
    if (mode_ == LimiterMode::ForcedZero) {
      std::fill(theta_x_.begin(), theta_x_.end(), 0.0);
      std::fill(theta_y_.begin(), theta_y_.end(), 0.0);
      return;
    }
    op_.extract_reference(prev_stage, ref_, w_prev_);
  }

  bool needs_refresh() const { return mode_ == LimiterMode::NewRatio; }

  void refresh(const Vec& v) {
    unflatten(v, work_);
    op_.fill(work_);
    op_.extract_reference(work_, ref_, w_cur_);
    const Field2D theta = stage_ratio_theta_2d(w_prev_, w_cur_, op_.bc_x(), op_.bc_y());
    theta_x_ = theta_interface_x(theta);
    theta_y_ = theta_interface_y(theta);
  }

  const std::vector<double>& theta_x() const { return theta_x_; }
  const std::vector<double>& theta_y() const { return theta_y_; }

 private:
  const Op2D& op_;
  LimiterMode mode_;
  ReferenceVariable ref_;
  int nx_;
  int ny_;
  std::vector<double> theta_x_;
  std::vector<double> theta_y_;
  Field2D w_prev_;
  Field2D w_cur_;
  Field2D work_;
};

}  // namespace

Field2D step_ldirk3(const Op2D& op, const Field2D& un, double dt, LimiterMode mode,
                    const ReferenceVariable& ref, const SolveSettings& s0,
                    std::vector<StageSolveReport>& reports) {
  const int nx = op.grid().x.n;
  const int ny = op.grid().y.n;
  const int m = op.ncomp();
  const double taux = dt / op.grid().x.dx;
  const double tauy = dt / op.grid().y.dx;
  const Dirk3Constants& k = Dirk3Constants::get();
  const SolveSettings s = settings_for(op, s0);

  Field2D work(m, nx, ny);
  FluxArray2D Fv(m, nx, ny);
  const Vec un_flat = flatten(un);
  StageSolveReport rep;

  const auto xidx = [nx](int i, int j) { return static_cast<std::size_t>(j) * (nx + 1) + i; };
  const auto yidx = [nx](int i, int j) { return static_cast<std::size_t>(j) * nx + i; };
  const std::size_t nifx = static_cast<std::size_t>(nx + 1) * ny;
  const std::size_t nify = static_cast<std::size_t>(nx) * (ny + 1);

  auto resid1 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t t0 = (static_cast<std::size_t>(j) * nx + i) * m;
        for (int c = 0; c < m; ++c) {
          r[t0 + c] = v[t0 + c] - un_flat[t0 + c] +
                      taux * k.alpha * (Fv.x(c, i + 1, j) - Fv.x(c, i, j)) +
                      tauy * k.alpha * (Fv.y(c, i, j + 1) - Fv.y(c, i, j));
        }
      }
    }
  };
  const Vec u1_flat = solve_stage(resid1, un_flat, s, rep);
  reports.push_back(rep);

  Field2D u1 = to_field(op, u1_flat);
  op.fill(u1);
  FluxArray2D F1(m, nx, ny);
  op.interface_flux(u1, F1);

  std::vector<double> a21x(nifx), a22x(nifx);
  std::vector<double> a21y(nify), a22y(nify);
  ThetaStage2D theta1(op, mode, ref, u1);
  auto set_stage2 = [&]() {
    for (std::size_t q = 0; q < a21x.size(); ++q) {
      const Stage2Coeffs cs = limited_stage2(theta1.theta_x()[q]);
      a21x[q] = cs.a21;
      a22x[q] = cs.a22;
    }
    for (std::size_t q = 0; q < a21y.size(); ++q) {
      const Stage2Coeffs cs = limited_stage2(theta1.theta_y()[q]);
      a21y[q] = cs.a21;
      a22y[q] = cs.a22;
    }
  };
  set_stage2();
  RefreshFn refresh2;
  if (theta1.needs_refresh()) {
    refresh2 = [&](const Vec& v) {
      theta1.refresh(v);
      set_stage2();
    };
  }
  auto resid2 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t t0 = (static_cast<std::size_t>(j) * nx + i) * m;
        for (int c = 0; c < m; ++c) {
          r[t0 + c] =
              v[t0 + c] - un_flat[t0 + c] +
              taux * (a21x[xidx(i + 1, j)] * F1.x(c, i + 1, j) -
                      a21x[xidx(i, j)] * F1.x(c, i, j) +
                      a22x[xidx(i + 1, j)] * Fv.x(c, i + 1, j) -
                      a22x[xidx(i, j)] * Fv.x(c, i, j)) +
              tauy * (a21y[yidx(i, j + 1)] * F1.y(c, i, j + 1) -
                      a21y[yidx(i, j)] * F1.y(c, i, j) +
                      a22y[yidx(i, j + 1)] * Fv.y(c, i, j + 1) -
                      a22y[yidx(i, j)] * Fv.y(c, i, j));
        }
      }
    }
  };
  const Vec u2_flat = solve_stage(resid2, u1_flat, s, rep, refresh2);
  reports.push_back(rep);

  Field2D u2 = to_field(op, u2_flat);
  op.fill(u2);
  FluxArray2D F2(m, nx, ny);
  op.interface_flux(u2, F2);

  std::vector<double> a31x(nifx), a32x(nifx),
      a33x(nifx);
  std::vector<double> a31y(nify), a32y(nify),
      a33y(nify);
  ThetaStage2D theta2(op, mode, ref, u2);
  auto set_stage3 = [&]() {
    for (std::size_t q = 0; q < a31x.size(); ++q) {
      const Stage3Coeffs cs = limited_stage3(theta2.theta_x()[q]);
      a31x[q] = cs.a31;
      a32x[q] = cs.a32;
      a33x[q] = cs.a33;
    }
    for (std::size_t q = 0; q < a31y.size(); ++q) {
      const Stage3Coeffs cs = limited_stage3(theta2.theta_y()[q]);
      a31y[q] = cs.a31;
      a32y[q] = cs.a32;
      a33y[q] = cs.a33;
    }
  };
  set_stage3();
  RefreshFn refresh3;
  if (theta2.needs_refresh()) {
    refresh3 = [&](const Vec& v) {
      theta2.refresh(v);
      set_stage3();
    };
  }
  auto resid3 = [&](const Vec& v, Vec& r) {
    unflatten(v, work);
    op.fill(work);
    op.interface_flux(work, Fv);
    for (int j = 0; j < ny; ++j) {
      for (int i = 0; i < nx; ++i) {
        const std::size_t t0 = (static_cast<std::size_t>(j) * nx + i) * m;
        for (int c = 0; c < m; ++c) {
          r[t0 + c] =
              v[t0 + c] - un_flat[t0 + c] +
              taux * (a31x[xidx(i + 1, j)] * F1.x(c, i + 1, j) -
                      a31x[xidx(i, j)] * F1.x(c, i, j) +
                      a32x[xidx(i + 1, j)] * F2.x(c, i + 1, j) -
                      a32x[xidx(i, j)] * F2.x(c, i, j) +
                      a33x[xidx(i + 1, j)] * Fv.x(c, i + 1, j) -
                      a33x[xidx(i, j)] * Fv.x(c, i, j)) +
              tauy * (a31y[yidx(i, j + 1)] * F1.y(c, i, j + 1) -
                      a31y[yidx(i, j)] * F1.y(c, i, j) +
                      a32y[yidx(i, j + 1)] * F2.y(c, i, j + 1) -
                      a32y[yidx(i, j)] * F2.y(c, i, j) +
                      a33y[yidx(i, j + 1)] * Fv.y(c, i, j + 1) -
                      a33y[yidx(i, j)] * Fv.y(c, i, j));
        }
      }
    }
  };
  const Vec out = solve_stage(resid3, u2_flat, s, rep, refresh3);
  reports.push_back(rep);
  return to_field(op, out);
}

// --- CFL ----------------------------------------------------------------------

double cfl_dt(const Op1D& op, const Field1D& u, double cfl) {
  const double a = op.max_wave_speed(u);
  const double d = op.max_diffusion(u);
  const double dx = op.grid().dx;
  const double denom = a / dx + d / (dx * dx);
  if (!(denom > 0.0)) throw std::domain_error("cfl_dt: zero wave speed and diffusion");
  return cfl / denom;
}

double cfl_dt(const Op2D& op, const Field2D& u, double cfl) {
  const double ax = op.max_wave_speed(u, Axis::X);
  const double ay = op.max_wave_speed(u, Axis::Y);
  const double denom = ax / op.grid().x.dx + ay / op.grid().y.dx;
  if (!(denom > 0.0)) throw std::domain_error("cfl_dt: zero wave speed");
  return cfl / denom;
}

}  // namespace ldirk
