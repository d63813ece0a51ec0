#include "ldirk/ops.hpp"

#include <cmath>
#include <stdexcept>

namespace ldirk {

void Op1D::rhs(Field1D& u, Field1D& L) const {
  fill(u);
  if (scratch_flux_.ncomp != ncomp_ || scratch_flux_.n != grid_.n) {
    scratch_flux_ = FluxArray1D(ncomp_, grid_.n);
  }
  interface_flux(u, scratch_flux_);
  divergence(scratch_flux_, grid_.dx, L);
}

void Op2D::rhs(Field2D& u, Field2D& L) const {
  fill(u);
  if (scratch_flux_.ncomp != ncomp_ || scratch_flux_.nx != grid_.x.n ||
      scratch_flux_.ny != grid_.y.n) {
    scratch_flux_ = FluxArray2D(ncomp_, grid_.x.n, grid_.y.n);
  }
  interface_flux(u, scratch_flux_);
  divergence(scratch_flux_, grid_.x.dx, grid_.y.dx, L);
}

// --- 1D scalar ---------------------------------------------------------------

ScalarOp1D::ScalarOp1D(Grid1D grid, Boundary bc, ScalarLaw law, Recon recon,
                       std::optional<DiffusionSpec> diffusion)
    : Op1D(grid, std::move(bc), 1), law_(std::move(law)), recon_(recon),
      diffusion_(diffusion), fp_(grid.n + 2 * kGhost), fm_(grid.n + 2 * kGhost) {}

void ScalarOp1D::interface_flux(const Field1D& u, FluxArray1D& out) const {
  const int n = grid_.n;
  const auto up = u.padded(0);

  double a = 0.0;
  for (double v : up) a = std::max(a, std::abs(law_.dflux(v)));

  lf_split_scalar(up, law_, false, a, fp_, fm_);
  for (int i = 0; i <= n; ++i) {
    out.at(0, i) = split_interface_value(fp_, fm_, i + kGhost, recon_);
  }

  if (diffusion_) {
    const std::vector<double> q = central_diffusion_flux(up, n, *diffusion_, grid_.dx);
    for (int i = 0; i <= n; ++i) out.at(0, i) -= q[i];
  }
}

double ScalarOp1D::max_wave_speed(const Field1D& u) const {
  double a = 0.0;
  for (int j = 0; j < grid_.n; ++j) a = std::max(a, std::abs(law_.dflux(u(0, j))));
  return a;
}

double ScalarOp1D::max_diffusion(const Field1D& u) const {
  if (!diffusion_) return 0.0;
  double numax = 0.0;
  for (int j = 0; j < grid_.n; ++j) numax = std::max(numax, diffusion_->nu(u(0, j)));
  return diffusion_->eps * numax;
}

void ScalarOp1D::extract_reference(const Field1D& u, const ReferenceVariable& ref,
                                   std::span<double> w) const {
  if (ref.kind != ReferenceVariable::Kind::Conservative || ref.component != 0) {
    throw std::invalid_argument("scalar law supports only the conservative:0 reference");
  }
  const auto up = u.padded(0);
  std::copy(up.begin(), up.end(), w.begin());
}

void ScalarOp1D::reference_rate(const Field1D&, const Field1D& L,
                                const ReferenceVariable& ref,
                                std::span<double> out) const {
  if (ref.kind != ReferenceVariable::Kind::Conservative || ref.component != 0) {
    throw std::invalid_argument("scalar law supports only the conservative:0 reference");
  }
  for (int j = 0; j < grid_.n; ++j) out[j] = L(0, j);
}

// --- 1D Euler ---------------------------------------------------------------

EulerOp1D::EulerOp1D(Grid1D grid, Boundary bc, EulerModel model, Recon recon)
    : Op1D(grid, std::move(bc), 3), model_(model), recon_(recon),
      nodal_flux_(3 * static_cast<std::size_t>(grid.n + 2 * kGhost)) {}

void EulerOp1D::interface_flux(const Field1D& u, FluxArray1D& out) const {
  const int n = grid_.n;
  const int stride = n + 2 * kGhost;

  // Nodal fluxes and the global per-family wave speeds over the padded field.
  std::array<double, 4> lam_max = {0.0, 0.0, 0.0, 0.0};
  for (int jp = 0; jp < stride; ++jp) {
    const double U[3] = {u.padded(0)[jp], u.padded(1)[jp], u.padded(2)[jp]};
    double F[3];
    euler_flux_1d(model_, U, F);
    for (int c = 0; c < 3; ++c) nodal_flux_[c * stride + jp] = F[c];
    const double vel = U[1] / U[0];
    const double cs = std::sqrt(model_.gamma * euler_pressure_1d(model_, U) / U[0]);
    lam_max[0] = std::max(lam_max[0], std::abs(vel - cs));
    lam_max[1] = std::max(lam_max[1], std::abs(vel));
    lam_max[2] = std::max(lam_max[2], std::abs(vel + cs));
  }

  for (int i = 0; i <= n; ++i) {
    const int ip = i + kGhost;
    double Uavg[3];
    for (int c = 0; c < 3; ++c) {
      Uavg[c] = 0.5 * (u.padded(c)[ip - 1] + u.padded(c)[ip]);
    }
    const Eigensystem es = eigensystem_1d(model_, Uavg);

    std::array<std::array<double, 4>, 6> Uw{};
    std::array<std::array<double, 4>, 6> Fw{};
    for (int s = 0; s < 6; ++s) {
      const int jp = ip - 3 + s;
      for (int c = 0; c < 3; ++c) {
        Uw[s][c] = u.padded(c)[jp];
        Fw[s][c] = nodal_flux_[c * stride + jp];
      }
    }
    double fhat[4];
    char_lf_flux(es, Uw, Fw, lam_max, recon_, fhat);
    for (int c = 0; c < 3; ++c) out.at(c, i) = fhat[c];
  }
}

double EulerOp1D::max_wave_speed(const Field1D& u) const {
  double a = 0.0;
  for (int j = 0; j < grid_.n; ++j) {
    const double U[3] = {u(0, j), u(1, j), u(2, j)};
    a = std::max(a, euler_max_signal_1d(model_, U));
  }
  return a;
}

void EulerOp1D::extract_reference(const Field1D& u, const ReferenceVariable& ref,
                                  std::span<double> w) const {
  const int stride = grid_.n + 2 * kGhost;
  switch (ref.kind) {
    case ReferenceVariable::Kind::Density: {
      const auto rho = u.padded(0);
      std::copy(rho.begin(), rho.end(), w.begin());
      break;
    }
    case ReferenceVariable::Kind::Pressure:
      for (int jp = 0; jp < stride; ++jp) {
        const double U[3] = {u.padded(0)[jp], u.padded(1)[jp], u.padded(2)[jp]};
        w[jp] = euler_pressure_1d(model_, U);
      }
      break;
    case ReferenceVariable::Kind::Conservative: {
      if (ref.component < 0 || ref.component >= 3) {
        throw std::invalid_argument("euler: conservative reference component out of range");
      }
      const auto comp = u.padded(ref.component);
      std::copy(comp.begin(), comp.end(), w.begin());
      break;
    }
  }
}

void EulerOp1D::reference_rate(const Field1D& u, const Field1D& L,
                               const ReferenceVariable& ref,
                               std::span<double> out) const {
  switch (ref.kind) {
    case ReferenceVariable::Kind::Density:
      for (int j = 0; j < grid_.n; ++j) out[j] = L(0, j);
      break;
    case ReferenceVariable::Kind::Conservative:
      if (ref.component < 0 || ref.component >= 3) {
        throw std::invalid_argument("euler: conservative reference component out of range");
      }
      for (int j = 0; j < grid_.n; ++j) out[j] = L(ref.component, j);
      break;
    case ReferenceVariable::Kind::Pressure: {
      const double gm1 = model_.gamma - 1.0;
      for (int j = 0; j < grid_.n; ++j) {
        const double vel = u(1, j) / u(0, j);
        out[j] = gm1 * (0.5 * vel * vel * L(0, j) - vel * L(1, j) + L(2, j));
      }
      break;
    }
  }
}

void EulerOp1D::validate(const Field1D& u) const {
  for (int j = 0; j < grid_.n; ++j) {
    const double U[3] = {u(0, j), u(1, j), u(2, j)};
    euler_validate_1d(model_, U);
  }
}

// --- 2D scalar ---------------------------------------------------------------

ScalarOp2D::ScalarOp2D(Grid2D grid, Boundary bc_x, Boundary bc_y, ScalarLaw law,
                       Recon recon)
    : Op2D(grid, std::move(bc_x), std::move(bc_y), 1), law_(std::move(law)),
      recon_(recon) {
  if (!law_.has_yflux()) {
    // Pure x-advection extruded to 2D: treat g as identically zero.
    law_.yflux = [](double) { return 0.0; };
    law_.dyflux = [](double) { return 0.0; };
  }
}

void ScalarOp2D::interface_flux(const Field2D& u, FluxArray2D& out) const {
  const int nx = grid_.x.n;
  const int ny = grid_.y.n;

  double ax = 0.0;
  double ay = 0.0;
  for (int j = -kGhost; j < ny + kGhost; ++j) {
    for (int i = -kGhost; i < nx + kGhost; ++i) {
      ax = std::max(ax, std::abs(law_.dflux(u(0, i, j))));
      ay = std::max(ay, std::abs(law_.dyflux(u(0, i, j))));
    }
  }

#ifdef _OPENMP
#pragma omp parallel
#endif
  {
    std::vector<double> row(nx + 2 * kGhost);
    std::vector<double> fp(nx + 2 * kGhost);
    std::vector<double> fm(nx + 2 * kGhost);
#ifdef _OPENMP
#pragma omp for nowait
#endif
    for (int j = 0; j < ny; ++j) {
      for (int i = -kGhost; i < nx + kGhost; ++i) row[i + kGhost] = u(0, i, j);
      lf_split_scalar(row, law_, false, ax, fp, fm);
      for (int i = 0; i <= nx; ++i) {
        out.x(0, i, j) = split_interface_value(fp, fm, i + kGhost, recon_);
      }
    }

    std::vector<double> col(ny + 2 * kGhost);
    std::vector<double> gp(ny + 2 * kGhost);
    std::vector<double> gm(ny + 2 * kGhost);
#ifdef _OPENMP
#pragma omp for
#endif
    for (int i = 0; i < nx; ++i) {
      for (int j = -kGhost; j < ny + kGhost; ++j) col[j + kGhost] = u(0, i, j);
      lf_split_scalar(col, law_, true, ay, gp, gm);
      for (int j = 0; j <= ny; ++j) {
        out.y(0, i, j) = split_interface_value(gp, gm, j + kGhost, recon_);
      }
    }
  }
}

double ScalarOp2D::max_wave_speed(const Field2D& u, Axis axis) const {
  const auto& d = axis == Axis::X ? law_.dflux : law_.dyflux;
  double a = 0.0;
  for (int j = 0; j < grid_.y.n; ++j) {
    for (int i = 0; i < grid_.x.n; ++i) a = std::max(a, std::abs(d(u(0, i, j))));
  }
  return a;
}

void ScalarOp2D::extract_reference(const Field2D& u, const ReferenceVariable& ref,
                                   Field2D& w) const {
  if (ref.kind != ReferenceVariable::Kind::Conservative || ref.component != 0) {
    throw std::invalid_argument("scalar law supports only the conservative:0 reference");
  }
  w = u;
}

// --- 2D Euler ---------------------------------------------------------------

EulerOp2D::EulerOp2D(Grid2D grid, Boundary bc_x, Boundary bc_y, EulerModel model,
                     Recon recon)
    : Op2D(grid, std::move(bc_x), std::move(bc_y), 4), model_(model), recon_(recon),
      flux_x_(4, grid.x.n, grid.y.n), flux_y_(4, grid.x.n, grid.y.n) {}

void EulerOp2D::interface_flux(const Field2D& u, FluxArray2D& out) const {
  const int nx = grid_.x.n;
  const int ny = grid_.y.n;

  std::array<double, 4> lam_x = {0.0, 0.0, 0.0, 0.0};
  std::array<double, 4> lam_y = {0.0, 0.0, 0.0, 0.0};
  for (int j = -kGhost; j < ny + kGhost; ++j) {
    for (int i = -kGhost; i < nx + kGhost; ++i) {
      const double U[4] = {u(0, i, j), u(1, i, j), u(2, i, j), u(3, i, j)};
      double F[4];
      double G[4];
      euler_flux_2d(model_, U, Axis::X, F);
      euler_flux_2d(model_, U, Axis::Y, G);
      for (int c = 0; c < 4; ++c) {
        flux_x_(c, i, j) = F[c];
        flux_y_(c, i, j) = G[c];
      }
      const double vx = U[1] / U[0];
      const double vy = U[2] / U[0];
      const double cs = std::sqrt(model_.gamma * euler_pressure_2d(model_, U) / U[0]);
      lam_x[0] = std::max(lam_x[0], std::abs(vx - cs));
      lam_x[1] = std::max(lam_x[1], std::abs(vx));
      lam_x[2] = std::max(lam_x[2], std::abs(vx));
      lam_x[3] = std::max(lam_x[3], std::abs(vx + cs));
      lam_y[0] = std::max(lam_y[0], std::abs(vy - cs));
      lam_y[1] = std::max(lam_y[1], std::abs(vy));
      lam_y[2] = std::max(lam_y[2], std::abs(vy));
      lam_y[3] = std::max(lam_y[3], std::abs(vy + cs));
    }
  }

#ifdef _OPENMP
#pragma omp parallel for
#endif
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      double Uavg[4];
      for (int c = 0; c < 4; ++c) Uavg[c] = 0.5 * (u(c, i - 1, j) + u(c, i, j));
      const Eigensystem es = eigensystem_2d(model_, Uavg, Axis::X);
      std::array<std::array<double, 4>, 6> Uw{};
      std::array<std::array<double, 4>, 6> Fw{};
      for (int s = 0; s < 6; ++s) {
        for (int c = 0; c < 4; ++c) {
          Uw[s][c] = u(c, i - 3 + s, j);
          Fw[s][c] = flux_x_(c, i - 3 + s, j);
        }
      }
      double fhat[4];
      char_lf_flux(es, Uw, Fw, lam_x, recon_, fhat);
      for (int c = 0; c < 4; ++c) out.x(c, i, j) = fhat[c];
    }
  }

#ifdef _OPENMP
#pragma omp parallel for
#endif
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      double Uavg[4];
      for (int c = 0; c < 4; ++c) Uavg[c] = 0.5 * (u(c, i, j - 1) + u(c, i, j));
      const Eigensystem es = eigensystem_2d(model_, Uavg, Axis::Y);
      std::array<std::array<double, 4>, 6> Uw{};
      std::array<std::array<double, 4>, 6> Fw{};
      for (int s = 0; s < 6; ++s) {
        for (int c = 0; c < 4; ++c) {
          Uw[s][c] = u(c, i, j - 3 + s);
          Fw[s][c] = flux_y_(c, i, j - 3 + s);
        }
      }
      double fhat[4];
      char_lf_flux(es, Uw, Fw, lam_y, recon_, fhat);
      for (int c = 0; c < 4; ++c) out.y(c, i, j) = fhat[c];
    }
  }
}

double EulerOp2D::max_wave_speed(const Field2D& u, Axis axis) const {
  double a = 0.0;
  for (int j = 0; j < grid_.y.n; ++j) {
    for (int i = 0; i < grid_.x.n; ++i) {
      const double U[4] = {u(0, i, j), u(1, i, j), u(2, i, j), u(3, i, j)};
      a = std::max(a, euler_max_signal_2d(model_, U, axis));
    }
  }
  return a;
}

void EulerOp2D::extract_reference(const Field2D& u, const ReferenceVariable& ref,
                                  Field2D& w) const {
  const int nx = grid_.x.n;
  const int ny = grid_.y.n;
  if (w.nx() != nx || w.ny() != ny || w.ncomp() != 1) w = Field2D(1, nx, ny);
  for (int j = -kGhost; j < ny + kGhost; ++j) {
    for (int i = -kGhost; i < nx + kGhost; ++i) {
      switch (ref.kind) {
        case ReferenceVariable::Kind::Density:
          w(0, i, j) = u(0, i, j);
          break;
        case ReferenceVariable::Kind::Pressure: {
          const double U[4] = {u(0, i, j), u(1, i, j), u(2, i, j), u(3, i, j)};
          w(0, i, j) = euler_pressure_2d(model_, U);
          break;
        }
        case ReferenceVariable::Kind::Conservative:
          if (ref.component < 0 || ref.component >= 4) {
            throw std::invalid_argument("euler: conservative reference component out of range");
          }
          w(0, i, j) = u(ref.component, i, j);
          break;
      }
    }
  }
}

void EulerOp2D::validate(const Field2D& u) const {
  for (int j = 0; j < grid_.y.n; ++j) {
    for (int i = 0; i < grid_.x.n; ++i) {
      const double U[4] = {u(0, i, j), u(1, i, j), u(2, i, j), u(3, i, j)};
      euler_validate_2d(model_, U);
    }
  }
}

}  // namespace ldirk
