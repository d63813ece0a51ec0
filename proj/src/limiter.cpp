#include "ldirk/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ldirk {

double minmod(std::span<const double> args) {
  if (args.empty()) throw std::invalid_argument("minmod: empty argument list");
  double m = args[0];
  for (double a : args.subspan(1)) {
    if (a * m <= 0.0) return 0.0;
    if (std::abs(a) < std::abs(m)) m = a;
  }
  return m;
}

double minmod(std::initializer_list<double> args) {
  return minmod(std::span<const double>(args.begin(), args.size()));
}

double minmod(double a, double b) {
  if (a * b <= 0.0) return 0.0;
  return std::abs(a) < std::abs(b) ? a : b;
}

namespace {

inline double clamp01(double x) { return std::clamp(x, 0.0, 1.0); }

// Stage ratio with the degenerate-denominator rule: flat over flat counts as
// smooth (ratio 1), activity appearing from flat data as non-smooth (ratio 0).
inline double mapped_ratio(double num, double den, double eps_den) {
  if (std::abs(den) < eps_den) return std::abs(num) < eps_den ? 1.0 : 0.0;
  return num / den;
}

inline double span_scale(std::span<const double> a) {
  double s = 0.0;
  for (double v : a) s = std::max(s, std::abs(v));
  return s;
}

}  // namespace

std::vector<double> stage_ratio_theta(std::span<const double> w_prev,
                                      std::span<const double> w_cur, int n,
                                      const Boundary& bc) {
  const double scale = std::max({1.0, span_scale(w_prev), span_scale(w_cur)});
  const double eps_den = 1e-12 * scale;

  std::vector<double> theta(n + 2 * kGhost, 0.0);
  for (int j = 0; j < n; ++j) {
    const int jc = j + kGhost;
    const double num = w_cur[jc + 1] - w_cur[jc - 1];
    const double den = w_prev[jc + 1] - w_prev[jc - 1];
    theta[jc] = clamp01(minmod(mapped_ratio(num, den, eps_den), 1.0));
  }
  fill_ghosts_scalar(theta, n, bc);
  return theta;
}

std::vector<double> theta_interface(std::span<const double> theta_padded, int n) {
  std::vector<double> out(n + 1);
  for (int i = 0; i <= n; ++i) {
    out[i] = 0.5 * (theta_padded[i - 1 + kGhost] + theta_padded[i + kGhost]);
  }
  return out;
}

Field2D stage_ratio_theta_2d(const Field2D& w_prev, const Field2D& w_cur,
                             const Boundary& bc_x, const Boundary& bc_y) {
  const int nx = w_prev.nx();
  const int ny = w_prev.ny();

  double scale = 1.0;
  for (int j = -1; j <= ny; ++j) {
    for (int i = -1; i <= nx; ++i) {
      scale = std::max({scale, std::abs(w_prev(0, i, j)), std::abs(w_cur(0, i, j))});
    }
  }
  const double eps_den = 1e-12 * scale;

  Field2D theta(1, nx, ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const double r1 = mapped_ratio(w_cur(0, i + 1, j) - w_cur(0, i - 1, j),
                                     w_prev(0, i + 1, j) - w_prev(0, i - 1, j), eps_den);
      const double r2 = mapped_ratio(w_cur(0, i, j + 1) - w_cur(0, i, j - 1),
                                     w_prev(0, i, j + 1) - w_prev(0, i, j - 1), eps_den);
      const double r3 = mapped_ratio(w_cur(0, i + 1, j + 1) - w_cur(0, i - 1, j - 1),
                                     w_prev(0, i + 1, j + 1) - w_prev(0, i - 1, j - 1), eps_den);
      const double r4 = mapped_ratio(w_cur(0, i - 1, j + 1) - w_cur(0, i + 1, j - 1),
                                     w_prev(0, i - 1, j + 1) - w_prev(0, i + 1, j - 1), eps_den);
      theta(0, i, j) = clamp01(minmod({r1, r2, r3, r4, 1.0}));
    }
  }

  Boundary tx = bc_x.kind == BCKind::Periodic ? Boundary::periodic() : Boundary::extrapolate();
  Boundary ty = bc_y.kind == BCKind::Periodic ? Boundary::periodic() : Boundary::extrapolate();
  fill_ghosts(theta, tx, ty);
  return theta;
}

std::vector<double> theta_interface_x(const Field2D& theta) {
  const int nx = theta.nx();
  const int ny = theta.ny();
  std::vector<double> out(static_cast<std::size_t>(nx + 1) * ny);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i <= nx; ++i) {
      out[static_cast<std::size_t>(j) * (nx + 1) + i] =
          0.5 * (theta(0, i - 1, j) + theta(0, i, j));
    }
  }
  return out;
}

std::vector<double> theta_interface_y(const Field2D& theta) {
  const int nx = theta.nx();
  const int ny = theta.ny();
  std::vector<double> out(static_cast<std::size_t>(nx) * (ny + 1));
  for (int j = 0; j <= ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      out[static_cast<std::size_t>(j) * nx + i] =
          0.5 * (theta(0, i, j - 1) + theta(0, i, j));
    }
  }
  return out;
}

std::vector<double> legacy_theta(std::span<const double> u_prev,
                                 std::span<const double> u_cur,
                                 std::span<const double> L_prev,
                                 std::span<const double> L_cur, double dt,
                                 double eps) {
  const std::size_t n = u_prev.size();
  std::vector<double> theta(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = (u_cur[j] - u_prev[j]) / dt;
    theta[j] = clamp01(minmod({2.0 * s / (L_prev[j] + eps),
                               2.0 * s / (L_cur[j] + eps), 1.0}));
  }
  return theta;
}

double total_variation(std::span<const double> u, bool periodic) {
  double tv = 0.0;
  for (std::size_t j = 0; j + 1 < u.size(); ++j) tv += std::abs(u[j + 1] - u[j]);
  if (periodic && u.size() > 1) tv += std::abs(u.front() - u.back());
  return tv;
}

bool sensor_accepts(double tv_old, double tv_tentative) {
  return tv_tentative < tv_old;
}

}  // namespace ldirk
