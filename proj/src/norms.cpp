#include "ldirk/norms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldirk {

NormReport error_norms(const Field1D& numeric, const Field1D& exact,
                       const Grid1D& grid, int comp) {
  if (numeric.n() != exact.n() || numeric.n() != grid.n) {
    throw std::invalid_argument("error_norms: field/grid shape mismatch");
  }
  NormReport r;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int j = 0; j < grid.n; ++j) {
    const double e = std::abs(numeric(comp, j) - exact(comp, j));
    r.linf = std::max(r.linf, e);
    s1 += e;
    s2 += e * e;
  }
  r.l1 = grid.dx * s1;
  r.l2 = std::sqrt(grid.dx * s2);
  return r;
}

NormReport error_norms(const Field2D& numeric, const Field2D& exact,
                       const Grid2D& grid, int comp) {
  if (numeric.nx() != exact.nx() || numeric.ny() != exact.ny() ||
      numeric.nx() != grid.x.n || numeric.ny() != grid.y.n) {
    throw std::invalid_argument("error_norms: field/grid shape mismatch");
  }
  NormReport r;
  double s1 = 0.0;
  double s2 = 0.0;
  for (int j = 0; j < grid.y.n; ++j) {
    for (int i = 0; i < grid.x.n; ++i) {
      const double e = std::abs(numeric(comp, i, j) - exact(comp, i, j));
      r.linf = std::max(r.linf, e);
      s1 += e;
      s2 += e * e;
    }
  }
  const double w = grid.x.dx * grid.y.dx;
  r.l1 = w * s1;
  r.l2 = std::sqrt(w * s2);
  return r;
}

double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine) {
  if (!(e_coarse > 0.0) || !(e_fine > 0.0) || n_fine == n_coarse) {
    return std::numeric_limits<double>::quiet_NaN();
  }
  return std::log(e_coarse / e_fine) /
         std::log(static_cast<double>(n_fine) / n_coarse);
}

double overshoot_metric(std::span<const double> u, double lo, double hi) {
  double umin = u[0];
  double umax = u[0];
  for (double v : u) {
    umin = std::min(umin, v);
    umax = std::max(umax, v);
  }
  return std::max(0.0, umax - hi) + std::max(0.0, lo - umin);
}

double overshoot_metric(const Field1D& u, int comp, double lo, double hi) {
  double umin = u(comp, 0);
  double umax = umin;
  for (int j = 0; j < u.n(); ++j) {
    umin = std::min(umin, u(comp, j));
    umax = std::max(umax, u(comp, j));
  }
  return std::max(0.0, umax - hi) + std::max(0.0, lo - umin);
}

double overshoot_metric(const Field2D& u, int comp, double lo, double hi) {
  double umin = u(comp, 0, 0);
  double umax = umin;
  for (int j = 0; j < u.ny(); ++j) {
    for (int i = 0; i < u.nx(); ++i) {
      umin = std::min(umin, u(comp, i, j));
      umax = std::max(umax, u(comp, i, j));
    }
  }
  return std::max(0.0, umax - hi) + std::max(0.0, lo - umin);
}

}  // namespace ldirk
