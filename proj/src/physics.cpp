#include "ldirk/physics.hpp"

#include <stdexcept>

namespace ldirk {

ScalarLaw linear_advection() {
  ScalarLaw law;
  law.name = "advection";
  law.flux = [](double u) { return u; };
  law.dflux = [](double) { return 1.0; };
  return law;
}

ScalarLaw burgers() {
  ScalarLaw law;
  law.name = "burgers";
  law.flux = [](double u) { return 0.5 * u * u; };
  law.dflux = [](double u) { return u; };
  return law;
}

namespace {
// u^2 + (1-u)^2 has minimum 1/2 over the reals, so no denominator guard is
// needed anywhere below.
inline double bl_den(double u) { return u * u + (1.0 - u) * (1.0 - u); }

inline double bl_f(double u) { return u * u / bl_den(u); }

inline double bl_df(double u) {
  const double d = bl_den(u);
  return 2.0 * u * (1.0 - u) / (d * d);
}
}  // namespace

ScalarLaw buckley_leverett() {
  ScalarLaw law;
  law.name = "buckley-leverett";
  law.flux = bl_f;
  law.dflux = bl_df;
  return law;
}

ScalarLaw buckley_leverett_2d() {
  ScalarLaw law = buckley_leverett();
  law.name = "buckley-leverett-2d";
  law.yflux = [](double u) {
    const double s = 1.0 - u;
    return bl_f(u) * (1.0 - 5.0 * s * s);
  };
  law.dyflux = [](double u) {
    const double s = 1.0 - u;
    return bl_df(u) * (1.0 - 5.0 * s * s) + bl_f(u) * 10.0 * s;
  };
  return law;
}

// --- 1D Euler ---------------------------------------------------------------

double euler_pressure_1d(const EulerModel& m, const double* U) {
  return (m.gamma - 1.0) * (U[2] - 0.5 * U[1] * U[1] / U[0]);
}

void euler_validate_1d(const EulerModel& m, const double* U) {
  if (!(U[0] > 0.0)) throw std::domain_error("euler: nonpositive density");
  if (!(euler_pressure_1d(m, U) > 0.0)) throw std::domain_error("euler: nonpositive pressure");
}

void euler_flux_1d(const EulerModel& m, const double* U, double* F) {
  euler_validate_1d(m, U);
  const double u = U[1] / U[0];
  const double p = euler_pressure_1d(m, U);
  F[0] = U[1];
  F[1] = U[1] * u + p;
  F[2] = (U[2] + p) * u;
}

double euler_max_signal_1d(const EulerModel& m, const double* U) {
  const double u = U[1] / U[0];
  const double c = std::sqrt(m.gamma * euler_pressure_1d(m, U) / U[0]);
  return std::abs(u) + c;
}

void primitive_to_conservative_1d(const EulerModel& m, const double* W, double* U) {
  if (!(W[0] > 0.0) || !(W[2] > 0.0)) throw std::domain_error("euler: nonphysical primitive state");
  U[0] = W[0];
  U[1] = W[0] * W[1];
  U[2] = W[2] / (m.gamma - 1.0) + 0.5 * W[0] * W[1] * W[1];
}

void conservative_to_primitive_1d(const EulerModel& m, const double* U, double* W) {
  euler_validate_1d(m, U);
  W[0] = U[0];
  W[1] = U[1] / U[0];
  W[2] = euler_pressure_1d(m, U);
}

Eigensystem eigensystem_1d(const EulerModel& m, const double* U) {
  euler_validate_1d(m, U);
  const double gm1 = m.gamma - 1.0;
  const double rho = U[0];
  const double u = U[1] / rho;
  const double p = euler_pressure_1d(m, U);
  const double c = std::sqrt(m.gamma * p / rho);
  const double H = (U[2] + p) / rho;

  Eigensystem es;
  es.m = 3;
  es.lambda = {u - c, u, u + c, 0.0};

  es.R[0] = {1.0, 1.0, 1.0, 0.0};
  es.R[1] = {u - c, u, u + c, 0.0};
  es.R[2] = {H - u * c, 0.5 * u * u, H + u * c, 0.0};

  const double b2 = gm1 / (c * c);
  const double b1 = 0.5 * b2 * u * u;
  es.Rinv[0] = {0.5 * (b1 + u / c), -0.5 * (b2 * u + 1.0 / c), 0.5 * b2, 0.0};
  es.Rinv[1] = {1.0 - b1, b2 * u, -b2, 0.0};
  es.Rinv[2] = {0.5 * (b1 - u / c), -0.5 * (b2 * u - 1.0 / c), 0.5 * b2, 0.0};
  return es;
}

// --- 2D Euler ---------------------------------------------------------------

double euler_pressure_2d(const EulerModel& m, const double* U) {
  return (m.gamma - 1.0) * (U[3] - 0.5 * (U[1] * U[1] + U[2] * U[2]) / U[0]);
}

void euler_validate_2d(const EulerModel& m, const double* U) {
  if (!(U[0] > 0.0)) throw std::domain_error("euler: nonpositive density");
  if (!(euler_pressure_2d(m, U) > 0.0)) throw std::domain_error("euler: nonpositive pressure");
}

void euler_flux_2d(const EulerModel& m, const double* U, Axis axis, double* F) {
  euler_validate_2d(m, U);
  const double rho = U[0];
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const double p = euler_pressure_2d(m, U);
  if (axis == Axis::X) {
    F[0] = U[1];
    F[1] = U[1] * u + p;
    F[2] = U[1] * v;
    F[3] = (U[3] + p) * u;
  } else {
    F[0] = U[2];
    F[1] = U[2] * u;
    F[2] = U[2] * v + p;
    F[3] = (U[3] + p) * v;
  }
}

double euler_max_signal_2d(const EulerModel& m, const double* U, Axis axis) {
  const double vel = (axis == Axis::X ? U[1] : U[2]) / U[0];
  const double c = std::sqrt(m.gamma * euler_pressure_2d(m, U) / U[0]);
  return std::abs(vel) + c;
}

void primitive_to_conservative_2d(const EulerModel& m, const double* W, double* U) {
  if (!(W[0] > 0.0) || !(W[3] > 0.0)) throw std::domain_error("euler: nonphysical primitive state");
  U[0] = W[0];
  U[1] = W[0] * W[1];
  U[2] = W[0] * W[2];
  U[3] = W[3] / (m.gamma - 1.0) + 0.5 * W[0] * (W[1] * W[1] + W[2] * W[2]);
}

void conservative_to_primitive_2d(const EulerModel& m, const double* U, double* W) {
  euler_validate_2d(m, U);
  W[0] = U[0];
  W[1] = U[1] / U[0];
  W[2] = U[2] / U[0];
  W[3] = euler_pressure_2d(m, U);
}

namespace {

Eigensystem eigensystem_2d_x(const EulerModel& m, const double* U) {
  euler_validate_2d(m, U);
  const double gm1 = m.gamma - 1.0;
  const double rho = U[0];
  const double u = U[1] / rho;
  const double v = U[2] / rho;
  const double p = euler_pressure_2d(m, U);
  const double c = std::sqrt(m.gamma * p / rho);
  const double H = (U[3] + p) / rho;
  const double q2 = u * u + v * v;

  Eigensystem es;
  es.m = 4;
  es.lambda = {u - c, u, u, u + c};

  // Columns ordered (u-c, entropy, shear, u+c).
  es.R[0] = {1.0, 1.0, 0.0, 1.0};
  es.R[1] = {u - c, u, 0.0, u + c};
  es.R[2] = {v, v, 1.0, v};
  es.R[3] = {H - u * c, 0.5 * q2, v, H + u * c};

  const double na = 0.5 / (c * c);
  const double qa = gm1 / (c * c);
  es.Rinv[0] = {na * (0.5 * gm1 * q2 + u * c), -na * (gm1 * u + c), -na * gm1 * v, na * gm1};
  es.Rinv[1] = {1.0 - na * gm1 * q2, qa * u, qa * v, -qa};
  es.Rinv[2] = {-v, 0.0, 1.0, 0.0};
  es.Rinv[3] = {na * (0.5 * gm1 * q2 - u * c), -na * (gm1 * u - c), -na * gm1 * v, na * gm1};
  return es;
}

}  // namespace

Eigensystem eigensystem_2d(const EulerModel& m, const double* U, Axis axis) {
  if (axis == Axis::X) return eigensystem_2d_x(m, U);
  // The y-direction Jacobian is the x-direction one of the (u <-> v)-swapped
  // state conjugated by the momentum swap P: A_y(U) = P A_x(P U) P.
  const double Us[4] = {U[0], U[2], U[1], U[3]};
  Eigensystem ex = eigensystem_2d_x(m, Us);
  Eigensystem es;
  es.m = 4;
  es.lambda = ex.lambda;
  auto p = [](int k) { return k == 1 ? 2 : (k == 2 ? 1 : k); };
  for (int r = 0; r < 4; ++r) {
    for (int col = 0; col < 4; ++col) {
      es.R[r][col] = ex.R[p(r)][col];        // R_y = P R_x
      es.Rinv[r][col] = ex.Rinv[r][p(col)];  // Rinv_y = Rinv_x P
    }
  }
  return es;
}

}  // namespace ldirk
