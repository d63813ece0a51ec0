//! \file physics.hpp
//! \brief Equation definitions: fluxes, wave speeds, Euler eigensystems,
//!        primitive conversions and smoothed diffusion coefficients.

#ifndef LDIRK_PHYSICS_HPP_
#define LDIRK_PHYSICS_HPP_

#include <array>
#include <cmath>
#include <functional>
#include <string>

namespace ldirk {

//! Scalar conservation law u_t + f(u)_x [+ g(u)_y] = 0.
struct ScalarLaw {
  std::string name;
  std::function<double(double)> flux;        // f(u)
  std::function<double(double)> dflux;       // f'(u)
  std::function<double(double)> yflux;       // g(u), 2D only
  std::function<double(double)> dyflux;      // g'(u)

  bool has_yflux() const { return static_cast<bool>(yflux); }
};

ScalarLaw linear_advection();    // f(u) = u
ScalarLaw burgers();             // f(u) = u^2/2
ScalarLaw buckley_leverett();    // f(u) = u^2/(u^2+(1-u)^2)
ScalarLaw buckley_leverett_2d(); // adds g(u) = f(u)(1-5(1-u)^2)

//! Smoothed discontinuous diffusion coefficient nu(u) = (1+tanh((|u|-u_c)/eps1))/2,
//! scaled by eps in the dissipation flux eps*nu(u)*u_x.
struct DiffusionSpec {
  double eps = 0.0;
  double u_c = 0.5;
  double eps1 = 0.05;

  double nu(double u) const {
    return 0.5 * (1.0 + std::tanh((std::abs(u) - u_c) / eps1));
  }
};

//! Ideal-gas Euler model. gamma is stored rather than hard-coded so tests
//! stay explicit about the constant in use.
struct EulerModel {
  double gamma = 1.4;
};

struct Eigensystem {
  // Right eigenvectors as columns of R, left eigenvectors as rows of Rinv.
  std::array<std::array<double, 4>, 4> R{};
  std::array<std::array<double, 4>, 4> Rinv{};
  std::array<double, 4> lambda{};
  int m = 0;
};

// --- 1D Euler, conserved state U = (rho, rho*u, e) -------------------------

double euler_pressure_1d(const EulerModel& m, const double* U);
void euler_flux_1d(const EulerModel& m, const double* U, double* F);
double euler_max_signal_1d(const EulerModel& m, const double* U);  // |u| + c

// Throws std::domain_error for nonpositive density or pressure.
void euler_validate_1d(const EulerModel& m, const double* U);

// (rho, u, p) <-> (rho, rho*u, e)
void primitive_to_conservative_1d(const EulerModel& m, const double* W, double* U);
void conservative_to_primitive_1d(const EulerModel& m, const double* U, double* W);

Eigensystem eigensystem_1d(const EulerModel& m, const double* U_avg);

// --- 2D Euler, conserved state U = (rho, rho*u, rho*v, e) ------------------

enum class Axis : int { X = 0, Y = 1 };

double euler_pressure_2d(const EulerModel& m, const double* U);
void euler_flux_2d(const EulerModel& m, const double* U, Axis axis, double* F);
double euler_max_signal_2d(const EulerModel& m, const double* U, Axis axis);
void euler_validate_2d(const EulerModel& m, const double* U);

void primitive_to_conservative_2d(const EulerModel& m, const double* W, double* U);
void conservative_to_primitive_2d(const EulerModel& m, const double* U, double* W);

Eigensystem eigensystem_2d(const EulerModel& m, const double* U_avg, Axis axis);

}  // namespace ldirk

#endif  // LDIRK_PHYSICS_HPP_
