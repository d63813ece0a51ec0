#include "ldirk/cases.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ldirk {

namespace {

constexpr double kPi = std::numbers::pi;

std::array<double, 3> riemann_1d(double x, double x_jump, const EulerModel& m,
                                 const std::array<double, 3>& prim_left,
                                 const std::array<double, 3>& prim_right) {
  const std::array<double, 3>& w = x < x_jump ? prim_left : prim_right;
  std::array<double, 3> u{};
  primitive_to_conservative_1d(m, w.data(), u.data());
  return u;
}

CaseSpec sin4_case() {
  CaseSpec c;
  c.name = "sin4";
  c.model = ModelKind::Advection;
  c.x_min = 0.0;
  c.x_max = 2.0 * kPi;
  c.n = 100;
  c.periodic = true;
  c.cfl = 0.5;
  c.t_final = 2.0 * kPi;
  c.has_exact = true;
  c.ref_cfl = 0.5;
  c.init_scalar = [](double x) {
    const double s = std::sin(0.5 * x);
    return s * s * s * s;
  };
  return c;
}

CaseSpec multiwave_case() {
  CaseSpec c;
  c.name = "multiwave";
  c.model = ModelKind::Advection;
  c.x_min = 0.0;
  c.x_max = 2.0 * kPi;
  c.n = 400;
  c.periodic = true;
  c.cfl = 2.0;
  c.t_final = 2.0 * kPi;
  c.has_exact = true;
  c.init_scalar = [](double x) {
    if (x >= 0.0 && x <= 0.5 * kPi) {
      const double s = std::sin(2.0 * x);
      return s * s * s * s;  // smooth hump on [0, pi/2]
    }
    if (x >= 2.5 && x <= 3.5) return 1.0;  // square pulse
    if (x >= 4.5 && x <= 5.5) return 1.0 - 2.0 * std::abs(x - 5.0);  // hat
    return 0.0;
  };
  return c;
}

CaseSpec burgers_case() {
  CaseSpec c;
  c.name = "burgers";
  c.model = ModelKind::Burgers;
  c.x_min = 0.0;
  c.x_max = 2.0 * kPi;
  c.n = 100;
  c.periodic = true;
  c.cfl = 3.0;
  c.t_final = 2.0;
  c.init_scalar = [](double x) { return (x >= 0.5 * kPi && x <= kPi) ? 2.0 : 0.0; };
  return c;
}

CaseSpec sod_case() {
  CaseSpec c;
  c.name = "sod";
  c.model = ModelKind::Euler1D;
  c.x_min = 0.0;
  c.x_max = 1.0;
  c.n = 400;
  c.periodic = false;
  c.cfl = 4.0;
  c.t_final = 0.2;
  c.ref = ReferenceVariable::density();
  const EulerModel m = c.euler;
  c.init_euler = [m](double x) {
    return riemann_1d(x, 0.5, m, {1.0, 0.0, 1.0}, {0.125, 0.0, 0.1});
  };
  return c;
}

CaseSpec lax_case() {
  CaseSpec c;
  c.name = "lax";
  c.model = ModelKind::Euler1D;
  c.x_min = 0.0;
  c.x_max = 1.0;
  c.n = 300;
  c.periodic = false;
  c.cfl = 3.5;
  c.t_final = 0.14;
  c.ref = ReferenceVariable::density();
  const EulerModel m = c.euler;
  c.init_euler = [m](double x) {
    return riemann_1d(x, 0.5, m, {0.445, 0.698, 3.528}, {0.5, 0.0, 0.571});
  };
  return c;
}

CaseSpec osher_shu_case() {
  CaseSpec c;
  c.name = "osher-shu";
  c.model = ModelKind::Euler1D;
  c.x_min = -5.0;
  c.x_max = 5.0;
  c.n = 400;
  c.periodic = false;
  c.cfl = 2.0;
  c.t_final = 1.8;
  c.ref = ReferenceVariable::density();
  const EulerModel m = c.euler;
  c.init_euler = [m](double x) {
    std::array<double, 3> w{};
    if (x < -4.0) {
      w = {3.857143, 2.6293690, 10.33333};
    } else {
      w = {1.0 + 0.2 * std::sin(5.0 * x), 0.0, 1.0};
    }
    std::array<double, 3> u{};
    primitive_to_conservative_1d(m, w.data(), u.data());
    return u;
  };
  return c;
}

CaseSpec viscous_burgers_case() {
  CaseSpec c;
  c.name = "viscous-burgers";
  c.model = ModelKind::ViscousBurgers;
  c.x_min = -1.5;
  c.x_max = 1.5;
  c.n = 400;
  c.periodic = false;
  c.cfl = 10.0;
  c.t_final = 0.5;
  c.ref_cfl = 0.6;
  c.has_diffusion = true;
  c.diffusion = {0.1, 0.5, 0.05};
  c.init_scalar = [](double x) {
    if (x >= -0.9 && x <= -0.1) return 2.0;
    if (x >= 0.1 && x <= 0.9) return -2.0;
    return 0.0;
  };
  return c;
}

CaseSpec viscous_bl_case() {
  CaseSpec c;
  c.name = "viscous-bl";
  c.model = ModelKind::ViscousBL;
  c.x_min = -1.5;
  c.x_max = 1.5;
  c.n = 500;
  c.periodic = false;
  c.cfl = 10.0;
  c.t_final = 0.5;
  c.ref_cfl = 0.6;
  c.has_diffusion = true;
  c.diffusion = {0.1, 0.2, 0.03};
  c.init_scalar = [](double x) {
    const double isq2 = 1.0 / std::sqrt(2.0);
    if (std::abs(x + isq2) < 0.4) return 0.9;
    if (std::abs(x - isq2) < 0.4) return -0.9;
    return 0.0;
  };
  return c;
}

CaseSpec bl2d_case() {
  CaseSpec c;
  c.name = "bl2d";
  c.dim = 2;
  c.model = ModelKind::BL2D;
  c.x_min = c.y_min = -1.5;
  c.x_max = c.y_max = 1.5;
  c.n = 100;
  c.periodic = false;
  c.cfl = 2.0;
  c.t_final = 0.4;
  c.ref_cfl = 0.9;
  c.init_scalar2 = [](double x, double y) { return x * x + y * y < 0.5 ? 0.9 : 0.0; };
  return c;
}

CaseSpec vortex_case() {
  CaseSpec c;
  c.name = "vortex";
  c.dim = 2;
  c.model = ModelKind::Euler2D;
  c.x_min = c.y_min = 0.0;
  c.x_max = c.y_max = 10.0;
  c.n = 150;
  c.periodic = true;
  c.cfl = 4.0;
  c.t_final = 10.0;
  c.ref = ReferenceVariable::density();
  c.has_exact = true;
  const EulerModel m = c.euler;
  c.init_euler2 = [m](double x, double y) {
    // Isentropic vortex of strength 5 on the (1,1) mean flow; entropy is
    // uniform so density follows from the temperature perturbation.
    constexpr double strength = 5.0;
    const double xb = x - 5.0;
    const double yb = y - 5.0;
    const double r2 = xb * xb + yb * yb;
    const double gm1 = m.gamma - 1.0;
    const double du = strength / (2.0 * kPi) * std::exp(0.5 * (1.0 - r2)) * (-yb);
    const double dv = strength / (2.0 * kPi) * std::exp(0.5 * (1.0 - r2)) * (xb);
    const double dT = -gm1 * strength * strength /
                      (8.0 * m.gamma * kPi * kPi) * std::exp(1.0 - r2);
    const double T = 1.0 + dT;
    const double rho = std::pow(T, 1.0 / gm1);
    const double p = std::pow(T, m.gamma / gm1);
    const std::array<double, 4> w = {rho, 1.0 + du, 1.0 + dv, p};
    std::array<double, 4> u{};
    primitive_to_conservative_2d(m, w.data(), u.data());
    return u;
  };
  return c;
}

}  // namespace

std::vector<std::string> builtin_case_names() {
  return {"sin4",    "multiwave",       "burgers",    "sod",  "lax",
          "osher-shu", "viscous-burgers", "viscous-bl", "bl2d", "vortex"};
}

CaseSpec builtin_case(const std::string& name) {
  if (name == "sin4") return sin4_case();
  if (name == "multiwave") return multiwave_case();
  if (name == "burgers") return burgers_case();
  if (name == "sod") return sod_case();
  if (name == "lax") return lax_case();
  if (name == "osher-shu") return osher_shu_case();
  if (name == "viscous-burgers") return viscous_burgers_case();
  if (name == "viscous-bl") return viscous_bl_case();
  if (name == "bl2d") return bl2d_case();
  if (name == "vortex") return vortex_case();
  throw std::invalid_argument("unknown case name: " + name);
}

IntegratorKind parse_integrator(const std::string& s) {
  if (s == "ssprk3") return IntegratorKind::Ssprk3;
  if (s == "ie") return IntegratorKind::Ie;
  if (s == "dirk3") return IntegratorKind::Dirk3;
  if (s == "ldirk3") return IntegratorKind::Ldirk3;
  if (s == "bdf2") return IntegratorKind::Bdf2;
  if (s == "global-tvd") return IntegratorKind::GlobalTvd;
  if (s == "muscl-ssprk3") return IntegratorKind::MusclSsprk3;
  throw std::invalid_argument("unknown integrator: " + s);
}

std::string integrator_name(IntegratorKind k) {
  switch (k) {
    case IntegratorKind::Ssprk3: return "ssprk3";
    case IntegratorKind::Ie: return "ie";
    case IntegratorKind::Dirk3: return "dirk3";
    case IntegratorKind::Ldirk3: return "ldirk3";
    case IntegratorKind::Bdf2: return "bdf2";
    case IntegratorKind::GlobalTvd: return "global-tvd";
    case IntegratorKind::MusclSsprk3: return "muscl-ssprk3";
  }
  return "?";
}

LimiterMode parse_limiter(const std::string& s) {
  if (s == "new") return LimiterMode::NewRatio;
  if (s == "legacy") return LimiterMode::Legacy;
  if (s == "off") return LimiterMode::Off;
  throw std::invalid_argument("unknown limiter mode: " + s);
}

std::string limiter_name(LimiterMode m) {
  switch (m) {
    case LimiterMode::NewRatio: return "new";
    case LimiterMode::Legacy: return "legacy";
    case LimiterMode::Off: return "off";
    case LimiterMode::ForcedZero: return "forced-zero";
  }
  return "?";
}

ReferenceVariable parse_reference(const std::string& s) {
  if (s == "density") return ReferenceVariable::density();
  if (s == "pressure") return ReferenceVariable::pressure();
  if (s.rfind("conservative:", 0) == 0) {
    return ReferenceVariable::conservative(std::stoi(s.substr(13)));
  }
  throw std::invalid_argument("unknown reference variable: " + s);
}

std::string reference_name(const ReferenceVariable& r) {
  switch (r.kind) {
    case ReferenceVariable::Kind::Density: return "density";
    case ReferenceVariable::Kind::Pressure: return "pressure";
    case ReferenceVariable::Kind::Conservative:
      return "conservative:" + std::to_string(r.component);
  }
  return "?";
}

}  // namespace ldirk
