//! \file cases.hpp
//! \brief Declarative benchmark case definitions and their initial/exact data.

#ifndef LDIRK_CASES_HPP_
#define LDIRK_CASES_HPP_

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "ldirk/integrators.hpp"

namespace ldirk {

enum class ModelKind {
  Advection,
  Burgers,
  ViscousBurgers,
  ViscousBL,
  Euler1D,
  BL2D,
  Euler2D,
};

enum class IntegratorKind { Ssprk3, Ie, Dirk3, Ldirk3, Bdf2, GlobalTvd, MusclSsprk3 };

struct CaseSpec {
  std::string name;
  int dim = 1;
  ModelKind model = ModelKind::Advection;
  double x_min = 0.0;
  double x_max = 1.0;
  double y_min = 0.0;
  double y_max = 1.0;
  int n = 100;
  int ny = 0;  // 0: same as n
  bool periodic = true;
  double cfl = 1.0;
  double t_final = 1.0;
  IntegratorKind integrator = IntegratorKind::Ldirk3;
  LimiterMode limiter = LimiterMode::NewRatio;
  ReferenceVariable ref = ReferenceVariable::conservative(0);
  double ref_cfl = 0.9;  // SSPRK3 reference-solution CFL
  bool has_exact = false;
  bool has_diffusion = false;
  DiffusionSpec diffusion{};
  EulerModel euler{};

  std::function<double(double)> init_scalar;
  std::function<std::array<double, 3>(double)> init_euler;  // conserved state
  std::function<double(double, double)> init_scalar2;
  std::function<std::array<double, 4>(double, double)> init_euler2;

  int ny_or_n() const { return ny > 0 ? ny : n; }
  bool is_euler() const { return model == ModelKind::Euler1D || model == ModelKind::Euler2D; }
};

std::vector<std::string> builtin_case_names();

//! Construct one of the named benchmark cases; throws std::invalid_argument
//! for unknown names.
CaseSpec builtin_case(const std::string& name);

// String mappings used by the CLI and the report writer.
IntegratorKind parse_integrator(const std::string& s);
std::string integrator_name(IntegratorKind k);
LimiterMode parse_limiter(const std::string& s);
std::string limiter_name(LimiterMode m);
ReferenceVariable parse_reference(const std::string& s);
std::string reference_name(const ReferenceVariable& r);

}  // namespace ldirk

#endif  // LDIRK_CASES_HPP_
