//! \file integrators.hpp
//! \brief Time integrators: SSPRK3, implicit Euler, DIRK3, L-DIRK3 (1D/2D),
//!        BDF2, the globally limited variant, and CFL step selection.

#ifndef LDIRK_INTEGRATORS_HPP_
#define LDIRK_INTEGRATORS_HPP_

#include "ldirk/newton.hpp"
#include "ldirk/ops.hpp"
#include "ldirk/tableau.hpp"

namespace ldirk {

enum class LimiterMode {
  NewRatio,    // stage-ratio limiter
  Legacy,      // derivative-based limiter
  Off,         // theta forced to 1 (plain DIRK3 through the limited path)
  ForcedZero,  // theta forced to 0 (successive implicit Euler), oracle use
};

// Node-major flattening: index = node * ncomp + component (2D: node = j*nx+i).
Vec flatten(const Field1D& f);
void flatten(const Field1D& f, Vec& out);
void unflatten(const Vec& v, Field1D& f);
Vec flatten(const Field2D& f);
void flatten(const Field2D& f, Vec& out);
void unflatten(const Vec& v, Field2D& f);

//! A semidiscrete system in flat-vector form, u' = rhs(u).
struct OdeSystem {
  int size = 0;
  std::function<void(const Vec&, Vec&)> rhs;
};

OdeSystem make_ode_system(const Op1D& op);
OdeSystem make_ode_system(const Op2D& op);

// Generic flat-vector steps (PDE wrappers below delegate to these).
Vec ode_step_ie(const OdeSystem& sys, const Vec& u, double dt,
                const SolveSettings& s, StageSolveReport& report);
Vec ode_step_dirk3(const OdeSystem& sys, const Vec& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports);
//! Successive implicit Euler sub-steps of sizes (alpha, tau2-alpha, 1-tau2)*dt.
Vec ode_step_ie_chain(const OdeSystem& sys, const Vec& u, double dt,
                      const SolveSettings& s, std::vector<StageSolveReport>& reports);
Vec ode_step_ssprk3(const OdeSystem& sys, const Vec& u, double dt);
Vec ode_step_bdf2(const OdeSystem& sys, const Vec& u_prev, const Vec& u, double dt,
                  const SolveSettings& s, StageSolveReport& report);

// Fill the structural solver fields (strategy, block size, periodicity) the
// operator dictates, keeping the caller's tolerances.
SolveSettings settings_for(const Op1D& op, SolveSettings s);
SolveSettings settings_for(const Op2D& op, SolveSettings s);

Field1D step_ie(const Op1D& op, const Field1D& u, double dt,
                const SolveSettings& s, std::vector<StageSolveReport>& reports);
Field1D step_dirk3(const Op1D& op, const Field1D& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports);
Field1D step_ssprk3(const Op1D& op, const Field1D& u, double dt);
Field1D step_bdf2(const Op1D& op, const Field1D& u_prev, const Field1D& u, double dt,
                  const SolveSettings& s, std::vector<StageSolveReport>& reports);

//! One L-DIRK3 step with per-interface blended coefficients; the limiter is
//! refreshed from the current iterate at the start of every Newton iteration
//! and frozen through its linear algebra.
Field1D step_ldirk3(const Op1D& op, const Field1D& u, double dt, LimiterMode mode,
                    const ReferenceVariable& ref, const SolveSettings& s,
                    std::vector<StageSolveReport>& reports);

//! Tentative unlimited DIRK3 step, kept when the total variation of the
//! reference variable decreases and otherwise recomputed as an IE chain.
Field1D step_global_tvd(const Op1D& op, const Field1D& u, double dt,
                        const ReferenceVariable& ref, const SolveSettings& s,
                        std::vector<StageSolveReport>& reports, bool* fell_back = nullptr);

Field2D step_ie(const Op2D& op, const Field2D& u, double dt,
                const SolveSettings& s, std::vector<StageSolveReport>& reports);
Field2D step_dirk3(const Op2D& op, const Field2D& u, double dt,
                   const SolveSettings& s, std::vector<StageSolveReport>& reports);
Field2D step_ssprk3(const Op2D& op, const Field2D& u, double dt);
Field2D step_bdf2(const Op2D& op, const Field2D& u_prev, const Field2D& u, double dt,
                  const SolveSettings& s, std::vector<StageSolveReport>& reports);
Field2D step_ldirk3(const Op2D& op, const Field2D& u, double dt, LimiterMode mode,
                    const ReferenceVariable& ref, const SolveSettings& s,
                    std::vector<StageSolveReport>& reports);

//! CFL-based step: dt * (a/dx + eps*nu_max/dx^2) = cfl, reducing to
//! dt = cfl*dx/a without diffusion. Throws std::domain_error when both the
//! wave speed and the diffusion scale vanish.
double cfl_dt(const Op1D& op, const Field1D& u, double cfl);
//! 2D hyperbolic form dt * (a_x/dx + a_y/dy) = cfl.
double cfl_dt(const Op2D& op, const Field2D& u, double cfl);

}  // namespace ldirk

#endif  // LDIRK_INTEGRATORS_HPP_
