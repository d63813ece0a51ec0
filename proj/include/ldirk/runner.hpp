//! \file runner.hpp
//! \brief Case execution: operator construction, time loop, reference runs
//!        and convergence tables.

#ifndef LDIRK_RUNNER_HPP_
#define LDIRK_RUNNER_HPP_

#include <memory>
#include <optional>
#include <string>

#include "ldirk/cases.hpp"
#include "ldirk/norms.hpp"

namespace ldirk {

struct SolveStats {
  long stages = 0;
  long converged = 0;
  long nonconverged = 0;
  long total_iterations = 0;
  int max_iterations = 0;
  // Sum over stage solves of (cell measure) * sqrt(N) * ||R_final||, a bound
  // on the conservation drift the solver tolerance admits.
  double conservation_accum = 0.0;

  void add(const StageSolveReport& rep, double cell_measure, int n_unknowns);
  void merge(const SolveStats& other);
  double nonconverged_fraction() const {
    return stages == 0 ? 0.0 : static_cast<double>(nonconverged) / stages;
  }
};

struct RunResult {
  CaseSpec spec;
  Field1D field;        // dim == 1
  Field2D field2;       // dim == 2
  Field1D initial;
  Field2D initial2;
  int steps = 0;
  double elapsed_seconds = 0.0;
  std::vector<double> tv_history;  // reference-variable TV, 1D runs
  SolveStats stats;
  int tvd_fallbacks = 0;  // global-tvd restarts
  bool failed = false;
  std::string error;
};

// Operator and field construction from a case definition. The reconstruction
// follows the integrator (muscl-ssprk3 selects MUSCL, everything else WENO5).
std::unique_ptr<Op1D> make_op_1d(const CaseSpec& spec);
std::unique_ptr<Op2D> make_op_2d(const CaseSpec& spec);
Field1D initial_field_1d(const CaseSpec& spec);
Field2D initial_field_2d(const CaseSpec& spec);

// Exact solutions where available (translation cases); throws
// std::invalid_argument otherwise, directing callers to reference runs.
Field1D exact_field_1d(const CaseSpec& spec, double t);
Field2D exact_field_2d(const CaseSpec& spec, double t);

//! Rejects invalid option combinations (legacy limiter off ldirk3, pressure
//! reference on scalar models, 2D global-tvd, ...).
void validate_case(const CaseSpec& spec);

//! Execute the case's time loop with CFL-based steps clipped to land on
//! t_final exactly. Solver hard failures mark the result failed.
RunResult run_case(const CaseSpec& spec, const SolveSettings& solve = {});

//! SSPRK3+WENO5 companion run at the case's reference CFL; refine doubles the
//! mesh that many times.
RunResult reference_run(const CaseSpec& spec, int refine = 0);

struct ConvergenceRow {
  int n = 0;
  NormReport norms;
  double order_linf = 0.0;
  double order_l1 = 0.0;
  double order_l2 = 0.0;  // NaN in the first row / for zero errors
};

//! Errors against the exact solution over a resolution sweep (1D cases).
std::vector<ConvergenceRow> convergence_table(const CaseSpec& base,
                                              std::span<const int> resolutions,
                                              const SolveSettings& solve = {});

}  // namespace ldirk

#endif  // LDIRK_RUNNER_HPP_
