//! \file newton.hpp
//! \brief Newton-type stage solver with the paper's stopping rule, backed by
//!        an assembled banded Jacobian in 1D and matrix-free GMRES in 2D.

#ifndef LDIRK_NEWTON_HPP_
#define LDIRK_NEWTON_HPP_

#include <functional>
#include <stdexcept>
#include <vector>

namespace ldirk {

using Vec = std::vector<double>;
using ResidualFn = std::function<void(const Vec&, Vec&)>;
using RefreshFn = std::function<void(const Vec&)>;
using ApplyFn = std::function<void(const Vec&, Vec&)>;

enum class JacStrategy { BandedFD, MatrixFreeKrylov };

struct SolveSettings {
  double rtol = 1e-4;   // stop when ||R||_2 <= rtol * ||R0||_2
  int max_iters = 30;
  JacStrategy strategy = JacStrategy::BandedFD;

  // Banded assembly: unknowns are node-major blocks of block_size components;
  // rows couple to nodes within stencil_radius (wrapped when periodic).
  int block_size = 1;
  int stencil_radius = 3;
  bool periodic = false;

  // Matrix-free Krylov parameters.
  int gmres_restart = 30;
  int gmres_max_iters = 200;
  double lin_tol_max = 1e-2;
  double lin_tol_min = 1e-4;

  int max_damping = 5;  // residual-increase halvings per iteration
  bool verbose = false;
};

struct StageSolveReport {
  int iterations = 0;
  double initial_residual = 0.0;
  double final_residual = 0.0;
  bool converged = false;
  int theta_refreshes = 0;
};

//! NaN/Inf in a residual evaluation — a hard failure distinct from hitting
//! the iteration cap.
class SolverFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

//! Solve residual(v) = 0 starting from guess. theta_refresh, when given, is
//! invoked once per iteration before the Jacobian action so that limiter
//! state enters explicitly and stays frozen through the linear algebra.
//! Non-convergence at the iteration cap returns the best iterate seen with
//! converged = false.
Vec solve_stage(const ResidualFn& residual, Vec guess, const SolveSettings& settings,
                StageSolveReport& report, const RefreshFn& theta_refresh = {});

//! Restarted GMRES on an operator action; returns the solution of
//! apply(x) = rhs with relative residual <= tol (ok = false on breakdown or
//! iteration exhaustion, best iterate returned).
Vec linear_solve_gmres(const ApplyFn& apply, const Vec& rhs, double tol,
                       int restart, int max_iters, bool& ok);

double norm2(const Vec& v);

}  // namespace ldirk

#endif  // LDIRK_NEWTON_HPP_
