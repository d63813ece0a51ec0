#include "ldirk/runner.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ldirk {

void SolveStats::add(const StageSolveReport& rep, double cell_measure, int n_unknowns) {
  ++stages;
  if (rep.converged) {
    ++converged;
  } else {
    ++nonconverged;
  }
  total_iterations += rep.iterations;
  max_iterations = std::max(max_iterations, rep.iterations);
  conservation_accum +=
      cell_measure * std::sqrt(static_cast<double>(n_unknowns)) * rep.final_residual;
}

void SolveStats::merge(const SolveStats& other) {
  stages += other.stages;
  converged += other.converged;
  nonconverged += other.nonconverged;
  total_iterations += other.total_iterations;
  max_iterations = std::max(max_iterations, other.max_iterations);
  conservation_accum += other.conservation_accum;
}

namespace {

ScalarLaw law_for(const CaseSpec& spec) {
  switch (spec.model) {
    case ModelKind::Advection: return linear_advection();
    case ModelKind::Burgers:
    case ModelKind::ViscousBurgers: return burgers();
    case ModelKind::ViscousBL: return buckley_leverett();
    case ModelKind::BL2D: return buckley_leverett_2d();
    default: throw std::logic_error("law_for: not a scalar model");
  }
}

Recon recon_for(const CaseSpec& spec) {
  return spec.integrator == IntegratorKind::MusclSsprk3 ? Recon::Muscl : Recon::Weno5;
}

Boundary boundary_for(const CaseSpec& spec) {
  return spec.periodic ? Boundary::periodic() : Boundary::extrapolate();
}

}  // namespace

std::unique_ptr<Op1D> make_op_1d(const CaseSpec& spec) {
  const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
  const Boundary bc = boundary_for(spec);
  if (spec.model == ModelKind::Euler1D) {
    return std::make_unique<EulerOp1D>(grid, bc, spec.euler, recon_for(spec));
  }
  std::optional<DiffusionSpec> diff;
  if (spec.has_diffusion) diff = spec.diffusion;
  return std::make_unique<ScalarOp1D>(grid, bc, law_for(spec), recon_for(spec), diff);
}

std::unique_ptr<Op2D> make_op_2d(const CaseSpec& spec) {
  const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                   spec.y_max, spec.ny_or_n(), spec.periodic);
  const Boundary bc = boundary_for(spec);
  if (spec.model == ModelKind::Euler2D) {
    return std::make_unique<EulerOp2D>(grid, bc, bc, spec.euler, recon_for(spec));
  }
  return std::make_unique<ScalarOp2D>(grid, bc, bc, law_for(spec), recon_for(spec));
}

Field1D initial_field_1d(const CaseSpec& spec) {
  const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
  if (spec.model == ModelKind::Euler1D) {
    Field1D f(3, grid.n);
    for (int j = 0; j < grid.n; ++j) {
      const std::array<double, 3> u = spec.init_euler(grid.node(j));
      for (int c = 0; c < 3; ++c) f(c, j) = u[c];
    }
    return f;
  }
  Field1D f(1, grid.n);
  for (int j = 0; j < grid.n; ++j) f(0, j) = spec.init_scalar(grid.node(j));
  return f;
}

Field2D initial_field_2d(const CaseSpec& spec) {
  const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                   spec.y_max, spec.ny_or_n(), spec.periodic);
  if (spec.model == ModelKind::Euler2D) {
    Field2D f(4, grid.x.n, grid.y.n);
    for (int j = 0; j < grid.y.n; ++j) {
      for (int i = 0; i < grid.x.n; ++i) {
        const std::array<double, 4> u = spec.init_euler2(grid.x.node(i), grid.y.node(j));
        for (int c = 0; c < 4; ++c) f(c, i, j) = u[c];
      }
    }
    return f;
  }
  Field2D f(1, grid.x.n, grid.y.n);
  for (int j = 0; j < grid.y.n; ++j) {
    for (int i = 0; i < grid.x.n; ++i) {
      f(0, i, j) = spec.init_scalar2(grid.x.node(i), grid.y.node(j));
    }
  }
  return f;
}

namespace {

double wrap_coord(double x, double lo, double hi) {
  const double L = hi - lo;
  double y = std::fmod(x - lo, L);
  if (y < 0.0) y += L;
  return lo + y;
}

}  // namespace

Field1D exact_field_1d(const CaseSpec& spec, double t) {
  if (!spec.has_exact || spec.dim != 1) {
    throw std::invalid_argument(
        "no closed-form solution for this case; use a reference run");
  }
  const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
  Field1D f(1, grid.n);
  for (int j = 0; j < grid.n; ++j) {
    f(0, j) = spec.init_scalar(wrap_coord(grid.node(j) - t, spec.x_min, spec.x_max));
  }
  return f;
}

Field2D exact_field_2d(const CaseSpec& spec, double t) {
  if (!spec.has_exact || spec.dim != 2) {
    throw std::invalid_argument(
        "no closed-form solution for this case; use a reference run");
  }
  const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                   spec.y_max, spec.ny_or_n(), spec.periodic);
  Field2D f(4, grid.x.n, grid.y.n);
  for (int j = 0; j < grid.y.n; ++j) {
    for (int i = 0; i < grid.x.n; ++i) {
      const double xs = wrap_coord(grid.x.node(i) - t, spec.x_min, spec.x_max);
      const double ys = wrap_coord(grid.y.node(j) - t, spec.y_min, spec.y_max);
      const std::array<double, 4> u = spec.init_euler2(xs, ys);
      for (int c = 0; c < 4; ++c) f(c, i, j) = u[c];
    }
  }
  return f;
}

void validate_case(const CaseSpec& spec) {
  const bool implicit_limited = spec.integrator == IntegratorKind::Ldirk3;
  if (spec.limiter == LimiterMode::Legacy && !implicit_limited) {
    throw std::invalid_argument("the legacy limiter requires the ldirk3 integrator");
  }
  if (spec.limiter == LimiterMode::Legacy && spec.dim == 2) {
    throw std::invalid_argument("the legacy limiter is defined for 1D problems only");
  }
  if (spec.integrator == IntegratorKind::GlobalTvd && spec.dim == 2) {
    throw std::invalid_argument("global-tvd is available for 1D problems only");
  }
  if (!spec.is_euler() &&
      (spec.ref.kind != ReferenceVariable::Kind::Conservative || spec.ref.component != 0)) {
    throw std::invalid_argument(
        "density/pressure references require an Euler model; use conservative:0");
  }
  if (spec.is_euler() && spec.ref.kind == ReferenceVariable::Kind::Conservative &&
      (spec.ref.component < 0 || spec.ref.component >= (spec.dim == 1 ? 3 : 4))) {
    throw std::invalid_argument("conservative reference component out of range");
  }
}

namespace {

struct TimeLoop {
  double t = 0.0;
  double t_final = 0.0;
  int steps = 0;

  bool done() const { return t >= t_final - 1e-12 * std::max(1.0, t_final); }
  double clip(double dt) { return std::min(dt, t_final - t); }
  void advance(double dt) {
    t += dt;
    ++steps;
  }
};

void run_1d(const CaseSpec& spec, const SolveSettings& solve, RunResult& out) {
  const auto op = make_op_1d(spec);
  const Grid1D& grid = op->grid();
  const int nunk = op->ncomp() * grid.n;

  Field1D u = initial_field_1d(spec);
  out.initial = u;

  std::vector<double> w(grid.n + 2 * kGhost);
  auto record_tv = [&](Field1D& f) {
    op->fill(f);
    op->extract_reference(f, spec.ref, w);
    out.tv_history.push_back(total_variation(
        std::span<const double>(w.data() + kGhost, grid.n), grid.periodic));
  };
  record_tv(u);

  Field1D u_prev(op->ncomp(), grid.n);
  bool have_prev = false;

  std::vector<StageSolveReport> reports;
  TimeLoop loop;
  loop.t_final = spec.t_final;
  while (!loop.done()) {
    const double dt = loop.clip(cfl_dt(*op, u, spec.cfl));
    reports.clear();
    Field1D next(op->ncomp(), grid.n);
    switch (spec.integrator) {
      case IntegratorKind::Ssprk3:
      case IntegratorKind::MusclSsprk3:
        next = step_ssprk3(*op, u, dt);
        break;
      case IntegratorKind::Ie:
        next = step_ie(*op, u, dt, solve, reports);
        break;
      case IntegratorKind::Dirk3:
        next = step_dirk3(*op, u, dt, solve, reports);
        break;
      case IntegratorKind::Ldirk3:
        next = step_ldirk3(*op, u, dt, spec.limiter, spec.ref, solve, reports);
        break;
      case IntegratorKind::Bdf2: {
        if (!have_prev) {
          next = step_ie(*op, u, dt, solve, reports);
        } else {
          next = step_bdf2(*op, u_prev, u, dt, solve, reports);
        }
        u_prev = u;
        have_prev = true;
        break;
      }
      case IntegratorKind::GlobalTvd: {
        bool fb = false;
        next = step_global_tvd(*op, u, dt, spec.ref, solve, reports, &fb);
        if (fb) ++out.tvd_fallbacks;
        break;
      }
    }
    u = std::move(next);
    loop.advance(dt);
    for (const auto& rep : reports) out.stats.add(rep, grid.dx, nunk);
    record_tv(u);
  }
  out.steps = loop.steps;
  out.field = std::move(u);
}

void run_2d(const CaseSpec& spec, const SolveSettings& solve, RunResult& out) {
  const auto op = make_op_2d(spec);
  const Grid2D& grid = op->grid();
  const int nunk = op->ncomp() * grid.x.n * grid.y.n;
  const double measure = grid.x.dx * grid.y.dx;

  Field2D u = initial_field_2d(spec);
  out.initial2 = u;

  Field2D u_prev(op->ncomp(), grid.x.n, grid.y.n);
  bool have_prev = false;

  std::vector<StageSolveReport> reports;
  TimeLoop loop;
  loop.t_final = spec.t_final;
  while (!loop.done()) {
    const double dt = loop.clip(cfl_dt(*op, u, spec.cfl));
    reports.clear();
    Field2D next(op->ncomp(), grid.x.n, grid.y.n);
    switch (spec.integrator) {
      case IntegratorKind::Ssprk3:
      case IntegratorKind::MusclSsprk3:
        next = step_ssprk3(*op, u, dt);
        break;
      case IntegratorKind::Ie:
        next = step_ie(*op, u, dt, solve, reports);
        break;
      case IntegratorKind::Dirk3:
        next = step_dirk3(*op, u, dt, solve, reports);
        break;
      case IntegratorKind::Ldirk3:
        next = step_ldirk3(*op, u, dt, spec.limiter, spec.ref, solve, reports);
        break;
      case IntegratorKind::Bdf2: {
        if (!have_prev) {
          next = step_ie(*op, u, dt, solve, reports);
        } else {
          next = step_bdf2(*op, u_prev, u, dt, solve, reports);
        }
        u_prev = u;
        have_prev = true;
        break;
      }
      case IntegratorKind::GlobalTvd:
        throw std::invalid_argument("global-tvd is available for 1D problems only");
    }
    u = std::move(next);
    loop.advance(dt);
    for (const auto& rep : reports) out.stats.add(rep, measure, nunk);
  }
  out.steps = loop.steps;
  out.field2 = std::move(u);
}

}  // namespace

RunResult run_case(const CaseSpec& spec, const SolveSettings& solve) {
  validate_case(spec);
  RunResult out;
  out.spec = spec;
  const auto start = std::chrono::steady_clock::now();
  try {
    if (spec.dim == 1) {
      run_1d(spec, solve, out);
    } else {
      run_2d(spec, solve, out);
    }
  } catch (const SolverFailure& e) {
    out.failed = true;
    out.error = e.what();
  } catch (const std::domain_error& e) {
    out.failed = true;
    out.error = e.what();
  }
  out.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

RunResult reference_run(const CaseSpec& spec, int refine) {
  CaseSpec ref = spec;
  ref.integrator = IntegratorKind::Ssprk3;
  ref.cfl = spec.ref_cfl;
  for (int k = 0; k < refine; ++k) {
    ref.n *= 2;
    if (ref.ny > 0) ref.ny *= 2;
  }
  return run_case(ref);
}

std::vector<ConvergenceRow> convergence_table(const CaseSpec& base,
                                              std::span<const int> resolutions,
                                              const SolveSettings& solve) {
  std::vector<ConvergenceRow> rows;
  for (int n : resolutions) {
    CaseSpec spec = base;
    spec.n = n;
    RunResult run = run_case(spec, solve);
    if (run.failed) throw SolverFailure("convergence run failed: " + run.error);
    const Field1D exact = exact_field_1d(spec, spec.t_final);
    const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
    ConvergenceRow row;
    row.n = n;
    row.norms = error_norms(run.field, exact, grid, 0);
    if (!rows.empty()) {
      const ConvergenceRow& prev = rows.back();
      row.order_linf = observed_order(prev.norms.linf, row.norms.linf, prev.n, n);
      row.order_l1 = observed_order(prev.norms.l1, row.norms.l1, prev.n, n);
      row.order_l2 = observed_order(prev.norms.l2, row.norms.l2, prev.n, n);
    } else {
      row.order_linf = row.order_l1 = row.order_l2 =
          std::numeric_limits<double>::quiet_NaN();
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace ldirk
