#include "ldirk/output.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ldirk {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> component_names(ModelKind model) {
  switch (model) {
    case ModelKind::Euler1D: return {"rho", "momentum", "energy"};
    case ModelKind::Euler2D: return {"rho", "momentum_x", "momentum_y", "energy"};
    default: return {"u"};
  }
}

namespace {

double field_min(const Field1D& f, int c) {
  double m = f(c, 0);
  for (int j = 0; j < f.n(); ++j) m = std::min(m, f(c, j));
  return m;
}

double field_max(const Field1D& f, int c) {
  double m = f(c, 0);
  for (int j = 0; j < f.n(); ++j) m = std::max(m, f(c, j));
  return m;
}

double field_min(const Field2D& f, int c) {
  double m = f(c, 0, 0);
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) m = std::min(m, f(c, i, j));
  }
  return m;
}

double field_max(const Field2D& f, int c) {
  double m = f(c, 0, 0);
  for (int j = 0; j < f.ny(); ++j) {
    for (int i = 0; i < f.nx(); ++i) m = std::max(m, f(c, i, j));
  }
  return m;
}

}  // namespace

void write_solution_csv(std::ostream& os, const RunResult& result) {
  const CaseSpec& spec = result.spec;
  const auto names = component_names(spec.model);

  if (spec.dim == 1) {
    const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
    Field1D exact;
    const bool with_exact = spec.has_exact && !result.failed;
    if (with_exact) exact = exact_field_1d(spec, spec.t_final);

    os << "x";
    for (const auto& nm : names) os << "," << nm;
    if (with_exact) os << ",exact,error";
    os << "\n";
    for (int j = 0; j < grid.n; ++j) {
      os << format_number(grid.node(j));
      for (int c = 0; c < result.field.ncomp(); ++c) {
        os << "," << format_number(result.field(c, j));
      }
      if (with_exact) {
        os << "," << format_number(exact(0, j)) << ","
           << format_number(result.field(0, j) - exact(0, j));
      }
      os << "\n";
    }
    return;
  }

  const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                   spec.y_max, spec.ny_or_n(), spec.periodic);
  os << "x,y";
  for (const auto& nm : names) os << "," << nm;
  os << "\n";
  for (int j = 0; j < grid.y.n; ++j) {
    for (int i = 0; i < grid.x.n; ++i) {
      os << format_number(grid.x.node(i)) << "," << format_number(grid.y.node(j));
      for (int c = 0; c < result.field2.ncomp(); ++c) {
        os << "," << format_number(result.field2(c, i, j));
      }
      os << "\n";
    }
  }
}

void write_diagonal_csv(std::ostream& os, const RunResult& result) {
  const CaseSpec& spec = result.spec;
  if (spec.dim != 2) throw std::invalid_argument("diagonal slice is 2D only");
  const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                   spec.y_max, spec.ny_or_n(), spec.periodic);
  const int n = std::min(grid.x.n, grid.y.n);
  os << "s,value\n";
  for (int i = 0; i < n; ++i) {
    os << format_number(grid.x.node(i)) << ","
       << format_number(result.field2(0, i, i)) << "\n";
  }
}

void write_report_csv(std::ostream& os, const RunResult& result) {
  const CaseSpec& spec = result.spec;

  std::string linf;
  std::string l1;
  std::string l2;
  if (spec.has_exact && !result.failed) {
    NormReport norms;
    if (spec.dim == 1) {
      const Grid1D grid = make_grid_1d(spec.x_min, spec.x_max, spec.n, spec.periodic);
      norms = error_norms(result.field, exact_field_1d(spec, spec.t_final), grid, 0);
    } else {
      const Grid2D grid = make_grid_2d(spec.x_min, spec.x_max, spec.n, spec.y_min,
                                       spec.y_max, spec.ny_or_n(), spec.periodic);
      norms = error_norms(result.field2, exact_field_2d(spec, spec.t_final), grid, 0);
    }
    linf = format_number(norms.linf);
    l1 = format_number(norms.l1);
    l2 = format_number(norms.l2);
  }

  std::string tv0;
  std::string tv1;
  if (!result.tv_history.empty()) {
    tv0 = format_number(result.tv_history.front());
    tv1 = format_number(result.tv_history.back());
  }

  std::string overshoot;
  if (!result.failed) {
    if (spec.dim == 1) {
      overshoot = format_number(overshoot_metric(result.field, 0,
                                                 field_min(result.initial, 0),
                                                 field_max(result.initial, 0)));
    } else {
      overshoot = format_number(overshoot_metric(result.field2, 0,
                                                 field_min(result.initial2, 0),
                                                 field_max(result.initial2, 0)));
    }
  }

  std::string warning;
  if (result.failed) {
    warning = "failed: " + result.error;
  } else if (result.stats.nonconverged > 0) {
    warning = "nonconverged-stages";
  }

  const double mean_iters =
      result.stats.stages == 0
          ? 0.0
          : static_cast<double>(result.stats.total_iterations) / result.stats.stages;

  os << "case,integrator,limiter,reference,n,ny,cfl,t_final,steps,wall_seconds,"
        "stages,newton_converged,newton_nonconverged,newton_max_iterations,"
        "newton_mean_iterations,tvd_fallbacks,tv_initial,tv_final,"
        "overshoot_vs_initial_range,linf,l1,l2,warning\n";
  os << spec.name << "," << integrator_name(spec.integrator) << ","
     << limiter_name(spec.limiter) << "," << reference_name(spec.ref) << ","
     << spec.n << "," << (spec.dim == 2 ? spec.ny_or_n() : 0) << ","
     << format_number(spec.cfl) << "," << format_number(spec.t_final) << ","
     << result.steps << "," << format_number(result.elapsed_seconds) << ","
     << result.stats.stages << "," << result.stats.converged << ","
     << result.stats.nonconverged << "," << result.stats.max_iterations << ","
     << format_number(mean_iters) << "," << result.tvd_fallbacks << "," << tv0 << ","
     << tv1 << "," << overshoot << "," << linf << "," << l1 << "," << l2 << ","
     << warning << "\n";
}

EmitPaths emit_results(const RunResult& result, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const std::string base =
      result.spec.name + "_" + integrator_name(result.spec.integrator);

  EmitPaths paths;
  paths.solution = out_dir / (base + ".csv");
  paths.report = out_dir / (base + "_report.csv");

  auto open = [](const std::filesystem::path& p) {
    std::ofstream os(p);
    if (!os) throw std::runtime_error("cannot write " + p.string());
    return os;
  };

  if (!result.failed) {
    auto os = open(paths.solution);
    write_solution_csv(os, result);
    if (result.spec.dim == 2) {
      paths.diagonal = out_dir / (base + "_diagonal.csv");
      auto ds = open(paths.diagonal);
      write_diagonal_csv(ds, result);
    }
  }
  auto rs = open(paths.report);
  write_report_csv(rs, result);
  return paths;
}

}  // namespace ldirk
