#include "ldirk/newton.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>

namespace ldirk {

double norm2(const Vec& v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_finite(const Vec& v) {
  for (double x : v) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

// Residual norm for a damping trial; nonfinite values and invalid-state
// throws count as +inf so the line search backs off instead of aborting.
double trial_norm(const ResidualFn& residual, const Vec& v, Vec& r) {
  try {
    residual(v, r);
  } catch (const std::domain_error&) {
    return kInf;
  }
  if (!all_finite(r)) return kInf;
  return norm2(r);
}

void checked_residual(const ResidualFn& residual, const Vec& v, Vec& r) {
  try {
    residual(v, r);
  } catch (const std::domain_error& e) {
    throw SolverFailure(std::string("stage solve: invalid state in residual: ") + e.what());
  }
  if (!all_finite(r)) throw SolverFailure("stage solve: NaN/Inf in residual");
}

// Directional-difference increment for the FD Jacobian.
inline double fd_increment(double vj) {
  static const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
  return sqrt_eps * std::max(1.0, std::abs(vj));
}

// Node color classes such that no two perturbed nodes can touch a common
// residual row (cyclic distance > 2*radius when periodic).
std::vector<std::vector<int>> color_nodes(int n_nodes, int radius, bool periodic) {
  const int stride = 2 * radius + 1;
  std::vector<std::vector<int>> classes;
  const int tail = periodic ? n_nodes % stride : 0;
  const int main_count = n_nodes - tail;
  for (int k = 0; k < stride && k < main_count; ++k) {
    std::vector<int> cls;
    for (int j = k; j < main_count; j += stride) cls.push_back(j);
    classes.push_back(std::move(cls));
  }
  for (int j = main_count; j < n_nodes; ++j) classes.push_back({j});
  return classes;
}

Eigen::SparseMatrix<double> assemble_banded(const ResidualFn& residual, const Vec& v,
                                            const Vec& r0, const SolveSettings& s) {
  const int N = static_cast<int>(v.size());
  const int m = s.block_size;
  const int n_nodes = N / m;
  const int radius = s.stencil_radius;

  const auto classes = color_nodes(n_nodes, radius, s.periodic);

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(static_cast<std::size_t>(N) * m * (2 * radius + 1));

  Vec vp(v.size());
  Vec rp(v.size());
  std::vector<int> rows;
  for (const auto& cls : classes) {
    for (int c = 0; c < m; ++c) {
      vp = v;
      for (int j : cls) vp[j * m + c] += fd_increment(v[j * m + c]);
      checked_residual(residual, vp, rp);
      for (int j : cls) {
        const int col = j * m + c;
        const double h = fd_increment(v[col]);
        rows.clear();
        for (int dj = -radius; dj <= radius; ++dj) {
          int jj = j + dj;
          if (s.periodic) {
            jj = (jj % n_nodes + n_nodes) % n_nodes;
          } else if (jj < 0 || jj >= n_nodes) {
            continue;
          }
          if (std::find(rows.begin(), rows.end(), jj) == rows.end()) rows.push_back(jj);
        }
        for (int jj : rows) {
          for (int cc = 0; cc < m; ++cc) {
            const int row = jj * m + cc;
            const double val = (rp[row] - r0[row]) / h;
            if (val != 0.0) trips.emplace_back(row, col, val);
          }
        }
      }
    }
  }

  Eigen::SparseMatrix<double> J(N, N);
  J.setFromTriplets(trips.begin(), trips.end());
  return J;
}

}  // namespace

Vec linear_solve_gmres(const ApplyFn& apply, const Vec& rhs, double tol,
                       int restart, int max_iters, bool& ok) {
  const int N = static_cast<int>(rhs.size());
  Vec x(N, 0.0);
  Vec r = rhs;  // residual of x = 0
  double beta = norm2(r);
  const double target = tol * beta;
  ok = true;
  if (beta == 0.0) return x;

  std::vector<Vec> V;
  std::vector<Vec> H;  // H[k] holds column k (k+2 entries)
  Vec w(N);
  int total = 0;

  while (total < max_iters) {
    V.assign(1, r);
    for (double& e : V[0]) e /= beta;
    H.clear();
    Vec cs;
    Vec sn;
    Vec g(1, beta);

    int k = 0;
    bool brk = false;
    for (; k < restart && total < max_iters; ++k, ++total) {
      apply(V[k], w);
      Vec h(k + 2, 0.0);
      for (int i = 0; i <= k; ++i) {
        double dot = 0.0;
        for (int t = 0; t < N; ++t) dot += w[t] * V[i][t];
        h[i] = dot;
        for (int t = 0; t < N; ++t) w[t] -= dot * V[i][t];
      }
      h[k + 1] = norm2(w);
      if (h[k + 1] > 0.0) {
        Vec vk = w;
        for (double& e : vk) e /= h[k + 1];
        V.push_back(std::move(vk));
      } else {
        brk = true;  // exact solution in the current Krylov space
      }

      for (int i = 0; i < k; ++i) {
        const double t1 = cs[i] * h[i] + sn[i] * h[i + 1];
        const double t2 = -sn[i] * h[i] + cs[i] * h[i + 1];
        h[i] = t1;
        h[i + 1] = t2;
      }
      const double denom = std::hypot(h[k], h[k + 1]);
      const double c = denom > 0.0 ? h[k] / denom : 1.0;
      const double sgn = denom > 0.0 ? h[k + 1] / denom : 0.0;
      cs.push_back(c);
      sn.push_back(sgn);
      h[k] = denom;
      h[k + 1] = 0.0;
      H.push_back(std::move(h));

      g.push_back(-sgn * g[k]);
      g[k] = c * g[k];

      if (std::abs(g[k + 1]) <= target || brk) {
        ++k;
        brk = true;
        break;
      }
    }

    // Back-substitute y and update x.
    Vec y(k, 0.0);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= H[j][i] * y[j];
      y[i] = s / H[i][i];
    }
    for (int i = 0; i < k; ++i) {
      for (int t = 0; t < N; ++t) x[t] += y[i] * V[i][t];
    }

    apply(x, w);
    for (int t = 0; t < N; ++t) r[t] = rhs[t] - w[t];
    beta = norm2(r);
    if (beta <= target || brk) {
      ok = beta <= target || brk;
      return x;
    }
  }
  ok = false;
  return x;
}

Vec solve_stage(const ResidualFn& residual, Vec guess, const SolveSettings& settings,
                StageSolveReport& report, const RefreshFn& theta_refresh) {
  report = StageSolveReport{};
  Vec v = std::move(guess);
  const int N = static_cast<int>(v.size());

  Vec r(N);
  Vec rp(N);
  Vec dv(N);

  double r0 = 0.0;
  double rnorm = 0.0;
  double rprev = 0.0;
  Vec best_v = v;
  double best_norm = kInf;
  bool have_residual = false;

  int it = 0;
  while (true) {
    if (theta_refresh) {
      theta_refresh(v);
      ++report.theta_refreshes;
      have_residual = false;  // limiter state moved under the residual
    }
    if (!have_residual) {
      checked_residual(residual, v, r);
      rnorm = norm2(r);
    }
    have_residual = false;

    if (it == 0) {
      r0 = rnorm;
      report.initial_residual = r0;
    }
    if (rnorm < best_norm) {
      best_norm = rnorm;
      best_v = v;
    }

    if (r0 == 0.0 || rnorm <= settings.rtol * r0) {
      report.converged = true;
      break;
    }
    if (it >= settings.max_iters) break;

    // Newton direction with the limiter frozen.
    if (settings.strategy == JacStrategy::BandedFD) {
      const Eigen::SparseMatrix<double> J = assemble_banded(residual, v, r, settings);
      Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
      lu.compute(J);
      if (lu.info() == Eigen::Success) {
        Eigen::Map<const Eigen::VectorXd> rmap(r.data(), N);
        Eigen::VectorXd rhs = -rmap;
        Eigen::VectorXd sol = lu.solve(rhs);
        dv.assign(sol.data(), sol.data() + N);
      } else {
        // Factorization breakdown: fall back to a residual step and let the
        // damping loop sort out the scale.
        for (int t = 0; t < N; ++t) dv[t] = -r[t];
      }
    } else {
      // Directional finite-difference action of the frozen-limiter Jacobian.
      const double vscale = std::max(1.0, norm2(v) / std::sqrt(static_cast<double>(N)));
      auto apply = [&](const Vec& w, Vec& out) {
        const double wn = norm2(w);
        if (wn == 0.0) {
          out.assign(N, 0.0);
          return;
        }
        static const double sqrt_eps = std::sqrt(std::numeric_limits<double>::epsilon());
        const double h = sqrt_eps * vscale / wn * std::sqrt(static_cast<double>(N));
        Vec vp(N);
        for (int t = 0; t < N; ++t) vp[t] = v[t] + h * w[t];
        checked_residual(residual, vp, out);
        for (int t = 0; t < N; ++t) out[t] = (out[t] - r[t]) / h;
      };
      // Inexact Newton forcing clamped to [lin_tol_min, lin_tol_max].
      double eta = settings.lin_tol_max;
      if (it > 0 && rprev > 0.0) {
        eta = std::clamp((rnorm / rprev) * (rnorm / rprev), settings.lin_tol_min,
                         settings.lin_tol_max);
      }
      Vec rhs(N);
      for (int t = 0; t < N; ++t) rhs[t] = -r[t];
      bool ok = false;
      dv = linear_solve_gmres(apply, rhs, eta, settings.gmres_restart,
                              settings.gmres_max_iters, ok);
    }

    if (!all_finite(dv)) {
      for (int t = 0; t < N; ++t) dv[t] = -r[t];
    }

    // Damped update: halve on residual increase, then accept. A trial whose
    // residual is nonfinite is never adopted; if every trial fails the
    // iterate stays put and the cap ends the solve.
    rprev = rnorm;
    double scale = 1.0;
    Vec trial(N);
    for (int d = 0; d <= settings.max_damping; ++d) {
      for (int t = 0; t < N; ++t) trial[t] = v[t] + scale * dv[t];
      const double rt = trial_norm(residual, trial, rp);
      if (std::isfinite(rt) && (rt < rnorm || d == settings.max_damping)) {
        v = trial;
        rnorm = rt;
        std::swap(r, rp);
        have_residual = true;
        break;
      }
      scale *= 0.5;
    }
    ++it;
  }

  report.iterations = it;
  report.final_residual = rnorm;
  if (!report.converged) {
    report.final_residual = best_norm;
    return best_v;
  }
  return v;
}

}  // namespace ldirk
