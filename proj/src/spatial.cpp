#include "ldirk/spatial.hpp"

namespace ldirk {

void lf_split_scalar(std::span<const double> u, const ScalarLaw& law,
                     bool use_yflux, double a, std::span<double> f_plus,
                     std::span<double> f_minus) {
  const auto& f = use_yflux ? law.yflux : law.flux;
  for (std::size_t k = 0; k < u.size(); ++k) {
    const double fu = f ? f(u[k]) : 0.0;
    f_plus[k] = 0.5 * (fu + a * u[k]);
    f_minus[k] = 0.5 * (fu - a * u[k]);
  }
}

double split_interface_value(std::span<const double> f_plus,
                             std::span<const double> f_minus, int i_pad,
                             Recon recon) {
  if (recon == Recon::Weno5) {
    const std::array<double, 5> wp = {f_plus[i_pad - 3], f_plus[i_pad - 2],
                                      f_plus[i_pad - 1], f_plus[i_pad],
                                      f_plus[i_pad + 1]};
    const std::array<double, 5> wm = {f_minus[i_pad - 2], f_minus[i_pad - 1],
                                      f_minus[i_pad], f_minus[i_pad + 1],
                                      f_minus[i_pad + 2]};
    return weno5_reconstruct(wp, Bias::Left) + weno5_reconstruct(wm, Bias::Right);
  }
  const std::array<double, 3> mp = {f_plus[i_pad - 2], f_plus[i_pad - 1], f_plus[i_pad]};
  const std::array<double, 3> mm = {f_minus[i_pad - 1], f_minus[i_pad], f_minus[i_pad + 1]};
  return muscl_reconstruct(mp, Bias::Left) + muscl_reconstruct(mm, Bias::Right);
}

void char_lf_flux(const Eigensystem& es,
                  const std::array<std::array<double, 4>, 6>& U,
                  const std::array<std::array<double, 4>, 6>& F,
                  const std::array<double, 4>& lambda_max, Recon recon,
                  double* fhat) {
  const int m = es.m;
  for (int c = 0; c < m; ++c) fhat[c] = 0.0;

  for (int k = 0; k < m; ++k) {
    double v[6];
    double g[6];
    for (int s = 0; s < 6; ++s) {
      double vs = 0.0;
      double gs = 0.0;
      for (int c = 0; c < m; ++c) {
        vs += es.Rinv[k][c] * U[s][c];
        gs += es.Rinv[k][c] * F[s][c];
      }
      v[s] = vs;
      g[s] = gs;
    }

    const double lam = lambda_max[k];
    double ghat;
    if (recon == Recon::Weno5) {
      const std::array<double, 5> gp = {0.5 * (g[0] + lam * v[0]), 0.5 * (g[1] + lam * v[1]),
                                        0.5 * (g[2] + lam * v[2]), 0.5 * (g[3] + lam * v[3]),
                                        0.5 * (g[4] + lam * v[4])};
      const std::array<double, 5> gm = {0.5 * (g[1] - lam * v[1]), 0.5 * (g[2] - lam * v[2]),
                                        0.5 * (g[3] - lam * v[3]), 0.5 * (g[4] - lam * v[4]),
                                        0.5 * (g[5] - lam * v[5])};
      ghat = weno5_reconstruct(gp, Bias::Left) + weno5_reconstruct(gm, Bias::Right);
    } else {
      const std::array<double, 3> gp = {0.5 * (g[1] + lam * v[1]), 0.5 * (g[2] + lam * v[2]),
                                        0.5 * (g[3] + lam * v[3])};
      const std::array<double, 3> gm = {0.5 * (g[2] - lam * v[2]), 0.5 * (g[3] - lam * v[3]),
                                        0.5 * (g[4] - lam * v[4])};
      ghat = muscl_reconstruct(gp, Bias::Left) + muscl_reconstruct(gm, Bias::Right);
    }

    for (int c = 0; c < m; ++c) fhat[c] += es.R[c][k] * ghat;
  }
}

std::vector<double> central_diffusion_flux(std::span<const double> u, int n,
                                           const DiffusionSpec& spec, double dx) {
  std::vector<double> q(n + 1);
  for (int i = 0; i <= n; ++i) {
    const double ul = u[i - 1 + kGhost];
    const double ur = u[i + kGhost];
    q[i] = spec.eps * spec.nu(0.5 * (ul + ur)) * (ur - ul) / dx;
  }
  return q;
}

void divergence(const FluxArray1D& flux, double dx, Field1D& L) {
  for (int c = 0; c < flux.ncomp; ++c) {
    for (int j = 0; j < flux.n; ++j) {
      L(c, j) = -(flux.at(c, j + 1) - flux.at(c, j)) / dx;
    }
  }
}

void divergence(const FluxArray2D& flux, double dx, double dy, Field2D& L) {
  for (int c = 0; c < flux.ncomp; ++c) {
    for (int j = 0; j < flux.ny; ++j) {
      for (int i = 0; i < flux.nx; ++i) {
        L(c, i, j) = -(flux.x(c, i + 1, j) - flux.x(c, i, j)) / dx -
                     (flux.y(c, i, j + 1) - flux.y(c, i, j)) / dy;
      }
    }
  }
}

}  // namespace ldirk
