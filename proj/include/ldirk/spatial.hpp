//! \file spatial.hpp
//! \brief Interface-flux kernels: Lax-Friedrichs splitting (scalar and
//!        characteristic-wise), central diffusion flux and divergence.

#ifndef LDIRK_SPATIAL_HPP_
#define LDIRK_SPATIAL_HPP_

#include <array>
#include <span>
#include <vector>

#include "ldirk/grid.hpp"
#include "ldirk/physics.hpp"
#include "ldirk/weno.hpp"

namespace ldirk {

enum class Recon { Weno5, Muscl };

//! Numerical fluxes at the n+1 half-index interfaces of a 1D grid.
//! Index i is the interface between nodes i-1 and i (i = 0..n).
struct FluxArray1D {
  int ncomp = 0;
  int n = 0;
  std::vector<double> data;

  FluxArray1D() = default;
  FluxArray1D(int ncomp_, int n_)
      : ncomp(ncomp_), n(n_),
        data(static_cast<std::size_t>(ncomp_) * (n_ + 1), 0.0) {}

  double& at(int c, int i) { return data[static_cast<std::size_t>(c) * (n + 1) + i]; }
  double at(int c, int i) const { return data[static_cast<std::size_t>(c) * (n + 1) + i]; }
};

//! x- and y-direction interface fluxes on a 2D grid.
//! fx index: c-major, then j*(nx+1)+i for the interface (i-1/2, j).
//! fy index: c-major, then j*nx+i for the interface (i, j-1/2).
struct FluxArray2D {
  int ncomp = 0;
  int nx = 0;
  int ny = 0;
  std::vector<double> fx;
  std::vector<double> fy;

  FluxArray2D() = default;
  FluxArray2D(int ncomp_, int nx_, int ny_)
      : ncomp(ncomp_), nx(nx_), ny(ny_),
        fx(static_cast<std::size_t>(ncomp_) * (nx_ + 1) * ny_, 0.0),
        fy(static_cast<std::size_t>(ncomp_) * nx_ * (ny_ + 1), 0.0) {}

  double& x(int c, int i, int j) {
    return fx[(static_cast<std::size_t>(c) * ny + j) * (nx + 1) + i];
  }
  double x(int c, int i, int j) const {
    return fx[(static_cast<std::size_t>(c) * ny + j) * (nx + 1) + i];
  }
  double& y(int c, int i, int j) {
    return fy[(static_cast<std::size_t>(c) * (ny + 1) + j) * nx + i];
  }
  double y(int c, int i, int j) const {
    return fy[(static_cast<std::size_t>(c) * (ny + 1) + j) * nx + i];
  }
};

//! Global Lax-Friedrichs splitting f_pm = (f(u) +- a*u)/2 of a padded nodal
//! array. Requires a >= max |f'(u)| over the array so that f_plus has
//! nonnegative and f_minus nonpositive derivative.
void lf_split_scalar(std::span<const double> u, const ScalarLaw& law,
                     bool use_yflux, double a, std::span<double> f_plus,
                     std::span<double> f_minus);

//! Upwind-biased reconstruction of a split-flux pair at the interface between
//! padded nodes i-1 and i (plus part left-biased, minus part right-biased).
double split_interface_value(std::span<const double> f_plus,
                             std::span<const double> f_minus, int i_pad,
                             Recon recon);

//! 6-node characteristic-wise Lax-Friedrichs flux for one interface: project
//! states and nodal fluxes to characteristic variables with Rinv, split each
//! family with its global wave speed, reconstruct the biased halves, sum and
//! project back with R. Nodes s = 0..5 hold the window i-3..i+2 around the
//! interface between nodes i-1 and i.
void char_lf_flux(const Eigensystem& es,
                  const std::array<std::array<double, 4>, 6>& U,
                  const std::array<std::array<double, 4>, 6>& F,
                  const std::array<double, 4>& lambda_max, Recon recon,
                  double* fhat);

//! Central second-order dissipation flux Q_{j+1/2} =
//! eps * nu((u_j+u_{j+1})/2) * (u_{j+1}-u_j)/dx for all n+1 interfaces of a
//! padded nodal array. The integrators consume f_hat - Q_hat.
std::vector<double> central_diffusion_flux(std::span<const double> u, int n,
                                           const DiffusionSpec& spec, double dx);

//! Conservative divergence L_j = -(fhat_{j+1/2} - fhat_{j-1/2})/dx.
void divergence(const FluxArray1D& flux, double dx, Field1D& L);

//! 2D divergence, x and y contributions summed.
void divergence(const FluxArray2D& flux, double dx, double dy, Field2D& L);

}  // namespace ldirk

#endif  // LDIRK_SPATIAL_HPP_
