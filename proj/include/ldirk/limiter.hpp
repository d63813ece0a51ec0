//! \file limiter.hpp
//! \brief minmod algebra, the stage-ratio time-limiter (1D/2D), the legacy
//!        derivative-based limiter, total variation and the global TVD sensor.

#ifndef LDIRK_LIMITER_HPP_
#define LDIRK_LIMITER_HPP_

#include <initializer_list>
#include <span>
#include <vector>

#include "ldirk/grid.hpp"

namespace ldirk {

//! Reference quantity used to build limiters and sensors for systems.
struct ReferenceVariable {
  enum class Kind { Conservative, Density, Pressure };
  Kind kind = Kind::Conservative;
  int component = 0;

  static ReferenceVariable conservative(int c) { return {Kind::Conservative, c}; }
  static ReferenceVariable density() { return {Kind::Density, 0}; }
  static ReferenceVariable pressure() { return {Kind::Pressure, 0}; }
};

// Sign-consistent minimum-magnitude selector; 0 on sign disagreement.
// The list form throws std::invalid_argument on an empty argument list.
double minmod(std::span<const double> args);
double minmod(std::initializer_list<double> args);
double minmod(double a, double b);

//! Stage-ratio time-limiter: theta_j = minmod(r_j, 1) with
//! r_j = (w_cur[j+1]-w_cur[j-1]) / (w_prev[j+1]-w_prev[j-1]).
//!
//! Degenerate denominators (|den| below 1e-12 * max(1, field scale)) give
//! theta = 1 when the numerator is equally flat and theta = 0 otherwise.
//! Inputs are ghost-filled padded arrays of the reference variable; the
//! returned padded theta array has its ghosts filled with the solution's
//! boundary policy so interface averaging is defined at domain edges.
std::vector<double> stage_ratio_theta(std::span<const double> w_prev,
                                      std::span<const double> w_cur, int n,
                                      const Boundary& bc);

//! Interface values theta_{j+1/2} = (theta_j + theta_{j+1})/2. Index i of the
//! result is the interface between nodes i-1 and i, i = 0..n.
std::vector<double> theta_interface(std::span<const double> theta_padded, int n);

//! 2D limiter: minmod over the horizontal, vertical and two diagonal stage
//! ratios and 1. Inputs and output are single-component ghost-filled fields.
Field2D stage_ratio_theta_2d(const Field2D& w_prev, const Field2D& w_cur,
                             const Boundary& bc_x, const Boundary& bc_y);

// Per-axis interface averages of a nodal 2D theta field.
// x result: (nx+1)*ny values, index j*(nx+1)+i for the interface (i-1/2, j).
// y result: nx*(ny+1) values, index j*nx+i for the interface (i, j-1/2).
std::vector<double> theta_interface_x(const Field2D& theta);
std::vector<double> theta_interface_y(const Field2D& theta);

//! Legacy derivative-based limiter:
//!   theta_j = minmod(2 s_j/(L_prev_j + eps), 2 s_j/(L_cur_j + eps), 1)
//! with s_j = (u_cur_j - u_prev_j)/dt, clamped to [0,1]. Inputs are
//! interior-length arrays; the result is interior-length as well.
std::vector<double> legacy_theta(std::span<const double> u_prev,
                                 std::span<const double> u_cur,
                                 std::span<const double> L_prev,
                                 std::span<const double> L_cur, double dt,
                                 double eps = 1e-10);

//! Total variation of an interior array; periodic adds the wraparound term.
double total_variation(std::span<const double> u, bool periodic);

//! Global TVD sensor: reject (return false) iff tv_tentative >= tv_old.
bool sensor_accepts(double tv_old, double tv_tentative);

}  // namespace ldirk

#endif  // LDIRK_LIMITER_HPP_
