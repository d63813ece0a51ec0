//! \file weno.hpp
//! \brief WENO5-JS and MUSCL-minmod pointwise reconstructions.

#ifndef LDIRK_WENO_HPP_
#define LDIRK_WENO_HPP_

#include <array>

namespace ldirk {

enum class Bias { Left, Right };

// Classical Jiang-Shu parameters.
inline constexpr double kWenoEps = 1e-6;

//! Fifth-order WENO-JS reconstruction from five consecutive nodal values
//! v[0..4]. Bias::Left returns the value at the interface between v[2] and
//! v[3] (upwind stencil centered on v[2]); Bias::Right returns the value at
//! the interface between v[1] and v[2] (mirrored stencil centered on v[2]).
double weno5_reconstruct(const std::array<double, 5>& v, Bias bias);

//! Nonlinear weights for the left-biased stencil, ordered so that ideal
//! weights are (0.1, 0.6, 0.3). Exposed for the weight-property tests.
std::array<double, 3> weno5_weights(const std::array<double, 5>& v);

//! Piecewise-linear MUSCL value with minmod slope. Bias::Left returns
//! v[1] + minmod(v[1]-v[0], v[2]-v[1])/2 (the value at the interface right of
//! v[1]); Bias::Right returns v[1] - minmod(...)/2.
double muscl_reconstruct(const std::array<double, 3>& v, Bias bias);

}  // namespace ldirk

#endif  // LDIRK_WENO_HPP_
