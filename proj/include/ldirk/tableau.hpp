//! \file tableau.hpp
//! \brief DIRK3 Butcher data and the theta-blended stage coefficients.

#ifndef LDIRK_TABLEAU_HPP_
#define LDIRK_TABLEAU_HPP_

#include <array>
#include <complex>

namespace ldirk {

//! Coefficients of the three-stage, third-order, strongly S-stable DIRK
//! scheme. alpha is the root of x^3 - 3x^2 + (3/2)x - 1/6 in (1/6, 1/2);
//! the other entries follow from it.
struct Dirk3Constants {
  double alpha;
  double tau2;  // (1 + alpha)/2
  double b1;    // -(6 alpha^2 - 16 alpha + 1)/4
  double b2;    // (6 alpha^2 - 20 alpha + 5)/4

  static const Dirk3Constants& get();
};

struct ButcherTableau {
  std::array<std::array<double, 3>, 3> a{};
  std::array<double, 3> b{};
  std::array<double, 3> c{};
};

//! Rows (alpha), (tau2-alpha, alpha), (b1, b2, alpha); weights (b1, b2, alpha).
ButcherTableau dirk3_tableau();

//! Stability function R(z) = 1 + z b^T (I - z A)^{-1} 1 of a DIRK tableau.
std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z);

struct Stage2Coeffs {
  double a21;
  double a22;
};

struct Stage3Coeffs {
  double a31;
  double a32;
  double a33;
};

// Per-interface blended coefficients. theta = 1 reproduces the DIRK3 rows,
// theta = 0 the successive implicit Euler tableau; a21+a22 = tau2 and
// a31+a32+a33 = 1 for every theta. Out-of-range theta is rejected with
// std::domain_error.
Stage2Coeffs limited_stage2(double theta1);
Stage3Coeffs limited_stage3(double theta2);

}  // namespace ldirk

#endif  // LDIRK_TABLEAU_HPP_
