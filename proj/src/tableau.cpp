#include "ldirk/tableau.hpp"

#include <stdexcept>

namespace ldirk {

namespace {

Dirk3Constants compute_constants() {
  // Polish the printed value 0.435866521508459 to the double-precision root.
  double a = 0.435866521508459;
  for (int it = 0; it < 3; ++it) {
    const double p = ((a - 3.0) * a + 1.5) * a - 1.0 / 6.0;
    const double dp = (3.0 * a - 6.0) * a + 1.5;
    a -= p / dp;
  }
  Dirk3Constants c;
  c.alpha = a;
  c.tau2 = 0.5 * (1.0 + a);
  c.b1 = -(6.0 * a * a - 16.0 * a + 1.0) / 4.0;
  c.b2 = (6.0 * a * a - 20.0 * a + 5.0) / 4.0;
  return c;
}

}  // namespace

const Dirk3Constants& Dirk3Constants::get() {
  static const Dirk3Constants c = compute_constants();
  return c;
}

ButcherTableau dirk3_tableau() {
  const Dirk3Constants& k = Dirk3Constants::get();
  ButcherTableau t;
  t.a = {{{k.alpha, 0.0, 0.0},
          {k.tau2 - k.alpha, k.alpha, 0.0},
          {k.b1, k.b2, k.alpha}}};
  t.b = {k.b1, k.b2, k.alpha};
  t.c = {k.alpha, k.tau2, 1.0};
  return t;
}

std::complex<double> stability_function(const ButcherTableau& t, std::complex<double> z) {
  // Forward-substitute the lower-triangular stage system k_i = z(1 + sum a_ij k_j).
  std::array<std::complex<double>, 3> k{};
  for (int i = 0; i < 3; ++i) {
    std::complex<double> s = 1.0;
    for (int j = 0; j < i; ++j) s += t.a[i][j] * k[j];
    k[i] = z * s / (1.0 - z * t.a[i][i]);
  }
  std::complex<double> r = 1.0;
  for (int i = 0; i < 3; ++i) r += t.b[i] * k[i];
  return r;
}

namespace {
void check_theta(double theta) {
  if (!(theta >= 0.0 && theta <= 1.0)) {
    throw std::domain_error("limited coefficients: theta outside [0,1]");
  }
}
}  // namespace

Stage2Coeffs limited_stage2(double theta1) {
  check_theta(theta1);
  const Dirk3Constants& k = Dirk3Constants::get();
  return {k.alpha + theta1 * (k.tau2 - 2.0 * k.alpha),
          0.5 * (1.0 - k.alpha) + theta1 * 0.5 * (3.0 * k.alpha - 1.0)};
}

Stage3Coeffs limited_stage3(double theta2) {
  check_theta(theta2);
  const Dirk3Constants& k = Dirk3Constants::get();
  return {k.alpha + theta2 * (k.b1 - k.alpha),
          0.5 * (1.0 - k.alpha) + theta2 * (k.b2 - 0.5 * (1.0 - k.alpha)),
          0.5 * (1.0 - k.alpha) + theta2 * 0.5 * (3.0 * k.alpha - 1.0)};
}

}  // namespace ldirk
