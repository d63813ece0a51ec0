#include "ldirk/weno.hpp"

#include "ldirk/limiter.hpp"

namespace ldirk {

namespace {

inline double sq(double x) { return x * x; }

// Left-biased core: value at the interface between v[2] and v[3].
inline double weno5_left(const double* v, double* weights_out) {
  const double b0 = (13.0 / 12.0) * sq(v[0] - 2.0 * v[1] + v[2]) +
                    0.25 * sq(v[0] - 4.0 * v[1] + 3.0 * v[2]);
  const double b1 = (13.0 / 12.0) * sq(v[1] - 2.0 * v[2] + v[3]) +
                    0.25 * sq(v[1] - v[3]);
  const double b2 = (13.0 / 12.0) * sq(v[2] - 2.0 * v[3] + v[4]) +
                    0.25 * sq(3.0 * v[2] - 4.0 * v[3] + v[4]);

  const double a0 = 0.1 / sq(kWenoEps + b0);
  const double a1 = 0.6 / sq(kWenoEps + b1);
  const double a2 = 0.3 / sq(kWenoEps + b2);
  const double asum = a0 + a1 + a2;

  const double q0 = (2.0 * v[0] - 7.0 * v[1] + 11.0 * v[2]) / 6.0;
  const double q1 = (-v[1] + 5.0 * v[2] + 2.0 * v[3]) / 6.0;
  const double q2 = (2.0 * v[2] + 5.0 * v[3] - v[4]) / 6.0;

  if (weights_out != nullptr) {
    weights_out[0] = a0 / asum;
    weights_out[1] = a1 / asum;
    weights_out[2] = a2 / asum;
  }
  return (a0 * q0 + a1 * q1 + a2 * q2) / asum;
}

}  // namespace

double weno5_reconstruct(const std::array<double, 5>& v, Bias bias) {
  if (bias == Bias::Left) return weno5_left(v.data(), nullptr);
  const double r[5] = {v[4], v[3], v[2], v[1], v[0]};
  return weno5_left(r, nullptr);
}

std::array<double, 3> weno5_weights(const std::array<double, 5>& v) {
  std::array<double, 3> w{};
  weno5_left(v.data(), w.data());
  return w;
}

double muscl_reconstruct(const std::array<double, 3>& v, Bias bias) {
  const double slope = minmod(v[1] - v[0], v[2] - v[1]);
  return bias == Bias::Left ? v[1] + 0.5 * slope : v[1] - 0.5 * slope;
}

}  // namespace ldirk
