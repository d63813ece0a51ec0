//! \file norms.hpp
//! \brief Error norms, observed orders and the overshoot diagnostic.

#ifndef LDIRK_NORMS_HPP_
#define LDIRK_NORMS_HPP_

#include <span>

#include "ldirk/grid.hpp"

namespace ldirk {

//! Measure-weighted norms: L1 = dx * sum|e|, L2 = sqrt(dx * sum e^2)
//! (dx*dy weighting in 2D).
struct NormReport {
  double linf = 0.0;
  double l1 = 0.0;
  double l2 = 0.0;
};

NormReport error_norms(const Field1D& numeric, const Field1D& exact,
                       const Grid1D& grid, int comp = 0);
NormReport error_norms(const Field2D& numeric, const Field2D& exact,
                       const Grid2D& grid, int comp = 0);

//! log(e_coarse/e_fine) / log(n_fine/n_coarse); NaN when either error is 0.
double observed_order(double e_coarse, double e_fine, int n_coarse, int n_fine);

//! max(0, max(u)-hi) + max(0, lo-min(u)).
double overshoot_metric(std::span<const double> u, double lo, double hi);
double overshoot_metric(const Field1D& u, int comp, double lo, double hi);
double overshoot_metric(const Field2D& u, int comp, double lo, double hi);

}  // namespace ldirk

#endif  // LDIRK_NORMS_HPP_
