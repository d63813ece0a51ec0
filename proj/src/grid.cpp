#include "ldirk/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace ldirk {

Grid1D make_grid_1d(double x_min, double x_max, int n, bool periodic) {
  if (!(x_max > x_min)) {
    throw std::invalid_argument("make_grid_1d: degenerate domain (x_max <= x_min)");
  }
  if (n < 5) {
    throw std::invalid_argument("make_grid_1d: n < 5 cannot carry a WENO5 stencil");
  }
  Grid1D g;
  g.x_min = x_min;
  g.x_max = x_max;
  g.n = n;
  g.periodic = periodic;
  g.dx = periodic ? (x_max - x_min) / n : (x_max - x_min) / (n - 1);
  return g;
}

Grid2D make_grid_2d(double x_min, double x_max, int nx, double y_min,
                    double y_max, int ny, bool periodic) {
  return {make_grid_1d(x_min, x_max, nx, periodic),
          make_grid_1d(y_min, y_max, ny, periodic)};
}

bool Field1D::interior_finite() const {
  for (int c = 0; c < ncomp_; ++c) {
    for (int j = 0; j < n_; ++j) {
      if (!std::isfinite((*this)(c, j))) return false;
    }
  }
  return true;
}

bool Field2D::interior_finite() const {
  for (int c = 0; c < ncomp_; ++c) {
    for (int j = 0; j < ny_; ++j) {
      for (int i = 0; i < nx_; ++i) {
        if (!std::isfinite((*this)(c, i, j))) return false;
      }
    }
  }
  return true;
}

namespace {

void check_fixed(const Boundary& bc, int ncomp) {
  if (bc.kind == BCKind::FixedState &&
      (static_cast<int>(bc.left.size()) != ncomp ||
       static_cast<int>(bc.right.size()) != ncomp)) {
    throw std::invalid_argument("fill_ghosts: FixedState values do not match component count");
  }
}

// One padded row: values[kGhost .. kGhost+n) is the interior.
void fill_row(double* values, int n, const Boundary& bc, int comp) {
  switch (bc.kind) {
    case BCKind::Periodic:
      for (int k = 0; k < kGhost; ++k) {
        values[k] = values[n + k];                       // left ghosts <- right interior
        values[kGhost + n + k] = values[kGhost + k];     // right ghosts <- left interior
      }
      break;
    case BCKind::Extrapolate:
      for (int k = 0; k < kGhost; ++k) {
        values[k] = values[kGhost];
        values[kGhost + n + k] = values[kGhost + n - 1];
      }
      break;
    case BCKind::FixedState:
      for (int k = 0; k < kGhost; ++k) {
        values[k] = bc.left[comp];
        values[kGhost + n + k] = bc.right[comp];
      }
      break;
  }
}

}  // namespace

void fill_ghosts(Field1D& f, const Boundary& bc) {
  check_fixed(bc, f.ncomp());
  for (int c = 0; c < f.ncomp(); ++c) {
    fill_row(f.padded(c).data(), f.n(), bc, c);
  }
}

void fill_ghosts(Field2D& f, const Boundary& bc_x, const Boundary& bc_y) {
  check_fixed(bc_x, f.ncomp());
  check_fixed(bc_y, f.ncomp());
  const int nx = f.nx();
  const int ny = f.ny();
  std::vector<double> row(nx + 2 * kGhost);
  std::vector<double> col(ny + 2 * kGhost);
  for (int c = 0; c < f.ncomp(); ++c) {
    // x-direction ghosts for interior rows
    for (int j = 0; j < ny; ++j) {
      for (int i = -kGhost; i < nx + kGhost; ++i) row[i + kGhost] = f(c, i, j);
      fill_row(row.data(), nx, bc_x, c);
      for (int i = -kGhost; i < nx + kGhost; ++i) f(c, i, j) = row[i + kGhost];
    }
    // y-direction ghosts for every column, corners included
    for (int i = -kGhost; i < nx + kGhost; ++i) {
      for (int j = -kGhost; j < ny + kGhost; ++j) col[j + kGhost] = f(c, i, j);
      fill_row(col.data(), ny, bc_y, c);
      for (int j = -kGhost; j < ny + kGhost; ++j) f(c, i, j) = col[j + kGhost];
    }
  }
}

void fill_ghosts_scalar(std::span<double> padded, int n, const Boundary& bc) {
  Boundary eff = bc;
  if (eff.kind == BCKind::FixedState) eff = Boundary::extrapolate();
  fill_row(padded.data(), n, eff, 0);
}

}  // namespace ldirk
