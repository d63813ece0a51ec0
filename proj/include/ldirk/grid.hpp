//! \file grid.hpp
//! \brief Uniform 1D/2D grids, ghost-padded fields and boundary conditions.

#ifndef LDIRK_GRID_HPP_
#define LDIRK_GRID_HPP_

#include <cstdint>
#include <span>
#include <vector>

namespace ldirk {

// Ghost width; fixed at the WENO5 stencil radius for every operator.
inline constexpr int kGhost = 3;

struct Grid1D {
  double x_min = 0.0;
  double x_max = 1.0;
  int n = 0;             // mesh points (periodic: cells, no duplicated endpoint)
  bool periodic = false;
  double dx = 0.0;

  double node(int j) const { return x_min + j * dx; }
  double length() const { return x_max - x_min; }
};

// Periodic grids use n cells with dx = L/n; non-periodic grids use n nodes
// with dx = L/(n-1). Throws std::invalid_argument on a degenerate domain or
// n < 5 (WENO stencil width).
Grid1D make_grid_1d(double x_min, double x_max, int n, bool periodic);

struct Grid2D {
  Grid1D x;
  Grid1D y;
};

Grid2D make_grid_2d(double x_min, double x_max, int nx, double y_min,
                    double y_max, int ny, bool periodic);

enum class BCKind : std::uint8_t { Periodic, Extrapolate, FixedState };

struct Boundary {
  BCKind kind = BCKind::Periodic;
  std::vector<double> left;   // FixedState only, one value per component
  std::vector<double> right;

  static Boundary periodic() { return {BCKind::Periodic, {}, {}}; }
  static Boundary extrapolate() { return {BCKind::Extrapolate, {}, {}}; }
  static Boundary fixed_state(std::vector<double> l, std::vector<double> r) {
    return {BCKind::FixedState, std::move(l), std::move(r)};
  }
};

//! Ghost-padded nodal values, one padded row per component.
class Field1D {
 public:
  Field1D() = default;
  Field1D(int ncomp, int n)
      : ncomp_(ncomp), n_(n), stride_(n + 2 * kGhost),
        data_(static_cast<std::size_t>(ncomp) * stride_, 0.0) {}

  // j ranges over [-kGhost, n + kGhost)
  double& operator()(int c, int j) { return data_[c * stride_ + j + kGhost]; }
  double operator()(int c, int j) const { return data_[c * stride_ + j + kGhost]; }

  int ncomp() const { return ncomp_; }
  int n() const { return n_; }

  // Full padded row of one component; index 0 is node -kGhost.
  std::span<double> padded(int c) {
    return {data_.data() + static_cast<std::size_t>(c) * stride_,
            static_cast<std::size_t>(stride_)};
  }
  std::span<const double> padded(int c) const {
    return {data_.data() + static_cast<std::size_t>(c) * stride_,
            static_cast<std::size_t>(stride_)};
  }

  bool interior_finite() const;

 private:
  int ncomp_ = 0;
  int n_ = 0;
  int stride_ = 0;
  std::vector<double> data_;
};

//! 2D analogue; x runs fastest within each component plane.
class Field2D {
 public:
  Field2D() = default;
  Field2D(int ncomp, int nx, int ny)
      : ncomp_(ncomp), nx_(nx), ny_(ny), srow_(nx + 2 * kGhost),
        plane_(static_cast<std::size_t>(srow_) * (ny + 2 * kGhost)),
        data_(static_cast<std::size_t>(ncomp) * plane_, 0.0) {}

  double& operator()(int c, int i, int j) {
    return data_[c * plane_ + static_cast<std::size_t>(j + kGhost) * srow_ + i + kGhost];
  }
  double operator()(int c, int i, int j) const {
    return data_[c * plane_ + static_cast<std::size_t>(j + kGhost) * srow_ + i + kGhost];
  }

  int ncomp() const { return ncomp_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

  bool interior_finite() const;

 private:
  int ncomp_ = 0;
  int nx_ = 0;
  int ny_ = 0;
  int srow_ = 0;
  std::size_t plane_ = 0;
  std::vector<double> data_;
};

// Populate ghost cells from the interior; interior values are untouched and
// repeated application is idempotent.
void fill_ghosts(Field1D& f, const Boundary& bc);
void fill_ghosts(Field2D& f, const Boundary& bc_x, const Boundary& bc_y);

// Ghost filling for padded scalar node arrays (limiter fields, reference
// variables). FixedState degrades to zero-order extrapolation since a
// boundary value for the derived quantity is not defined.
void fill_ghosts_scalar(std::span<double> padded, int n, const Boundary& bc);

}  // namespace ldirk

#endif  // LDIRK_GRID_HPP_
