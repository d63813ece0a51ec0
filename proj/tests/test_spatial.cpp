#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "ldirk/ops.hpp"
#include "ldirk/spatial.hpp"
#include "ldirk/weno.hpp"

using namespace ldirk;

namespace {

constexpr double kPi = std::numbers::pi;

double uniform(std::mt19937& gen, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(gen()) / std::mt19937::max());
}

// Max reconstruction error of sin(x) interface values on an n-cell grid.
double weno_sine_error(int n) {
  const double dx = 2.0 * kPi / n;
  double err = 0.0;
  for (int j = 2; j < n - 2; ++j) {
    std::array<double, 5> v{};
    for (int s = 0; s < 5; ++s) v[s] = std::sin((j - 2 + s) * dx);
    const double exact = std::sin((j + 0.5) * dx);
    err = std::max(err, std::abs(weno5_reconstruct(v, Bias::Left) - exact));
  }
  return err;
}

}  // namespace

TEST_CASE("weno5: consistency and exactness on linear data") {
  const std::array<double, 5> c = {4.2, 4.2, 4.2, 4.2, 4.2};
  CHECK(weno5_reconstruct(c, Bias::Left) == doctest::Approx(4.2).epsilon(1e-15));
  CHECK(weno5_reconstruct(c, Bias::Right) == doctest::Approx(4.2).epsilon(1e-15));

  // u_j = a + b*j reproduces the interface value exactly for both biases.
  const double a = 0.7;
  const double b = -1.3;
  std::array<double, 5> lin{};
  for (int s = 0; s < 5; ++s) lin[s] = a + b * s;
  CHECK(weno5_reconstruct(lin, Bias::Left) == doctest::Approx(a + b * 2.5).epsilon(1e-13));
  CHECK(weno5_reconstruct(lin, Bias::Right) == doctest::Approx(a + b * 1.5).epsilon(1e-13));
}

TEST_CASE("weno5 weights: nonnegative, normalized, ideal on smooth data") {
  std::array<double, 5> lin{};
  for (int s = 0; s < 5; ++s) lin[s] = 1.0 + 0.5 * s;
  const auto w = weno5_weights(lin);
  CHECK(w[0] == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(0.3).epsilon(1e-12));

  std::mt19937 gen(3);
  for (int trial = 0; trial < 200; ++trial) {
    std::array<double, 5> v{};
    for (auto& x : v) x = uniform(gen, -5.0, 5.0);
    const auto ww = weno5_weights(v);
    CHECK(ww[0] + ww[1] + ww[2] == doctest::Approx(1.0).epsilon(1e-14));
    for (double x : ww) CHECK(x >= 0.0);
  }
}

TEST_CASE("weno5 order of accuracy on smooth samples") {
  const double e1 = weno_sine_error(40);
  const double e2 = weno_sine_error(80);
  const double order = std::log2(e1 / e2);
  CHECK(order >= 4.5);
}

TEST_CASE("weno5 mirror symmetry") {
  std::mt19937 gen(17);
  for (int trial = 0; trial < 100; ++trial) {
    std::array<double, 5> v{};
    for (auto& x : v) x = uniform(gen, -2.0, 2.0);
    std::array<double, 5> r{};
    for (int s = 0; s < 5; ++s) r[s] = v[4 - s];
    CHECK(weno5_reconstruct(v, Bias::Left) ==
          doctest::Approx(weno5_reconstruct(r, Bias::Right)).epsilon(1e-14));
  }
}

TEST_CASE("muscl reconstruction") {
  CHECK(muscl_reconstruct({2.0, 2.0, 2.0}, Bias::Left) == doctest::Approx(2.0));
  CHECK(muscl_reconstruct({0.0, 1.0, 2.0}, Bias::Left) == doctest::Approx(1.5));
  // Local extremum: minmod kills the slope.
  CHECK(muscl_reconstruct({0.0, 1.0, 0.0}, Bias::Left) == doctest::Approx(1.0));
  CHECK(muscl_reconstruct({0.0, 1.0, 2.0}, Bias::Right) == doctest::Approx(0.5));
}

TEST_CASE("scalar Lax-Friedrichs splitting") {
  std::vector<double> u = {0.0, 1.0, -2.0, 0.5};
  std::vector<double> fp(u.size());
  std::vector<double> fm(u.size());

  lf_split_scalar(u, linear_advection(), false, 1.0, fp, fm);
  for (std::size_t k = 0; k < u.size(); ++k) {
    CHECK(fp[k] == doctest::Approx(u[k]));
    CHECK(fm[k] == doctest::Approx(0.0));
  }

  const ScalarLaw b = burgers();
  lf_split_scalar(u, b, false, 2.0, fp, fm);
  CHECK(fp[0] == doctest::Approx(0.0));
  CHECK(fm[0] == doctest::Approx(0.0));
  CHECK(fp[1] == doctest::Approx(1.25));
  CHECK(fm[1] == doctest::Approx(-0.75));
  // F+ + F- recovers the physical flux.
  for (std::size_t k = 0; k < u.size(); ++k) {
    CHECK(fp[k] + fm[k] == doctest::Approx(b.flux(u[k])).epsilon(1e-13));
  }
}

TEST_CASE("characteristic kernel reduces to the scalar path for identity eigenvectors") {
  // Three decoupled components with their own wave speeds: the characteristic
  // path must reproduce lf_split_scalar + weno5_reconstruct componentwise.
  Eigensystem es;
  es.m = 3;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      es.R[i][j] = i == j ? 1.0 : 0.0;
      es.Rinv[i][j] = i == j ? 1.0 : 0.0;
    }
  }
  const std::array<double, 4> lam = {1.0, 2.0, 0.5, 0.0};

  std::mt19937 gen(29);
  const ScalarLaw laws[3] = {linear_advection(), burgers(), buckley_leverett()};
  for (int trial = 0; trial < 50; ++trial) {
    std::array<std::array<double, 4>, 6> U{};
    std::array<std::array<double, 4>, 6> F{};
    for (int s = 0; s < 6; ++s) {
      for (int c = 0; c < 3; ++c) {
        U[s][c] = uniform(gen, -0.9, 0.9);
        F[s][c] = laws[c].flux(U[s][c]);
      }
    }
    double fhat[4];
    char_lf_flux(es, U, F, lam, Recon::Weno5, fhat);

    for (int c = 0; c < 3; ++c) {
      std::vector<double> uu(6);
      std::vector<double> fp(6);
      std::vector<double> fm(6);
      for (int s = 0; s < 6; ++s) uu[s] = U[s][c];
      lf_split_scalar(uu, laws[c], false, lam[c], fp, fm);
      const double expected = split_interface_value(fp, fm, 3, Recon::Weno5);
      CHECK(fhat[c] == doctest::Approx(expected).epsilon(1e-13));
    }
  }
}

TEST_CASE("Euler interface fluxes are consistent and robust") {
  const EulerModel m;
  const Grid1D grid = make_grid_1d(0.0, 1.0, 32, true);
  EulerOp1D op(grid, Boundary::periodic(), m, Recon::Weno5);

  // Uniform state: every interface flux equals the physical flux.
  Field1D u(3, grid.n);
  const double W[3] = {1.3, 0.4, 2.0};
  double U[3];
  primitive_to_conservative_1d(m, W, U);
  for (int j = 0; j < grid.n; ++j) {
    for (int c = 0; c < 3; ++c) u(c, j) = U[c];
  }
  op.fill(u);
  FluxArray1D flux(3, grid.n);
  op.interface_flux(u, flux);
  double F[3];
  euler_flux_1d(m, U, F);
  for (int i = 0; i <= grid.n; ++i) {
    for (int c = 0; c < 3; ++c) {
      CHECK(flux.at(c, i) == doctest::Approx(F[c]).epsilon(1e-12));
    }
  }

  // Sod jump: fluxes stay finite.
  const Grid1D sgrid = make_grid_1d(0.0, 1.0, 64, false);
  EulerOp1D sop(sgrid, Boundary::extrapolate(), m, Recon::Weno5);
  Field1D us(3, sgrid.n);
  for (int j = 0; j < sgrid.n; ++j) {
    const double Wj[3] = {sgrid.node(j) < 0.5 ? 1.0 : 0.125, 0.0,
                          sgrid.node(j) < 0.5 ? 1.0 : 0.1};
    double Uj[3];
    primitive_to_conservative_1d(m, Wj, Uj);
    for (int c = 0; c < 3; ++c) us(c, j) = Uj[c];
  }
  sop.fill(us);
  FluxArray1D sflux(3, sgrid.n);
  sop.interface_flux(us, sflux);
  for (double v : sflux.data) CHECK(std::isfinite(v));
}

TEST_CASE("central diffusion flux") {
  const int n = 10;
  std::vector<double> u(n + 2 * kGhost, 3.0);
  // nu ~ 1 everywhere: threshold far below any |u|.
  const DiffusionSpec unit{1.0, -1e3, 0.05};
  auto q = central_diffusion_flux(u, n, unit, 0.1);
  for (double v : q) CHECK(v == doctest::Approx(0.0));

  // Linear field u = x: flux equals eps * nu * 1 at every interface.
  const double dx = 0.25;
  for (int k = 0; k < n + 2 * kGhost; ++k) u[k] = (k - kGhost) * dx;
  q = central_diffusion_flux(u, n, unit, dx);
  for (double v : q) CHECK(v == doctest::Approx(1.0).epsilon(1e-14));

  // Jump 0 -> 1 with the viscous-Burgers style coefficient: nu(0.5) = 1/2.
  std::vector<double> step(n + 2 * kGhost, 0.0);
  for (int k = kGhost + 1; k < n + 2 * kGhost; ++k) step[k] = 1.0;
  const DiffusionSpec spec{0.1, 0.5, 0.05};
  q = central_diffusion_flux(step, n, spec, 0.01);
  CHECK(q[1] == doctest::Approx(5.0).epsilon(1e-13));
}

TEST_CASE("divergence: telescoping and hand arithmetic") {
  FluxArray1D flux(1, 2);
  flux.at(0, 0) = 0.0;
  flux.at(0, 1) = 1.0;
  flux.at(0, 2) = 3.0;
  Field1D L(1, 2);
  divergence(flux, 1.0, L);
  CHECK(L(0, 0) == doctest::Approx(-1.0));
  CHECK(L(0, 1) == doctest::Approx(-2.0));

  FluxArray1D cf(1, 5);
  for (int i = 0; i <= 5; ++i) cf.at(0, i) = 7.7;
  Field1D Lc(1, 5);
  divergence(cf, 0.1, Lc);
  for (int j = 0; j < 5; ++j) CHECK(Lc(0, j) == doctest::Approx(0.0));
}

TEST_CASE("conservation on periodic grids for every flux path") {
  std::mt19937 gen(41);
  const Grid1D grid = make_grid_1d(0.0, 2.0 * kPi, 48, true);

  for (Recon recon : {Recon::Weno5, Recon::Muscl}) {
    ScalarOp1D op(grid, Boundary::periodic(), burgers(), recon,
                  DiffusionSpec{0.05, 0.3, 0.05});
    Field1D u(1, grid.n);
    for (int j = 0; j < grid.n; ++j) u(0, j) = uniform(gen, -1.0, 1.0);
    Field1D L(1, grid.n);
    op.rhs(u, L);
    double sum = 0.0;
    for (int j = 0; j < grid.n; ++j) sum += L(0, j) * grid.dx;
    CHECK(std::abs(sum) < 1e-12);
  }

  const EulerModel m;
  EulerOp1D eop(grid, Boundary::periodic(), m, Recon::Weno5);
  Field1D u(3, grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double W[3] = {uniform(gen, 0.5, 2.0), uniform(gen, -0.5, 0.5),
                         uniform(gen, 0.5, 2.0)};
    double U[3];
    primitive_to_conservative_1d(m, W, U);
    for (int c = 0; c < 3; ++c) u(c, j) = U[c];
  }
  Field1D L(3, grid.n);
  eop.rhs(u, L);
  for (int c = 0; c < 3; ++c) {
    double sum = 0.0;
    for (int j = 0; j < grid.n; ++j) sum += L(c, j) * grid.dx;
    CHECK(std::abs(sum) < 1e-12);
  }
}

TEST_CASE("max wave speeds") {
  const Grid1D grid = make_grid_1d(0.0, 1.0, 16, true);
  ScalarOp1D adv(grid, Boundary::periodic(), linear_advection(), Recon::Weno5);
  Field1D u(1, grid.n);
  for (int j = 0; j < grid.n; ++j) u(0, j) = 100.0 * j;
  CHECK(adv.max_wave_speed(u) == doctest::Approx(1.0));

  ScalarOp1D bop(grid, Boundary::periodic(), burgers(), Recon::Weno5);
  u(0, 3) = -2.0;
  u(0, 7) = 3.0;
  for (int j = 0; j < grid.n; ++j) {
    if (j != 3 && j != 7) u(0, j) = 0.0;
  }
  CHECK(bop.max_wave_speed(u) == doctest::Approx(3.0));

  // Sod initial data: max(|u| + c) = sqrt(1.4) from the left state.
  const EulerModel m;
  EulerOp1D eop(grid, Boundary::extrapolate(), m, Recon::Weno5);
  Field1D us(3, grid.n);
  for (int j = 0; j < grid.n; ++j) {
    const double W[3] = {j < 8 ? 1.0 : 0.125, 0.0, j < 8 ? 1.0 : 0.1};
    double U[3];
    primitive_to_conservative_1d(m, W, U);
    for (int c = 0; c < 3; ++c) us(c, j) = U[c];
  }
  CHECK(eop.max_wave_speed(us) == doctest::Approx(std::sqrt(1.4)).epsilon(1e-12));
}

TEST_CASE("2D interface fluxes: consistency and conservation") {
  const Grid2D grid = make_grid_2d(0.0, 1.0, 12, 0.0, 1.0, 10, true);
  ScalarOp2D op(grid, Boundary::periodic(), Boundary::periodic(), buckley_leverett_2d(),
                Recon::Weno5);

  Field2D u(1, 12, 10);
  for (int j = 0; j < 10; ++j) {
    for (int i = 0; i < 12; ++i) u(0, i, j) = 0.37;
  }
  Field2D L(1, 12, 10);
  op.rhs(u, L);
  for (int j = 0; j < 10; ++j) {
    for (int i = 0; i < 12; ++i) CHECK(std::abs(L(0, i, j)) < 1e-12);
  }

  std::mt19937 gen(53);
  for (int j = 0; j < 10; ++j) {
    for (int i = 0; i < 12; ++i) u(0, i, j) = uniform(gen, 0.0, 0.9);
  }
  op.rhs(u, L);
  double sum = 0.0;
  for (int j = 0; j < 10; ++j) {
    for (int i = 0; i < 12; ++i) sum += L(0, i, j);
  }
  CHECK(std::abs(sum * grid.x.dx * grid.y.dx) < 1e-12);
}
