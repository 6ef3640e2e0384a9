#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "oracles.hpp"
#include "qsurv/cell_grid.hpp"
#include "qsurv/gaussian_packet.hpp"
#include "qsurv/quadrature.hpp"

using namespace qsurv;

namespace {

Wavefunction1D packet_momentum_wavefunction(const GaussianPacket& pk) {
  return [pk](double p) { return Complex(pk.momentum_wavefunction(p), 0.0); };
}

}  // namespace

TEST_CASE("cell amplitude: constant and disjoint-support inputs") {
  const CellGrid grid(GridKind::momentum, 0.2, 1, 5);
  const Complex c(0.3, -0.4);
  // Constant integrand: c * eps^{1/2}.
  const Complex amp = cell_amplitude([c](double) { return c; }, grid, 2);
  CHECK(std::abs(amp - c * std::sqrt(0.2)) < 1e-14);

  // Support entirely outside the cell.
  const auto outside = [&](double p) {
    return (p > grid.upper(3)) ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  };
  CHECK(std::abs(cell_amplitude(outside, grid, 0)) < 1e-15);

  CHECK_THROWS_AS(cell_amplitude([](double) { return Complex(1, 0); }, grid, 9),
                  std::out_of_range);
}

TEST_CASE("cell amplitude: Gaussian packet against an adaptive oracle") {
  const GaussianPacket pk{1.0, 0.7, 1.0, 1.0};
  const auto psi = packet_momentum_wavefunction(pk);
  const CellGrid grid(GridKind::momentum, 0.25, 1, 8);
  for (int n : {-3, 0, 2, 5}) {
    const Complex amp = cell_amplitude(psi, grid, n);
    const auto oracle = integrate_adaptive([&](double p) { return psi(p).real(); },
                                           grid.lower(n), grid.upper(n), 1e-13);
    CHECK(oracle.converged);
    CHECK(std::abs(amp - oracle.value / std::sqrt(grid.epsilon())) < 1e-10);
  }
}

TEST_CASE("gram deviation: tilings are exact, overlaps are detected") {
  CHECK(gram_deviation(CellGrid(GridKind::momentum, 0.3, 1, 20)) == 0.0);
  CHECK(gram_deviation(CellGrid(GridKind::position, 0.11, 3, 2)) == 0.0);

  // Deliberately overlapping cells: edge 1.5x the spacing.
  const CellGrid bad(GridKind::momentum, 0.2, 1, 4, 0.3);
  CHECK(gram_deviation(bad) > 0.0);
  CHECK(gram_deviation(bad) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("completeness residual: exactly representable state") {
  const CellGrid grid(GridKind::momentum, 0.5, 1, 4);
  // Normalized indicator of the n = 1 cell.
  const auto indicator = [&](double p) {
    return (p >= grid.lower(1) && p < grid.upper(1))
               ? Complex(1.0 / std::sqrt(grid.epsilon()), 0.0)
               : Complex(0.0, 0.0);
  };
  // The indicator has a jump; switch off the smoothness check for it.
  CellQuadrature quad;
  quad.check = false;
  quad.order = 32;
  CHECK(std::abs(completeness_residual(indicator, grid, quad)) < 1e-12);
}

TEST_CASE("completeness residual: Gaussian packet convergence under refinement") {
  const GaussianPacket pk{1.0, 0.0, 1.0, 1.0};
  const double b = pk.width_b();
  const auto psi = packet_momentum_wavefunction(pk);

  double prev = 1.0;
  for (int k = 0; k < 3; ++k) {
    const double eps = b / (10.0 * (1 << k));
    const CellGrid grid = CellGrid::covering(GridKind::momentum, eps, 6.0 * b);
    const double res = completeness_residual(psi, grid);
    CHECK(res >= -1e-9);
    if (k == 0) CHECK(res < 1e-3);
    CHECK(res < prev);
    prev = res;
  }
  // Leading behavior is eps^2 / (24 b^2), so halving eps quarters it.
  // (checked loosely: the last halving ratio lies near 4)
  const double r1 = completeness_residual(
      psi, CellGrid::covering(GridKind::momentum, b / 20.0, 6.0 * b));
  const double r2 = completeness_residual(
      psi, CellGrid::covering(GridKind::momentum, b / 40.0, 6.0 * b));
  CHECK(r1 / r2 > 3.5);
  CHECK(r1 / r2 < 4.5);
}

TEST_CASE("Bessel bound holds for random normalized mixtures") {
  testing::Rng rng(71);
  std::uniform_real_distribution<double> center(-1.0, 1.0);
  std::uniform_real_distribution<double> width(0.3, 0.8);
  for (int trial = 0; trial < 5; ++trial) {
    const double c1 = center(rng), c2 = center(rng);
    const double w1 = width(rng), w2 = width(rng);
    auto raw = [&](double p) {
      return std::exp(-0.5 * (p - c1) * (p - c1) / (w1 * w1)) +
             0.5 * std::exp(-0.5 * (p - c2) * (p - c2) / (w2 * w2));
    };
    const double norm2 =
        integrate_adaptive([&](double p) { return raw(p) * raw(p); }, -12.0, 12.0, 1e-12).value;
    auto psi = [&](double p) { return Complex(raw(p) / std::sqrt(norm2), 0.0); };
    const CellGrid grid = CellGrid::covering(GridKind::momentum, 0.21, 4.0);
    const double residual = completeness_residual(psi, grid);
    CHECK(residual >= -1e-9);  // captured norm <= 1 + tol
  }
}

TEST_CASE("discrete expectation: symmetry, packet mean, single cell") {
  const GaussianPacket symmetric{1.0, 0.0, 1.0, 1.0};
  const double b = symmetric.width_b();
  const CellGrid grid = CellGrid::covering(GridKind::momentum, b / 8.0, 6.0 * b);
  const auto amps = tabulate_amplitudes(packet_momentum_wavefunction(symmetric), grid);
  CHECK(std::abs(discrete_expectation(amps, GridKind::momentum)[0]) < 1e-12);

  const GaussianPacket moving{1.0, 1.0, 1.0, 1.0};
  const CellGrid grid2 =
      CellGrid::covering(GridKind::momentum, b / 12.0, std::abs(moving.p0) + 6.0 * b);
  const auto amps2 = tabulate_amplitudes(packet_momentum_wavefunction(moving), grid2);
  CHECK(std::abs(discrete_expectation(amps2, GridKind::momentum)[0] - moving.p0) < b / 12.0);

  // Indicator of one cell: exactly that center.
  const CellGrid grid3(GridKind::momentum, 0.4, 1, 3);
  CellAmplitudes single{grid3, std::vector<Complex>(7, Complex(0, 0))};
  single.values[5] = Complex(1.0, 0.0);  // n = +2
  CHECK(discrete_expectation(single, GridKind::momentum)[0] ==
        doctest::Approx(0.8).epsilon(1e-14));
  // The position observable is not diagonal on a momentum grid.
  CHECK_THROWS_AS(discrete_expectation(single, GridKind::position), std::invalid_argument);

  CellAmplitudes empty{grid3, std::vector<Complex>(7, Complex(0, 0))};
  CHECK_THROWS_AS(discrete_expectation(empty, GridKind::momentum), std::invalid_argument);
}

TEST_CASE("cell probabilities approach the continuum momentum density") {
  const GaussianPacket pk{1.0, 0.4, 1.0, 1.0};
  const double b = pk.width_b();
  const double eps = b / 10.0;
  const CellGrid grid = CellGrid::covering(GridKind::momentum, eps, std::abs(pk.p0) + 6.0 * b);
  const auto psi = packet_momentum_wavefunction(pk);
  for (int n = -10; n <= 10; ++n) {
    const double p = grid.center(n);
    if (std::abs(p - pk.p0) > 2.0 * b) continue;
    const double cell_prob = std::norm(cell_amplitude(psi, grid, n)) / eps;
    const double density = std::norm(psi(p));
    CHECK(std::abs(cell_prob - density) / density < 2.0 * eps / b);
  }
}

TEST_CASE("cell quadrature flags non-convergence on rough integrands") {
  const CellGrid grid(GridKind::momentum, 1.0, 1, 1);
  // A jump in the middle of the cell defeats the fixed-order rule.
  const auto rough = [](double p) {
    return p > 0.37 ? Complex(1.0, 0.0) : Complex(0.0, 0.0);
  };
  CellQuadrature strict;
  strict.order = 4;
  strict.check_tol = 1e-12;
  CHECK_THROWS_AS(cell_amplitude(rough, grid, 0, strict), std::runtime_error);
}

TEST_CASE("3D grids: gram, amplitude factorization, completeness") {
  const CellGrid grid(GridKind::momentum, 0.8, 3, 3);
  CHECK(gram_deviation(grid) == 0.0);

  // A product Gaussian factorizes, so the 3D amplitude is a product of 1D ones.
  const auto g1 = [](double p) { return std::pow(std::numbers::pi, -0.25) * std::exp(-0.5 * p * p); };
  const Wavefunction3D psi3 = [&](double x, double y, double z) {
    return Complex(g1(x) * g1(y) * g1(z), 0.0);
  };
  const Wavefunction1D psi1 = [&](double p) { return Complex(g1(p), 0.0); };
  const CellGrid axis(GridKind::momentum, grid.epsilon(), 1, grid.half_extent());
  const Complex a3 = cell_amplitude(psi3, grid, {1, 0, -2});
  const Complex a1a = cell_amplitude(psi1, axis, 1);
  const Complex a1b = cell_amplitude(psi1, axis, 0);
  const Complex a1c = cell_amplitude(psi1, axis, -2);
  CHECK(std::abs(a3 - a1a * a1b * a1c) < 1e-12);

  const double res3 = completeness_residual(psi3, grid);
  const double res1 = completeness_residual(psi1, axis);
  // Captured mass factorizes: 1 - r3 = (1 - r1)^3.
  CHECK(std::abs((1.0 - res3) - std::pow(1.0 - res1, 3.0)) < 1e-10);
}

TEST_CASE("Gaussian test state: unit norm, delta-family scale law, peak value") {
  const std::array<double, 3> p{0.3, -0.2, 0.5};
  const TestStateScale s1 = gaussian_test_state_norm(0.4, p);
  CHECK(s1.norm == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(s1.peak ==
        doctest::Approx(std::pow(std::numbers::pi, -0.75) * std::pow(0.4, -1.5)).epsilon(1e-12));

  // scale(eps) = 2^{3/2} pi^{3/4} eps^{3/2}: halving eps scales by 2^{-3/2}.
  const TestStateScale s2 = gaussian_test_state_norm(0.2, p);
  const double ratio = s2.scale / s1.scale;
  CHECK(std::abs(ratio - std::pow(2.0, -1.5)) / std::pow(2.0, -1.5) < 0.01);

  const double predicted = std::pow(2.0, 1.5) * std::pow(std::numbers::pi, 0.75) *
                           std::pow(0.4, 1.5);
  CHECK(s1.scale == doctest::Approx(predicted).epsilon(1e-10));

  CHECK_THROWS_AS(gaussian_test_state_norm(0.0, p), std::invalid_argument);
}

TEST_CASE("grid construction and validation") {
  CHECK_THROWS_AS(CellGrid(GridKind::momentum, -0.1, 1, 3), std::invalid_argument);
  CHECK_THROWS_AS(CellGrid(GridKind::momentum, 0.1, 2, 3), std::invalid_argument);
  const CellGrid g = CellGrid::covering(GridKind::position, 0.3, 2.0, 3);
  CHECK(g.half_extent() == 7);
  CHECK(g.cell_count() == 15LL * 15 * 15);
  CHECK(g.kind() == GridKind::position);
}
