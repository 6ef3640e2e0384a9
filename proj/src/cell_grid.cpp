#include "qsurv/cell_grid.hpp"

#include <cmath>
#include <numbers>

#include "qsurv/quadrature.hpp"

namespace qsurv {

namespace {

constexpr double kPi = std::numbers::pi;

void require_index(const CellGrid& grid, int n) {
  if (std::abs(n) > grid.half_extent()) {
    throw std::out_of_range("CellGrid: cell index out of range");
  }
}

Complex integrate_cell_1d(const std::function<Complex(double)>& f, double lo, double hi,
                          const CellQuadrature& quad) {
  const Complex coarse = integrate_c(f, lo, hi, quad.order);
  if (!quad.check) return coarse;
  const double mid = 0.5 * (lo + hi);
  const Complex fine = integrate_c(f, lo, mid, quad.order) + integrate_c(f, mid, hi, quad.order);
  if (std::abs(fine - coarse) > quad.check_tol) {
    throw std::runtime_error("cell_amplitude: quadrature did not converge on a cell");
  }
  return fine;
}

}  // namespace

CellGrid::CellGrid(GridKind kind, double epsilon, int dims, int half_extent, double edge)
    : kind_(kind), epsilon_(epsilon), edge_(edge == 0.0 ? epsilon : edge), dims_(dims),
      half_extent_(half_extent) {
  if (!(epsilon_ > 0.0)) throw std::invalid_argument("CellGrid: epsilon must be positive");
  if (!(edge_ > 0.0)) throw std::invalid_argument("CellGrid: edge must be positive");
  if (dims_ != 1 && dims_ != 3) throw std::invalid_argument("CellGrid: dims must be 1 or 3");
  if (half_extent_ < 0) throw std::invalid_argument("CellGrid: half extent must be >= 0");
}

CellGrid CellGrid::covering(GridKind kind, double epsilon, double halfwidth, int dims) {
  if (!(halfwidth > 0.0)) throw std::invalid_argument("CellGrid: halfwidth must be positive");
  const int n = static_cast<int>(std::ceil(halfwidth / epsilon));
  return CellGrid(kind, epsilon, dims, n);
}

std::int64_t CellGrid::cell_count() const {
  std::int64_t per = cells_per_axis();
  std::int64_t total = 1;
  for (int d = 0; d < dims_; ++d) total *= per;
  return total;
}

Complex cell_amplitude(const Wavefunction1D& psi, const CellGrid& grid, int n,
                       const CellQuadrature& quad) {
  if (grid.dims() != 1) throw std::invalid_argument("cell_amplitude: grid is not 1D");
  require_index(grid, n);
  const Complex integral = integrate_cell_1d(psi, grid.lower(n), grid.upper(n), quad);
  return integral / std::sqrt(grid.edge());
}

Complex cell_amplitude(const Wavefunction3D& psi, const CellGrid& grid,
                       const std::array<int, 3>& n, const CellQuadrature& quad) {
  if (grid.dims() != 3) throw std::invalid_argument("cell_amplitude: grid is not 3D");
  for (int k = 0; k < 3; ++k) require_index(grid, n[k]);
  // Tensor-product Gauss-Legendre over the cube; the split check runs on the
  // innermost axis only, which already catches an insufficient order.
  const GaussLegendre& rule = GaussLegendre::order(quad.order);
  const double half = 0.5 * grid.edge();
  Complex acc(0.0, 0.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const double x = grid.center(n[0]) + half * rule.nodes[i];
    for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
      const double y = grid.center(n[1]) + half * rule.nodes[j];
      const auto inner = [&](double z) { return psi(x, y, z); };
      const Complex line = integrate_cell_1d(inner, grid.lower(n[2]), grid.upper(n[2]), quad);
      acc += rule.weights[i] * rule.weights[j] * line;
    }
  }
  acc *= half * half;
  return acc / std::pow(grid.edge(), 1.5);
}

double CellAmplitudes::captured_norm() const {
  std::vector<double> sq(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) sq[i] = std::norm(values[i]);
  return pairwise_sum(sq.data(), sq.size());
}

CellAmplitudes tabulate_amplitudes(const Wavefunction1D& psi, const CellGrid& grid,
                                   const CellQuadrature& quad) {
  CellAmplitudes out{grid, {}};
  out.values.reserve(static_cast<std::size_t>(grid.cell_count()));
  for (int n = -grid.half_extent(); n <= grid.half_extent(); ++n) {
    out.values.push_back(cell_amplitude(psi, grid, n, quad));
  }
  return out;
}

CellAmplitudes tabulate_amplitudes(const Wavefunction3D& psi, const CellGrid& grid,
                                   const CellQuadrature& quad) {
  CellAmplitudes out{grid, {}};
  out.values.reserve(static_cast<std::size_t>(grid.cell_count()));
  const int half = grid.half_extent();
  for (int n1 = -half; n1 <= half; ++n1) {
    for (int n2 = -half; n2 <= half; ++n2) {
      for (int n3 = -half; n3 <= half; ++n3) {
        out.values.push_back(cell_amplitude(psi, grid, {n1, n2, n3}, quad));
      }
    }
  }
  return out;
}

double gram_deviation(const CellGrid& grid) {
  // <n'|n> = edge^{-d} * vol(cell_{n'} intersect cell_n). Diagonal entries are
  // exactly 1 by normalization; the worst off-diagonal pair is offset along a
  // single axis, where the overlap is max(0, edge - |k| eps) and the other
  // axes coincide.
  const double eps = grid.epsilon();
  const double edge = grid.edge();
  double deviation = 0.0;
  const int reach = std::min(grid.cells_per_axis() - 1, static_cast<int>(std::ceil(edge / eps)));
  for (int k = 1; k <= reach; ++k) {
    const double overlap = std::max(0.0, edge - k * eps) / edge;
    deviation = std::max(deviation, overlap);
  }
  return deviation;
}

namespace {

double residual_from(const CellAmplitudes& amps) { return 1.0 - amps.captured_norm(); }

}  // namespace

double completeness_residual(const Wavefunction1D& psi, const CellGrid& grid,
                             const CellQuadrature& quad) {
  return residual_from(tabulate_amplitudes(psi, grid, quad));
}

double completeness_residual(const Wavefunction3D& psi, const CellGrid& grid,
                             const CellQuadrature& quad) {
  return residual_from(tabulate_amplitudes(psi, grid, quad));
}

std::vector<double> discrete_expectation(const CellAmplitudes& amps, GridKind which) {
  const CellGrid& grid = amps.grid;
  if (which != grid.kind()) {
    throw std::invalid_argument(
        "discrete_expectation: requested observable is not diagonal on this grid");
  }
  const double norm = amps.captured_norm();
  if (norm <= 0.0) {
    throw std::invalid_argument("discrete_expectation: captured norm vanishes");
  }
  std::vector<double> result(static_cast<std::size_t>(grid.dims()), 0.0);
  const int half = grid.half_extent();
  if (grid.dims() == 1) {
    std::vector<double> terms(amps.values.size());
    for (int n = -half; n <= half; ++n) {
      terms[static_cast<std::size_t>(n + half)] =
          grid.center(n) * std::norm(amps.values[static_cast<std::size_t>(n + half)]);
    }
    result[0] = pairwise_sum(terms.data(), terms.size()) / norm;
    return result;
  }
  for (int axis = 0; axis < 3; ++axis) {
    std::vector<double> terms(amps.values.size());
    std::size_t idx = 0;
    for (int n1 = -half; n1 <= half; ++n1) {
      for (int n2 = -half; n2 <= half; ++n2) {
        for (int n3 = -half; n3 <= half; ++n3, ++idx) {
          const int n_axis = (axis == 0) ? n1 : (axis == 1) ? n2 : n3;
          terms[idx] = grid.center(n_axis) * std::norm(amps.values[idx]);
        }
      }
    }
    result[static_cast<std::size_t>(axis)] = pairwise_sum(terms.data(), terms.size()) / norm;
  }
  return result;
}

TestStateScale gaussian_test_state_norm(double epsilon, const std::array<double, 3>& p,
                                        const CellQuadrature& quad) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("gaussian_test_state_norm: epsilon must be positive");
  }
  // phi(p') = pi^{-3/4} eps^{-3/2} exp(-(p - p')^2 / 2 eps^2), integrated over
  // a +-8 eps box per axis (tail < 1e-13). Both integrals factor per axis.
  const double amp = std::pow(kPi, -0.75) * std::pow(epsilon, -1.5);
  const double halfwidth = 8.0 * epsilon;
  double norm = 1.0;
  double scale = 1.0;
  for (int axis = 0; axis < 3; ++axis) {
    const double c = p[static_cast<std::size_t>(axis)];
    const auto g = [&](double q) { return std::exp(-0.5 * (q - c) * (q - c) / (epsilon * epsilon)); };
    const auto g2 = [&](double q) { return std::exp(-(q - c) * (q - c) / (epsilon * epsilon)); };
    const int panels = 16;
    scale *= integrate_panels(std::function<double(double)>(g), c - halfwidth, c + halfwidth,
                              panels, quad.order);
    norm *= integrate_panels(std::function<double(double)>(g2), c - halfwidth, c + halfwidth,
                             panels, quad.order);
  }
  TestStateScale out;
  out.norm = amp * amp * norm;
  out.scale = amp * scale;
  out.peak = amp;
  return out;
}

}  // namespace qsurv
