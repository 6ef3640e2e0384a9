#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <vector>

#include "qsurv/linalg.hpp"

namespace qsurv {

enum class GridKind { momentum, position };

/// Quadrature settings for per-cell integrals: fixed-order Gauss-Legendre per
/// cell with a split-in-two error check. A check failure throws.
struct CellQuadrature {
  int order = 8;
  bool check = true;
  double check_tol = 1e-9;
};

/// Uniform cubic-cell discretization: cell centers at epsilon * n with
/// n_k in [-N, N] per axis, half-open cells [eps(n-1/2), eps(n+1/2)).
/// `edge` defaults to the spacing; overriding it breaks the tiling on purpose
/// so the Gram diagnostic below has a violation to detect.
class CellGrid {
 public:
  CellGrid(GridKind kind, double epsilon, int dims, int half_extent, double edge = 0.0);

  /// Smallest grid whose cells cover [-halfwidth, halfwidth] per axis.
  static CellGrid covering(GridKind kind, double epsilon, double halfwidth, int dims = 1);

  GridKind kind() const { return kind_; }
  double epsilon() const { return epsilon_; }
  double edge() const { return edge_; }
  int dims() const { return dims_; }
  int half_extent() const { return half_extent_; }
  int cells_per_axis() const { return 2 * half_extent_ + 1; }
  std::int64_t cell_count() const;

  double center(int n) const { return epsilon_ * n; }
  double lower(int n) const { return epsilon_ * n - 0.5 * edge_; }
  double upper(int n) const { return epsilon_ * n + 0.5 * edge_; }

 private:
  GridKind kind_;
  double epsilon_;
  double edge_;
  int dims_;
  int half_extent_;
};

using Wavefunction1D = std::function<Complex(double)>;
using Wavefunction3D = std::function<Complex(double, double, double)>;

/// Projection of psi onto the normalized cell state:
/// edge^{-d/2} * integral of psi over the cell.
Complex cell_amplitude(const Wavefunction1D& psi, const CellGrid& grid, int n,
                       const CellQuadrature& quad = {});
Complex cell_amplitude(const Wavefunction3D& psi, const CellGrid& grid,
                       const std::array<int, 3>& n, const CellQuadrature& quad = {});

/// All cell amplitudes of a grid, in a fixed axis-major order.
struct CellAmplitudes {
  CellGrid grid;
  std::vector<Complex> values;  // 1D: index n+N; 3D: ((n1+N)*A + n2+N)*A + n3+N

  double captured_norm() const;
};

CellAmplitudes tabulate_amplitudes(const Wavefunction1D& psi, const CellGrid& grid,
                                   const CellQuadrature& quad = {});
CellAmplitudes tabulate_amplitudes(const Wavefunction3D& psi, const CellGrid& grid,
                                   const CellQuadrature& quad = {});

/// Max deviation of the analytic cell Gram matrix <n'|n> from the Kronecker
/// delta. Identically 0 for the half-open tiling (disjoint cells); positive
/// when the edge override makes cells overlap.
double gram_deviation(const CellGrid& grid);

/// 1 - sum of |amplitude|^2 for a unit-norm psi; nonnegative up to quadrature
/// error, and -> 0 as epsilon -> 0 with growing coverage.
double completeness_residual(const Wavefunction1D& psi, const CellGrid& grid,
                             const CellQuadrature& quad = {});
double completeness_residual(const Wavefunction3D& psi, const CellGrid& grid,
                             const CellQuadrature& quad = {});

/// Expectation of the requested diagonal observable (cell centers weighted by
/// |amplitude|^2, renormalized by the captured norm). One entry per axis.
/// `which` must match the grid's kind: only the grid's own observable is
/// diagonal on its cells. Throws on mismatch or when the captured norm
/// vanishes.
std::vector<double> discrete_expectation(const CellAmplitudes& amps, GridKind which);

/// Normalization and delta-family scale of the Gaussian test state centered
/// at momentum p with width epsilon: `norm` is the quadrature of the squared
/// test function (= 1) and `scale` its plain integral, which follows the
/// 2^{3/2} pi^{3/4} eps^{3/2} law as eps -> 0.
struct TestStateScale {
  double norm = 0.0;
  double scale = 0.0;
  double peak = 0.0;
};

TestStateScale gaussian_test_state_norm(double epsilon, const std::array<double, 3>& p,
                                        const CellQuadrature& quad = {});

}  // namespace qsurv
