#pragma once

// Test-side helpers: deterministic random instances and independent numerical
// oracles. Nothing here may call back into the library paths under test.

#include <complex>
#include <random>
#include <vector>

#include "qsurv/linalg.hpp"
#include "qsurv/observable.hpp"

namespace qsurv::testing {

using Rng = std::mt19937_64;

inline ComplexMatrix random_complex_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> dist(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  }
  return m;
}

inline ComplexMatrix random_unitary(Rng& rng, Eigen::Index n) {
  const ComplexMatrix a = random_complex_matrix(rng, n, n);
  Eigen::HouseholderQR<ComplexMatrix> qr(a);
  ComplexMatrix q = qr.householderQ();
  // Fix the phase convention so columns are reproducible.
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

inline ComplexMatrix random_hermitian(Rng& rng, Eigen::Index n, double scale = 1.0) {
  const ComplexMatrix a = random_complex_matrix(rng, n, n);
  return scale * 0.5 * (a + a.adjoint());
}

inline ComplexMatrix random_density(Rng& rng, Eigen::Index n) {
  const ComplexMatrix a = random_complex_matrix(rng, n, n);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace().real();
  return rho;
}

inline ComplexVector random_unit_vector(Rng& rng, Eigen::Index n) {
  ComplexVector v = random_complex_matrix(rng, n, 1);
  return v / v.norm();
}

/// Observable with the given degeneracy partition, eigenvectors drawn from a
/// Haar-ish random unitary.
inline SpectralObservable random_observable(Rng& rng, const std::vector<int>& degeneracies) {
  Eigen::Index dim = 0;
  for (int g : degeneracies) dim += g;
  const ComplexMatrix u = random_unitary(rng, dim);
  std::vector<double> eigenvalues;
  std::vector<ComplexMatrix> blocks;
  std::uniform_real_distribution<double> gapdist(0.5, 1.5);
  double lambda = 0.0;
  Eigen::Index col = 0;
  for (int g : degeneracies) {
    lambda += gapdist(rng);
    eigenvalues.push_back(lambda);
    blocks.push_back(u.middleCols(col, g));
    col += g;
  }
  return SpectralObservable(std::move(eigenvalues), std::move(blocks));
}

/// Matrix exponential by scaling and squaring with a Taylor core; independent
/// of every eigendecomposition path in the library.
inline ComplexMatrix expm_taylor(const ComplexMatrix& m) {
  int squarings = 0;
  double norm = m.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  const ComplexMatrix a = m / std::exp2(squarings);
  ComplexMatrix result = ComplexMatrix::Identity(m.rows(), m.cols());
  ComplexMatrix term = result;
  for (int k = 1; k <= 40; ++k) {
    term = term * a / static_cast<double>(k);
    result += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace qsurv::testing
