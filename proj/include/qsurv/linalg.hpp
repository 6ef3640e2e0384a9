#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qsurv {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Default absolute tolerance for Hermiticity/trace/unitarity checks.
inline constexpr double kDefaultTol = 1e-10;

/// Largest entry magnitude (max norm).
double max_abs(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, double tol = kDefaultTol);
bool is_unitary(const ComplexMatrix& m, double tol = kDefaultTol);

/// Throws std::invalid_argument naming `what` if m is not Hermitian within tol.
void require_hermitian(const ComplexMatrix& m, double tol, const std::string& what);

/// Hermitian, unit trace, eigenvalues >= -tol.
bool is_density_matrix(const ComplexMatrix& m, double tol = kDefaultTol);
void require_density_matrix(const ComplexMatrix& m, double tol, const std::string& what);

void require_square(const ComplexMatrix& m, const std::string& what);
void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const std::string& what);

/// Modified Gram-Schmidt on the columns of `vectors`, in place ordering.
/// Throws if a column becomes numerically dependent (norm < rank_tol).
ComplexMatrix orthonormalize_columns(const ComplexMatrix& vectors, double rank_tol = 1e-8);

/// Deterministic pairwise reduction; more accurate than naive left-to-right
/// summation and independent of any parallel split.
double pairwise_sum(const double* data, std::size_t n);
Complex pairwise_sum(const Complex* data, std::size_t n);

}  // namespace qsurv
