#include "qsurv/linalg.hpp"

namespace qsurv {

double max_abs(const ComplexMatrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  const ComplexMatrix id = ComplexMatrix::Identity(m.rows(), m.cols());
  return max_abs(m.adjoint() * m - id) <= tol && max_abs(m * m.adjoint() - id) <= tol;
}

void require_hermitian(const ComplexMatrix& m, double tol, const std::string& what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(what + ": matrix is not square");
  const double dev = max_abs(m - m.adjoint());
  if (dev > tol) {
    throw std::invalid_argument(what + ": not Hermitian (max deviation " + std::to_string(dev) + ")");
  }
}

bool is_density_matrix(const ComplexMatrix& m, double tol) {
  if (!is_hermitian(m, tol)) return false;
  if (std::abs(m.trace() - Complex(1.0, 0.0)) > tol) return false;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

void require_density_matrix(const ComplexMatrix& m, double tol, const std::string& what) {
  require_hermitian(m, tol, what);
  const double trace_dev = std::abs(m.trace() - Complex(1.0, 0.0));
  if (trace_dev > tol) {
    throw std::invalid_argument(what + ": trace differs from 1 by " + std::to_string(trace_dev));
  }
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m, Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -tol) {
    throw std::invalid_argument(what + ": negative eigenvalue " + std::to_string(min_eig));
  }
}

void require_square(const ComplexMatrix& m, const std::string& what) {
  if (m.rows() != m.cols()) throw std::invalid_argument(what + ": matrix is not square");
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const std::string& what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw std::invalid_argument(what + ": dimension mismatch");
  }
}

ComplexMatrix orthonormalize_columns(const ComplexMatrix& vectors, double rank_tol) {
  ComplexMatrix q = vectors;
  for (Eigen::Index j = 0; j < q.cols(); ++j) {
    for (Eigen::Index k = 0; k < j; ++k) {
      q.col(j) -= q.col(k).dot(q.col(j)) * q.col(k);
    }
    const double norm = q.col(j).norm();
    if (norm < rank_tol) {
      throw std::invalid_argument("orthonormalize_columns: column " + std::to_string(j) +
                                  " is numerically dependent on its predecessors");
    }
    q.col(j) /= norm;
  }
  return q;
}

namespace {

template <typename T>
T pairwise_sum_impl(const T* data, std::size_t n) {
  if (n == 0) return T{};
  if (n <= 8) {
    T acc = data[0];
    for (std::size_t i = 1; i < n; ++i) acc += data[i];
    return acc;
  }
  const std::size_t half = n / 2;
  return pairwise_sum_impl(data, half) + pairwise_sum_impl(data + half, n - half);
}

}  // namespace

double pairwise_sum(const double* data, std::size_t n) { return pairwise_sum_impl(data, n); }
Complex pairwise_sum(const Complex* data, std::size_t n) { return pairwise_sum_impl(data, n); }

}  // namespace qsurv
