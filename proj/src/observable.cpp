#include "qsurv/observable.hpp"

#include <cmath>

namespace qsurv {

SpectralObservable::SpectralObservable(std::vector<double> eigenvalues,
                                       std::vector<ComplexMatrix> blocks, double tol)
    : eigenvalues_(std::move(eigenvalues)), blocks_(std::move(blocks)) {
  if (eigenvalues_.empty() || eigenvalues_.size() != blocks_.size()) {
    throw std::invalid_argument("SpectralObservable: need one eigenvector block per eigenvalue");
  }
  for (std::size_t i = 0; i < eigenvalues_.size(); ++i) {
    for (std::size_t j = i + 1; j < eigenvalues_.size(); ++j) {
      if (std::abs(eigenvalues_[i] - eigenvalues_[j]) <= tol) {
        throw std::invalid_argument("SpectralObservable: eigenvalues must be pairwise distinct");
      }
    }
  }
  dim_ = blocks_.front().rows();
  Eigen::Index total = 0;
  for (const ComplexMatrix& b : blocks_) {
    if (b.rows() != dim_ || b.cols() < 1) {
      throw std::invalid_argument("SpectralObservable: inconsistent block shapes");
    }
    total += b.cols();
  }
  if (total != dim_) {
    throw std::invalid_argument(
        "SpectralObservable: block dimensions must sum to the space dimension");
  }
  // Gram-Schmidt over the concatenated blocks enforces orthonormality across
  // blocks as well as inside each one.
  ComplexMatrix all(dim_, dim_);
  Eigen::Index col = 0;
  for (const ComplexMatrix& b : blocks_) {
    all.middleCols(col, b.cols()) = b;
    col += b.cols();
  }
  all = orthonormalize_columns(all);
  col = 0;
  for (ComplexMatrix& b : blocks_) {
    b = all.middleCols(col, b.cols());
    col += b.cols();
  }
}

SpectralObservable SpectralObservable::nondegenerate(std::vector<double> eigenvalues,
                                                     const ComplexMatrix& eigenvectors,
                                                     double tol) {
  if (static_cast<Eigen::Index>(eigenvalues.size()) != eigenvectors.cols()) {
    throw std::invalid_argument("nondegenerate: one eigenvector column per eigenvalue");
  }
  std::vector<ComplexMatrix> blocks;
  blocks.reserve(eigenvalues.size());
  for (Eigen::Index j = 0; j < eigenvectors.cols(); ++j) {
    blocks.push_back(eigenvectors.col(j));
  }
  return SpectralObservable(std::move(eigenvalues), std::move(blocks), tol);
}

double SpectralObservable::eigenvalue(std::size_t alpha) const {
  if (alpha >= eigenvalues_.size()) {
    throw std::out_of_range("SpectralObservable: block index out of range");
  }
  return eigenvalues_[alpha];
}

Eigen::Index SpectralObservable::degeneracy(std::size_t alpha) const {
  if (alpha >= blocks_.size()) {
    throw std::out_of_range("SpectralObservable: block index out of range");
  }
  return blocks_[alpha].cols();
}

const ComplexMatrix& SpectralObservable::block(std::size_t alpha) const {
  if (alpha >= blocks_.size()) {
    throw std::out_of_range("SpectralObservable: block index out of range");
  }
  return blocks_[alpha];
}

ComplexMatrix SpectralObservable::matrix() const {
  ComplexMatrix a = ComplexMatrix::Zero(dim_, dim_);
  for (std::size_t alpha = 0; alpha < blocks_.size(); ++alpha) {
    a += eigenvalues_[alpha] * (blocks_[alpha] * blocks_[alpha].adjoint());
  }
  return a;
}

DegenerateRotation::DegenerateRotation(std::vector<ComplexMatrix> rotations, double tol)
    : rotations_(std::move(rotations)) {
  for (const ComplexMatrix& r : rotations_) {
    if (!is_unitary(r, tol)) {
      throw std::invalid_argument("DegenerateRotation: block rotation is not unitary");
    }
  }
}

DegenerateRotation DegenerateRotation::identity(const SpectralObservable& obs) {
  std::vector<ComplexMatrix> rots;
  rots.reserve(obs.block_count());
  for (std::size_t alpha = 0; alpha < obs.block_count(); ++alpha) {
    const Eigen::Index g = obs.degeneracy(alpha);
    rots.push_back(ComplexMatrix::Identity(g, g));
  }
  return DegenerateRotation(std::move(rots));
}

const ComplexMatrix& DegenerateRotation::rotation(std::size_t alpha) const {
  if (alpha >= rotations_.size()) {
    throw std::out_of_range("DegenerateRotation: block index out of range");
  }
  return rotations_[alpha];
}

}  // namespace qsurv
