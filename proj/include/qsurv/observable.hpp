#pragma once

#include <vector>

#include "qsurv/linalg.hpp"

namespace qsurv {

/// Observable in spectral form: distinct eigenvalues with orthonormal
/// eigenvector blocks of dimension g_alpha each. Blocks are re-orthonormalized
/// by modified Gram-Schmidt at construction; the block dimensions must add up
/// to the space dimension, so the projectors resolve the identity.
class SpectralObservable {
 public:
  /// blocks[alpha] is a dim x g_alpha matrix whose columns span the alpha-th
  /// eigenspace. Eigenvalues must be pairwise distinct (separation > tol).
  SpectralObservable(std::vector<double> eigenvalues, std::vector<ComplexMatrix> blocks,
                     double tol = kDefaultTol);

  /// Nondegenerate observable from the columns of `eigenvectors`.
  static SpectralObservable nondegenerate(std::vector<double> eigenvalues,
                                          const ComplexMatrix& eigenvectors,
                                          double tol = kDefaultTol);

  Eigen::Index dim() const { return dim_; }
  std::size_t block_count() const { return eigenvalues_.size(); }
  double eigenvalue(std::size_t alpha) const;
  Eigen::Index degeneracy(std::size_t alpha) const;
  /// Orthonormal eigenvector block (dim x g_alpha).
  const ComplexMatrix& block(std::size_t alpha) const;

  /// Reconstructs the operator sum_alpha lambda_alpha P_alpha.
  ComplexMatrix matrix() const;

 private:
  std::vector<double> eigenvalues_;
  std::vector<ComplexMatrix> blocks_;
  Eigen::Index dim_ = 0;
};

/// A unitary g_alpha x g_alpha matrix per eigenvalue block: the basis change
/// that a first-kind measurement may imprint on each degenerate subspace.
class DegenerateRotation {
 public:
  explicit DegenerateRotation(std::vector<ComplexMatrix> rotations, double tol = kDefaultTol);

  static DegenerateRotation identity(const SpectralObservable& obs);

  std::size_t block_count() const { return rotations_.size(); }
  const ComplexMatrix& rotation(std::size_t alpha) const;

 private:
  std::vector<ComplexMatrix> rotations_;
};

}  // namespace qsurv
