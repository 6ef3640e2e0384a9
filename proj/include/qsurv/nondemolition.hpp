#pragma once

#include <vector>

#include "qsurv/observable.hpp"

namespace qsurv {

/// Orthonormal basis of one superposition vector per degenerate eigenspace:
/// |v_alpha> = sum_s c_alpha^s |u_alpha^s>. Coefficient vectors are stored,
/// not materialized kets, so the rotated image |v~_alpha> stays exact.
class VBasis {
 public:
  /// coefficients[alpha] has length g_alpha; it is normalized at construction
  /// when within 1e-6 of unit norm, rejected otherwise.
  VBasis(SpectralObservable parent, std::vector<ComplexVector> coefficients);

  const SpectralObservable& parent() const { return parent_; }
  std::size_t count() const { return coefficients_.size(); }
  const ComplexVector& coefficients(std::size_t alpha) const;

  /// |v_alpha> in the ambient space.
  ComplexVector vector(std::size_t alpha) const;
  /// |v~_alpha> = sum_s c^s |u~^s| under the block rotation.
  ComplexVector rotated_vector(std::size_t alpha, const DegenerateRotation& rot) const;

 private:
  SpectralObservable parent_;
  std::vector<ComplexVector> coefficients_;
};

/// Mixture of pure superpositions chi_k = sum_alpha B_{k,alpha} |v_alpha>
/// with weights pi_k. Rows of `amplitudes` are the B_k.
class VState {
 public:
  VState(std::vector<double> weights, ComplexMatrix amplitudes, double tol = 1e-6);

  std::size_t mixture_size() const { return weights_.size(); }
  std::size_t basis_size() const { return static_cast<std::size_t>(amplitudes_.cols()); }
  double weight(std::size_t k) const { return weights_.at(k); }
  const ComplexMatrix& amplitudes() const { return amplitudes_; }

 private:
  std::vector<double> weights_;
  ComplexMatrix amplitudes_;
};

/// Density matrix rho_v = sum_{ab} |v_a> w_ab <v_b| with
/// w_ab = sum_k pi_k B_{ka} conj(B_{kb}).
ComplexMatrix v_density(const VState& vs, const VBasis& vb);

/// P_alpha = <v_alpha| rho_v |v_alpha>; clamps (-tol, 0) to 0.
std::vector<double> v_probabilities(const ComplexMatrix& rho_v, const VBasis& vb,
                                    double tol = kDefaultTol);

/// Pure post-measurement state U_Q |v~_alpha><v~_alpha| U_Q^dag.
ComplexMatrix v_post_state(const VBasis& vb, const DegenerateRotation& rot, std::size_t alpha,
                           const ComplexMatrix& u_q);

}  // namespace qsurv
