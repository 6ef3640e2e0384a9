#include "qsurv/nondemolition.hpp"

#include <cmath>

namespace qsurv {

VBasis::VBasis(SpectralObservable parent, std::vector<ComplexVector> coefficients)
    : parent_(std::move(parent)), coefficients_(std::move(coefficients)) {
  if (coefficients_.size() != parent_.block_count()) {
    throw std::invalid_argument("VBasis: one coefficient vector per eigenvalue block");
  }
  for (std::size_t alpha = 0; alpha < coefficients_.size(); ++alpha) {
    ComplexVector& c = coefficients_[alpha];
    if (c.size() != parent_.degeneracy(alpha)) {
      throw std::invalid_argument("VBasis: coefficient length must equal the block degeneracy");
    }
    const double norm = c.norm();
    if (std::abs(norm - 1.0) > 1e-6) {
      throw std::invalid_argument("VBasis: coefficients must be unit norm (got " +
                                  std::to_string(norm) + ")");
    }
    c /= norm;
  }
}

const ComplexVector& VBasis::coefficients(std::size_t alpha) const {
  if (alpha >= coefficients_.size()) throw std::out_of_range("VBasis: index out of range");
  return coefficients_[alpha];
}

ComplexVector VBasis::vector(std::size_t alpha) const {
  return parent_.block(alpha) * coefficients(alpha);
}

ComplexVector VBasis::rotated_vector(std::size_t alpha, const DegenerateRotation& rot) const {
  // |v~> = sum_s c^s |u~^s> = U Lambda^T c.
  const ComplexMatrix& lam = rot.rotation(alpha);
  if (lam.rows() != parent_.degeneracy(alpha)) {
    throw std::invalid_argument("VBasis: rotation block does not match degeneracy");
  }
  return parent_.block(alpha) * (lam.transpose() * coefficients(alpha));
}

VState::VState(std::vector<double> weights, ComplexMatrix amplitudes, double tol)
    : weights_(std::move(weights)), amplitudes_(std::move(amplitudes)) {
  if (weights_.empty() || static_cast<Eigen::Index>(weights_.size()) != amplitudes_.rows()) {
    throw std::invalid_argument("VState: one amplitude row per mixture weight");
  }
  double total = 0.0;
  for (double w : weights_) {
    if (w <= 0.0) throw std::invalid_argument("VState: weights must be positive");
    total += w;
  }
  if (std::abs(total - 1.0) > tol) {
    throw std::invalid_argument("VState: weights must sum to 1 (got " + std::to_string(total) +
                                ")");
  }
  for (Eigen::Index k = 0; k < amplitudes_.rows(); ++k) {
    const double norm = amplitudes_.row(k).norm();
    if (std::abs(norm - 1.0) > tol) {
      throw std::invalid_argument("VState: amplitude row " + std::to_string(k) +
                                  " must be unit norm");
    }
  }
}

ComplexMatrix v_density(const VState& vs, const VBasis& vb) {
  if (vs.basis_size() != vb.count()) {
    throw std::invalid_argument("v_density: amplitude width must equal the basis size");
  }
  const std::size_t nb = vb.count();
  // w_ab = sum_k pi_k B_ka conj(B_kb)
  ComplexMatrix w = ComplexMatrix::Zero(nb, nb);
  for (std::size_t k = 0; k < vs.mixture_size(); ++k) {
    const auto row = vs.amplitudes().row(static_cast<Eigen::Index>(k));
    w += vs.weight(k) * (row.transpose() * row.conjugate());
  }
  ComplexMatrix rho = ComplexMatrix::Zero(vb.parent().dim(), vb.parent().dim());
  std::vector<ComplexVector> vecs(nb);
  for (std::size_t a = 0; a < nb; ++a) vecs[a] = vb.vector(a);
  for (std::size_t a = 0; a < nb; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      rho += w(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
             (vecs[a] * vecs[b].adjoint());
    }
  }
  return rho;
}

std::vector<double> v_probabilities(const ComplexMatrix& rho_v, const VBasis& vb, double tol) {
  if (rho_v.rows() != vb.parent().dim() || rho_v.cols() != vb.parent().dim()) {
    throw std::invalid_argument("v_probabilities: dimension mismatch");
  }
  std::vector<double> probs(vb.count());
  for (std::size_t alpha = 0; alpha < vb.count(); ++alpha) {
    const ComplexVector v = vb.vector(alpha);
    double p = (v.adjoint() * rho_v * v).value().real();
    if (p < 0.0) {
      if (p < -tol) {
        throw std::invalid_argument("v_probabilities: probability below -tol");
      }
      p = 0.0;
    }
    probs[alpha] = p;
  }
  return probs;
}

ComplexMatrix v_post_state(const VBasis& vb, const DegenerateRotation& rot, std::size_t alpha,
                           const ComplexMatrix& u_q) {
  if (u_q.rows() != vb.parent().dim() || u_q.cols() != vb.parent().dim()) {
    throw std::invalid_argument("v_post_state: dimension mismatch");
  }
  const ComplexVector vt = u_q * vb.rotated_vector(alpha, rot);
  return vt * vt.adjoint();
}

}  // namespace qsurv
