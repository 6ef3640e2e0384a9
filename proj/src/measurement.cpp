#include "qsurv/measurement.hpp"

#include <cmath>

namespace qsurv {

ComplexMatrix build_projector(const SpectralObservable& obs, std::size_t alpha) {
  const ComplexMatrix& u = obs.block(alpha);
  return u * u.adjoint();
}

std::vector<double> measurement_probabilities(const ComplexMatrix& rho,
                                              const SpectralObservable& obs, double tol) {
  if (rho.rows() != obs.dim() || rho.cols() != obs.dim()) {
    throw std::invalid_argument("measurement_probabilities: dimension mismatch");
  }
  require_hermitian(rho, tol, "measurement_probabilities: rho");
  std::vector<double> probs(obs.block_count());
  for (std::size_t alpha = 0; alpha < obs.block_count(); ++alpha) {
    const ComplexMatrix& u = obs.block(alpha);
    double p = (u.adjoint() * rho * u).trace().real();
    if (p < 0.0) {
      if (p < -tol) {
        throw std::invalid_argument("measurement_probabilities: probability " +
                                    std::to_string(p) + " below -tol");
      }
      p = 0.0;
    }
    probs[alpha] = p;
  }
  return probs;
}

ComplexMatrix detection_operator(const SpectralObservable& obs, const DegenerateRotation& rot,
                                 std::size_t alpha) {
  const ComplexMatrix& u = obs.block(alpha);
  const ComplexMatrix& lam = rot.rotation(alpha);
  if (lam.rows() != u.cols()) {
    throw std::invalid_argument("detection_operator: rotation block does not match degeneracy");
  }
  // M_alpha = sum_s |u~_alpha^s><u_alpha^s| with u~^s = sum_n Lambda^{sn} u^n.
  return u * lam.transpose() * u.adjoint();
}

PostMeasurement post_measurement_state(const ComplexMatrix& rho, const SpectralObservable& obs,
                                       const DegenerateRotation& rot, std::size_t alpha,
                                       const ComplexMatrix& u_q, double tol) {
  if (rho.rows() != obs.dim() || u_q.rows() != obs.dim() || u_q.cols() != obs.dim()) {
    throw std::invalid_argument("post_measurement_state: dimension mismatch");
  }
  const ComplexMatrix m = detection_operator(obs, rot, alpha);
  ComplexMatrix sigma = m * rho * m.adjoint();
  const double p = sigma.trace().real();
  if (p <= tol) {
    throw std::invalid_argument("post_measurement_state: outcome has zero probability");
  }
  PostMeasurement out;
  out.probability = p;
  out.state = (u_q * sigma * u_q.adjoint()) / p;
  return out;
}

ComplexMatrix ensemble_after_measurement(const ComplexMatrix& rho, const SpectralObservable& obs,
                                         const DegenerateRotation& rot, const ComplexMatrix& u_q,
                                         double tol) {
  if (rho.rows() != obs.dim() || u_q.rows() != obs.dim() || u_q.cols() != obs.dim()) {
    throw std::invalid_argument("ensemble_after_measurement: dimension mismatch");
  }
  require_hermitian(rho, tol, "ensemble_after_measurement: rho");
  ComplexMatrix acc = ComplexMatrix::Zero(obs.dim(), obs.dim());
  for (std::size_t alpha = 0; alpha < obs.block_count(); ++alpha) {
    const ComplexMatrix m = detection_operator(obs, rot, alpha);
    acc += m * rho * m.adjoint();
  }
  return u_q * acc * u_q.adjoint();
}

bool are_compatible(const SpectralObservable& a, const SpectralObservable& b, double tol) {
  if (a.dim() != b.dim()) throw std::invalid_argument("are_compatible: dimension mismatch");
  const ComplexMatrix am = a.matrix();
  const ComplexMatrix bm = b.matrix();
  return max_abs(am * bm - bm * am) <= tol;
}

ComplexMatrix evolve_density(const ComplexMatrix& rho, const ComplexMatrix& h_q, double dt,
                             double hbar, double tol) {
  require_same_dim(rho, h_q, "evolve_density");
  require_hermitian(h_q, tol, "evolve_density: H_Q");
  if (hbar <= 0.0) throw std::invalid_argument("evolve_density: hbar must be positive");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_q);
  const RealVector& w = es.eigenvalues();
  const ComplexMatrix& v = es.eigenvectors();
  ComplexMatrix rho_e = v.adjoint() * rho * v;
  for (Eigen::Index n = 0; n < rho_e.rows(); ++n) {
    for (Eigen::Index m = 0; m < rho_e.cols(); ++m) {
      const double omega = (w(n) - w(m)) / hbar;
      rho_e(n, m) *= std::exp(Complex(0.0, -omega * dt));
    }
  }
  return v * rho_e * v.adjoint();
}

}  // namespace qsurv
