#include "qsurv/survival.hpp"

#include <cmath>

#include "qsurv/measurement.hpp"
#include "qsurv/special_functions.hpp"

namespace qsurv {

SurvivalDistribution::SurvivalDistribution(Kind kind, double tau, double s, double tau0)
    : kind_(kind), tau_(tau), s_(s), tau0_(tau0) {
  if (!(tau > 0.0)) throw std::invalid_argument("SurvivalDistribution: tau must be positive");
  if (!(s >= 1.0)) throw std::invalid_argument("SurvivalDistribution: shape must be >= 1");
  if (!(tau0 > tau)) {
    throw std::invalid_argument("SurvivalDistribution: cutoff tau0 must exceed tau");
  }
}

SurvivalDistribution SurvivalDistribution::exponential(double tau, double tau0) {
  return SurvivalDistribution(Kind::exponential, tau, 1.0, tau0);
}

SurvivalDistribution SurvivalDistribution::gamma(double tau, double s, double tau0) {
  return SurvivalDistribution(Kind::gamma, tau, s, tau0);
}

double survival_density(const SurvivalDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("survival_density: t must be nonnegative");
  const double gamma_rate = dist.rate();
  const double s = dist.shape();
  if (t == 0.0) {
    if (s == 1.0) return gamma_rate;
    return 0.0;
  }
  // Evaluated in log space so large gamma*t does not overflow.
  const double log_pdf =
      s * std::log(gamma_rate) + (s - 1.0) * std::log(t) - gamma_rate * t - std::lgamma(s);
  return std::exp(log_pdf);
}

double survival_tail_mass(const SurvivalDistribution& dist, double t) {
  if (t < 0.0) throw std::invalid_argument("survival_tail_mass: t must be nonnegative");
  return upper_incomplete_gamma(dist.shape(), dist.rate() * t) / std::tgamma(dist.shape());
}

Complex q_factor(const SurvivalDistribution& dist, double omega) {
  // 1 + i omega tau never touches the negative real axis, so the principal
  // branch is smooth through q(0) = 1.
  return std::pow(Complex(1.0, omega * dist.tau()), -dist.shape());
}

namespace {

struct EigenBasis {
  RealVector energies;
  ComplexMatrix vectors;
};

EigenBasis diagonalize(const ComplexMatrix& h_q, double tol, const char* who) {
  require_hermitian(h_q, tol, std::string(who) + ": H_Q");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_q);
  return {es.eigenvalues(), es.eigenvectors()};
}

double quadrature_cutoff(const SurvivalDistribution& dist) {
  const double natural = 40.0 * dist.shape() * dist.tau();
  if (std::isfinite(dist.cutoff())) return std::max(dist.cutoff(), natural);
  return natural;
}

ComplexMatrix midpoint_sum(const ComplexMatrix& rho_e, const RealVector& w, double hbar,
                           const SurvivalDistribution& dist, int n_steps, double cutoff) {
  const Eigen::Index n = rho_e.rows();
  const double delta = cutoff / n_steps;
  ComplexMatrix acc = ComplexMatrix::Zero(n, n);
  ComplexVector phase(n);
  for (int i = 1; i <= n_steps; ++i) {
    const double t = (i - 0.5) * delta;
    const double weight = survival_density(dist, t) * delta;
    for (Eigen::Index k = 0; k < n; ++k) {
      phase(k) = std::exp(Complex(0.0, -w(k) * t / hbar));
    }
    acc.noalias() += weight * (phase * phase.adjoint()).cwiseProduct(rho_e);
  }
  return acc;
}

}  // namespace

ComplexMatrix reduced_density_closed(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                     const SurvivalDistribution& dist, double hbar, double tol) {
  require_same_dim(rho, h_q, "reduced_density_closed");
  const EigenBasis basis = diagonalize(h_q, tol, "reduced_density_closed");
  ComplexMatrix rho_e = basis.vectors.adjoint() * rho * basis.vectors;
  for (Eigen::Index n = 0; n < rho_e.rows(); ++n) {
    for (Eigen::Index m = 0; m < rho_e.cols(); ++m) {
      const double omega = (basis.energies(n) - basis.energies(m)) / hbar;
      rho_e(n, m) *= q_factor(dist, omega);
    }
  }
  return basis.vectors * rho_e * basis.vectors.adjoint();
}

ComplexMatrix reduced_density_quadrature(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                         const SurvivalDistribution& dist, double hbar,
                                         int n_steps, double refine_tol, double tol) {
  if (n_steps < 100) {
    throw std::invalid_argument("reduced_density_quadrature: need at least 100 steps");
  }
  require_same_dim(rho, h_q, "reduced_density_quadrature");
  const EigenBasis basis = diagonalize(h_q, tol, "reduced_density_quadrature");
  const ComplexMatrix rho_e = basis.vectors.adjoint() * rho * basis.vectors;
  const double cutoff = quadrature_cutoff(dist);
  const ComplexMatrix fine = midpoint_sum(rho_e, basis.energies, hbar, dist, n_steps, cutoff);
  if (refine_tol > 0.0) {
    const ComplexMatrix coarse =
        midpoint_sum(rho_e, basis.energies, hbar, dist, n_steps / 2, cutoff);
    if (max_abs(fine - coarse) > refine_tol) {
      throw std::runtime_error("reduced_density_quadrature: N too small, refinements disagree");
    }
  }
  return basis.vectors * fine * basis.vectors.adjoint();
}

ComplexMatrix reduced_density_first_order(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                          const SurvivalDistribution& dist, double hbar,
                                          double tol) {
  require_same_dim(rho, h_q, "reduced_density_first_order");
  require_hermitian(h_q, tol, "reduced_density_first_order: H_Q");
  const Complex factor(0.0, -dist.shape() * dist.tau() / hbar);
  return rho + factor * (h_q * rho - rho * h_q);
}

std::vector<double> nonideal_probability(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                         const SurvivalDistribution& dist,
                                         const SpectralObservable& obs, double hbar, double tol) {
  if (rho.rows() != obs.dim()) {
    throw std::invalid_argument("nonideal_probability: dimension mismatch");
  }
  const ComplexMatrix rho_r = reduced_density_closed(rho, h_q, dist, hbar, tol);
  return measurement_probabilities(rho_r, obs, tol);
}

}  // namespace qsurv
