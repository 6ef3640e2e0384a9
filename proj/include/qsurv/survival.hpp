#pragma once

#include <limits>
#include <vector>

#include "qsurv/observable.hpp"

namespace qsurv {

/// Waiting-time law for the delay between the nominal start of a measurement
/// and the device's actual engagement. Gamma family with mean scale tau and
/// shape s >= 1; the exponential law is the s = 1 member. The cutoff tau0 is
/// carried as metadata (tau << tau0); densities use the uncut Gamma form.
class SurvivalDistribution {
 public:
  enum class Kind { exponential, gamma };

  static SurvivalDistribution exponential(double tau,
                                          double tau0 = std::numeric_limits<double>::infinity());
  static SurvivalDistribution gamma(double tau, double s,
                                    double tau0 = std::numeric_limits<double>::infinity());

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  double shape() const { return s_; }
  double cutoff() const { return tau0_; }
  double rate() const { return 1.0 / tau_; }
  /// Small parameter tau/tau0 controlling the first-order treatment.
  double epsilon_hat() const { return tau_ / tau0_; }

 private:
  SurvivalDistribution(Kind kind, double tau, double s, double tau0);

  Kind kind_;
  double tau_;
  double s_;
  double tau0_;
};

/// Density gamma^s t^{s-1} e^{-gamma t} / Gamma(s), t >= 0.
double survival_density(const SurvivalDistribution& dist, double t);

/// Mass of the density beyond t: the bound on what a time quadrature cut at t
/// neglects.
double survival_tail_mass(const SurvivalDistribution& dist, double t);

/// q(omega) = (1 + i omega tau)^{-s}, principal branch. |q| <= 1, q(0) = 1,
/// q(-omega) = conj(q(omega)).
Complex q_factor(const SurvivalDistribution& dist, double omega);

/// Reduced density matrix in closed form: in the H_Q eigenbasis the entries
/// are rho_nm q(w_n - w_m). Trace, Hermiticity and the eigenbasis diagonal
/// are preserved; off-diagonal magnitudes contract.
ComplexMatrix reduced_density_closed(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                     const SurvivalDistribution& dist, double hbar,
                                     double tol = kDefaultTol);

/// Midpoint-rule approximation sum_i P(t_i) Delta U(t_i) rho U(t_i)^dag with
/// t_i = (i - 1/2) Delta over [0, cutoff], cutoff = max(tau0, 40 s tau) when
/// tau0 is finite and 40 s tau otherwise. Converges to the closed form as
/// N -> infinity. If refine_tol > 0, the N and N/2 sums are compared and a
/// disagreement beyond refine_tol raises an error ("N too small").
ComplexMatrix reduced_density_quadrature(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                         const SurvivalDistribution& dist, double hbar, int n_steps,
                                         double refine_tol = 0.0, double tol = kDefaultTol);

/// First order in the survival delay: rho - (i s tau / hbar) [H_Q, rho].
/// Trace is preserved exactly; positivity may fail at O(tau^2).
ComplexMatrix reduced_density_first_order(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                          const SurvivalDistribution& dist, double hbar,
                                          double tol = kDefaultTol);

/// Outcome probabilities of a non-ideal measurement: Tr(rho_r P_alpha) with
/// rho_r from the closed form.
std::vector<double> nonideal_probability(const ComplexMatrix& rho, const ComplexMatrix& h_q,
                                         const SurvivalDistribution& dist,
                                         const SpectralObservable& obs, double hbar,
                                         double tol = kDefaultTol);

}  // namespace qsurv
