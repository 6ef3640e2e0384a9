#pragma once

#include <vector>

#include "qsurv/linalg.hpp"

namespace qsurv {

/// Finite-dimensional scattering setup: free Hamiltonian H0, interaction HI,
/// damping nu. Free eigenpairs and full eigenpairs are cached.
class ScatteringModel {
 public:
  ScatteringModel(ComplexMatrix h0, ComplexMatrix hi, double nu, double hbar = 1.0,
                  double tol = kDefaultTol);

  /// 1e-3 x spectral spread of H0 + HI over hbar.
  static double default_nu(const ComplexMatrix& h0, const ComplexMatrix& hi, double hbar = 1.0);

  Eigen::Index dim() const { return h0_.rows(); }
  const ComplexMatrix& h0() const { return h0_; }
  const ComplexMatrix& hi() const { return hi_; }
  const ComplexMatrix& h() const { return h_; }
  double nu() const { return nu_; }
  double hbar() const { return hbar_; }

  /// Free eigenvalue and eigenvector (columns orthonormal).
  double free_energy(Eigen::Index lambda) const { return free_energies_(lambda); }
  const RealVector& free_energies() const { return free_energies_; }
  const ComplexMatrix& free_states() const { return free_states_; }

  /// e^{-i H t / hbar} via the cached full eigendecomposition.
  ComplexMatrix full_propagator(double t) const;
  /// e^{-i H0 t / hbar}.
  ComplexMatrix free_propagator(double t) const;

 private:
  ComplexMatrix h0_;
  ComplexMatrix hi_;
  ComplexMatrix h_;
  double nu_;
  double hbar_;
  RealVector free_energies_;
  ComplexMatrix free_states_;
  RealVector full_energies_;
  ComplexMatrix full_states_;
};

/// Damped scattered state i hbar nu (E_lambda - H + i hbar nu)^{-1} |Phi_lambda>.
ComplexVector scattered_state(const ScatteringModel& model, Eigen::Index lambda);

/// Fixed point of |Psi> = |Phi> + (E - H0 + i hbar nu)^{-1} HI |Psi>.
/// Throws when the iteration residual grows three times in a row (Born series
/// divergence) or max_iter is exhausted without reaching tol.
ComplexVector lippmann_schwinger_iterate(const ScatteringModel& model, Eigen::Index lambda,
                                         int max_iter, double tol);

struct WaveOperators {
  ComplexMatrix omega_plus;
  ComplexMatrix omega_minus;
  ComplexMatrix s_matrix;  // Omega_minus^dag Omega_plus
  double isometry_defect_plus = 0.0;
  double isometry_defect_minus = 0.0;
  double unitarity_defect = 0.0;  // max |S^dag S - I|
};

WaveOperators wave_operators_and_s_matrix(const ScatteringModel& model);

/// Conditional propagator U0(t') Omega_minus^dag U(t0) Omega_plus.
ComplexMatrix conditional_propagator(const ScatteringModel& model, double t_prime, double t0);

struct TransitionAmplitudes {
  ComplexVector f;               // f_mu = <Phi_mu| e^{i(E_mu - H)t/hbar} |Psi_lambda>
  double norm_constant = 0.0;    // sum |f|^2 = <Psi|Psi>
  double norm_via_t_matrix = 0.0;  // 1 + Im T_{lambda lambda} / (hbar nu)
};

TransitionAmplitudes transition_amplitudes(const ScatteringModel& model, Eigen::Index lambda,
                                           double t);

struct DoubleLimitEntry {
  double epsilon = 0.0;
  double nu = 0.0;
  Eigen::Index lambda = 0;
  double n_lambda = 0.0;
};

/// Norm table over (epsilon, nu) for the family H_I(eps) = eps^{3/2} V:
/// |N_lambda - 1| scales as eps^3 at fixed nu and plateaus along eps^3 / nu
/// = const paths.
std::vector<DoubleLimitEntry> double_limit_probe(const ComplexMatrix& h0, const ComplexMatrix& v,
                                                 const std::vector<double>& eps_list,
                                                 const std::vector<double>& nu_list,
                                                 double hbar = 1.0);

}  // namespace qsurv
