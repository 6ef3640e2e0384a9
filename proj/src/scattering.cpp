#include "qsurv/scattering.hpp"

#include <cmath>
#include <limits>

namespace qsurv {

namespace {

ComplexMatrix propagator_from(const RealVector& energies, const ComplexMatrix& states, double t,
                              double hbar) {
  ComplexVector phases(energies.size());
  for (Eigen::Index k = 0; k < energies.size(); ++k) {
    phases(k) = std::exp(Complex(0.0, -energies(k) * t / hbar));
  }
  return states * phases.asDiagonal() * states.adjoint();
}

}  // namespace

ScatteringModel::ScatteringModel(ComplexMatrix h0, ComplexMatrix hi, double nu, double hbar,
                                 double tol)
    : h0_(std::move(h0)), hi_(std::move(hi)), nu_(nu), hbar_(hbar) {
  require_same_dim(h0_, hi_, "ScatteringModel");
  require_hermitian(h0_, tol, "ScatteringModel: H0");
  require_hermitian(hi_, tol, "ScatteringModel: HI");
  if (!(nu_ > 0.0)) throw std::invalid_argument("ScatteringModel: nu must be positive");
  if (!(hbar_ > 0.0)) throw std::invalid_argument("ScatteringModel: hbar must be positive");
  h_ = h0_ + hi_;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es0(h0_);
  free_energies_ = es0.eigenvalues();
  free_states_ = es0.eigenvectors();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h_);
  full_energies_ = es.eigenvalues();
  full_states_ = es.eigenvectors();
}

double ScatteringModel::default_nu(const ComplexMatrix& h0, const ComplexMatrix& hi, double hbar) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h0 + hi, Eigen::EigenvaluesOnly);
  const double spread = es.eigenvalues().maxCoeff() - es.eigenvalues().minCoeff();
  return 1e-3 * spread / hbar;
}

ComplexMatrix ScatteringModel::full_propagator(double t) const {
  return propagator_from(full_energies_, full_states_, t, hbar_);
}

ComplexMatrix ScatteringModel::free_propagator(double t) const {
  return propagator_from(free_energies_, free_states_, t, hbar_);
}

ComplexVector scattered_state(const ScatteringModel& model, Eigen::Index lambda) {
  if (lambda < 0 || lambda >= model.dim()) {
    throw std::out_of_range("scattered_state: eigenvalue index out of range");
  }
  const Complex reg(0.0, model.hbar() * model.nu());
  ComplexMatrix a = -model.h();
  a.diagonal().array() += model.free_energy(lambda) + reg;
  const ComplexVector rhs = reg * model.free_states().col(lambda);
  Eigen::PartialPivLU<ComplexMatrix> lu(a);
  const ComplexVector psi = lu.solve(rhs);
  if ((a * psi - rhs).norm() > 1e-8 * rhs.norm()) {
    throw std::runtime_error("scattered_state: resolvent solve is singular");
  }
  return psi;
}

ComplexVector lippmann_schwinger_iterate(const ScatteringModel& model, Eigen::Index lambda,
                                         int max_iter, double tol) {
  if (lambda < 0 || lambda >= model.dim()) {
    throw std::out_of_range("lippmann_schwinger_iterate: eigenvalue index out of range");
  }
  const ComplexVector phi = model.free_states().col(lambda);
  const double e_lambda = model.free_energy(lambda);
  const Complex reg(0.0, model.hbar() * model.nu());
  // G0 = (E - H0 + i hbar nu)^{-1}, diagonal in the free eigenbasis.
  ComplexVector g0_diag(model.dim());
  for (Eigen::Index k = 0; k < model.dim(); ++k) {
    g0_diag(k) = 1.0 / (Complex(e_lambda - model.free_energy(k), 0.0) + reg);
  }
  const ComplexMatrix& u = model.free_states();
  ComplexVector psi = phi;
  double prev_residual = std::numeric_limits<double>::infinity();
  int growth_streak = 0;
  for (int iter = 0; iter < max_iter; ++iter) {
    const ComplexVector next = phi + u * (g0_diag.asDiagonal() * (u.adjoint() * (model.hi() * psi)));
    const double residual = (next - psi).norm();
    if (residual > prev_residual) {
      if (++growth_streak >= 3) {
        throw std::runtime_error(
            "lippmann_schwinger_iterate: Born series diverges for this instance");
      }
    } else {
      growth_streak = 0;
    }
    psi = next;
    if (residual <= tol) return psi;
    prev_residual = residual;
  }
  throw std::runtime_error("lippmann_schwinger_iterate: no convergence within max_iter");
}

WaveOperators wave_operators_and_s_matrix(const ScatteringModel& model) {
  const Eigen::Index n = model.dim();
  const Complex reg(0.0, model.hbar() * model.nu());
  WaveOperators out;
  out.omega_plus.resize(n, n);
  out.omega_minus.resize(n, n);
  for (Eigen::Index lambda = 0; lambda < n; ++lambda) {
    const ComplexVector phi = model.free_states().col(lambda);
    const double e = model.free_energy(lambda);
    ComplexMatrix a_plus = -model.h();
    a_plus.diagonal().array() += e + reg;
    out.omega_plus.col(lambda) = Eigen::PartialPivLU<ComplexMatrix>(a_plus).solve(reg * phi);
    // Outgoing-wave mirror: -i hbar nu (E - H - i hbar nu)^{-1}.
    ComplexMatrix a_minus = -model.h();
    a_minus.diagonal().array() += e - reg;
    out.omega_minus.col(lambda) = Eigen::PartialPivLU<ComplexMatrix>(a_minus).solve(-reg * phi);
  }
  // Columns are images of the free eigenstates; convert to operators on the
  // original basis.
  out.omega_plus = out.omega_plus * model.free_states().adjoint();
  out.omega_minus = out.omega_minus * model.free_states().adjoint();
  out.s_matrix = out.omega_minus.adjoint() * out.omega_plus;
  const ComplexMatrix id = ComplexMatrix::Identity(n, n);
  out.isometry_defect_plus = max_abs(out.omega_plus.adjoint() * out.omega_plus - id);
  out.isometry_defect_minus = max_abs(out.omega_minus.adjoint() * out.omega_minus - id);
  out.unitarity_defect = max_abs(out.s_matrix.adjoint() * out.s_matrix - id);
  return out;
}

ComplexMatrix conditional_propagator(const ScatteringModel& model, double t_prime, double t0) {
  if (t_prime < 0.0 || t0 < 0.0) {
    throw std::invalid_argument("conditional_propagator: times must be nonnegative");
  }
  const WaveOperators ops = wave_operators_and_s_matrix(model);
  return model.free_propagator(t_prime) * ops.omega_minus.adjoint() * model.full_propagator(t0) *
         ops.omega_plus;
}

TransitionAmplitudes transition_amplitudes(const ScatteringModel& model, Eigen::Index lambda,
                                           double t) {
  const ComplexVector psi = scattered_state(model, lambda);
  const ComplexMatrix u_t = model.full_propagator(t);
  TransitionAmplitudes out;
  out.f.resize(model.dim());
  const ComplexVector evolved = u_t * psi;
  for (Eigen::Index mu = 0; mu < model.dim(); ++mu) {
    const Complex phase = std::exp(Complex(0.0, model.free_energy(mu) * t / model.hbar()));
    out.f(mu) = phase * model.free_states().col(mu).dot(evolved);
  }
  out.norm_constant = psi.squaredNorm();
  const Complex t_ll = model.free_states().col(lambda).dot(model.hi() * psi);
  out.norm_via_t_matrix = 1.0 + t_ll.imag() / (model.hbar() * model.nu());
  return out;
}

std::vector<DoubleLimitEntry> double_limit_probe(const ComplexMatrix& h0, const ComplexMatrix& v,
                                                 const std::vector<double>& eps_list,
                                                 const std::vector<double>& nu_list, double hbar) {
  std::vector<DoubleLimitEntry> table;
  table.reserve(eps_list.size() * nu_list.size() * static_cast<std::size_t>(h0.rows()));
  for (double eps : eps_list) {
    const ComplexMatrix hi = std::pow(eps, 1.5) * v;
    for (double nu : nu_list) {
      const ScatteringModel model(h0, hi, nu, hbar);
      for (Eigen::Index lambda = 0; lambda < model.dim(); ++lambda) {
        const ComplexVector psi = scattered_state(model, lambda);
        table.push_back({eps, nu, lambda, psi.squaredNorm()});
      }
    }
  }
  return table;
}

}  // namespace qsurv
