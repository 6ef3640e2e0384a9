#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qsurv/quadrature.hpp"
#include "qsurv/scattering.hpp"

using namespace qsurv;
using testing::Rng;

namespace {

ComplexMatrix offdiag_coupling(Eigen::Index n, double g) {
  ComplexMatrix v = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      v(i, j) = g;
      v(j, i) = g;
    }
  }
  return v;
}

ComplexMatrix diag_h0(std::initializer_list<double> energies) {
  ComplexMatrix h = ComplexMatrix::Zero(static_cast<Eigen::Index>(energies.size()),
                                        static_cast<Eigen::Index>(energies.size()));
  Eigen::Index i = 0;
  for (double e : energies) h(i, i) = e, ++i;
  return h;
}

}  // namespace

TEST_CASE("scattered state: free theory and the defining linear system") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0, 2.1});
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  const ScatteringModel free_model(h0, zero, 1e-3);
  for (Eigen::Index lam = 0; lam < 3; ++lam) {
    const ComplexVector psi = scattered_state(free_model, lam);
    CHECK((psi - free_model.free_states().col(lam)).norm() < 1e-12);
  }

  const ScatteringModel coupled(h0, offdiag_coupling(3, 0.07), 2e-3);
  for (Eigen::Index lam = 0; lam < 3; ++lam) {
    const ComplexVector psi = scattered_state(coupled, lam);
    // (E - H + i hbar nu) psi = i hbar nu phi
    ComplexMatrix a = -coupled.h();
    a.diagonal().array() += coupled.free_energy(lam) + Complex(0.0, coupled.nu());
    const ComplexVector rhs = Complex(0.0, coupled.nu()) * coupled.free_states().col(lam);
    CHECK((a * psi - rhs).norm() < 1e-12);
  }
}

TEST_CASE("scattered state matches the damped time-integral oracle") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0});
  const ComplexMatrix hi = offdiag_coupling(2, 0.08);
  const double nu = 0.05;
  const ScatteringModel model(h0, hi, nu);
  const Eigen::Index lam = 0;

  // |Psi> = nu * integral_{-inf}^0 e^{nu t} e^{i(H - E)t/hbar} |Phi> dt,
  // damped horizon at nu * T = 24.
  const ComplexVector phi = model.free_states().col(lam);
  const double e = model.free_energy(lam);
  const double horizon = 24.0 / nu;
  ComplexVector acc = ComplexVector::Zero(2);
  const int panels = 20000;
  const double dt = horizon / panels;
  for (int k = 0; k < panels; ++k) {
    const double t = -(k + 0.5) * dt;
    const ComplexMatrix u = testing::expm_taylor(Complex(0.0, t) * (model.h() - e * ComplexMatrix::Identity(2, 2)));
    acc += std::exp(nu * t) * (u * phi) * dt;
  }
  acc *= nu;
  const ComplexVector psi = scattered_state(model, lam);
  CHECK((psi - acc).norm() < 1e-6);
}

TEST_CASE("Lippmann-Schwinger iteration: free, weak and divergent couplings") {
  const ComplexMatrix h0 = diag_h0({0.0, 0.9, 1.7});
  const ComplexMatrix zero = ComplexMatrix::Zero(3, 3);
  const ScatteringModel free_model(h0, zero, 1e-3);
  const ComplexVector psi0 = lippmann_schwinger_iterate(free_model, 1, 5, 1e-14);
  CHECK((psi0 - free_model.free_states().col(1)).norm() < 1e-14);

  const ScatteringModel weak(h0, offdiag_coupling(3, 0.01), 1e-3);
  for (Eigen::Index lam = 0; lam < 3; ++lam) {
    const ComplexVector psi = lippmann_schwinger_iterate(weak, lam, 60, 1e-14);
    CHECK((psi - scattered_state(weak, lam)).norm() < 1e-10);
  }

  // Coupling far beyond the spectral-radius bound diverges.
  const ScatteringModel strong(h0, offdiag_coupling(3, 5.0), 1e-3);
  CHECK_THROWS_AS(lippmann_schwinger_iterate(strong, 0, 200, 1e-12), std::runtime_error);
}

TEST_CASE("wave operators: free theory gives identities") {
  const ComplexMatrix h0 = diag_h0({0.2, 1.1});
  const ScatteringModel model(h0, ComplexMatrix::Zero(2, 2), 1e-4);
  const WaveOperators ops = wave_operators_and_s_matrix(model);
  CHECK(max_abs(ops.omega_plus - ComplexMatrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(ops.omega_minus - ComplexMatrix::Identity(2, 2)) < 1e-12);
  CHECK(max_abs(ops.s_matrix - ComplexMatrix::Identity(2, 2)) < 1e-12);
  CHECK(ops.unitarity_defect < 1e-13);
}

TEST_CASE("wave operators: outgoing resolvent matches the damped quadrature of its integral") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0});
  const ComplexMatrix hi = offdiag_coupling(2, 0.06);
  const double nu = 0.04;
  const ScatteringModel model(h0, hi, nu);
  const Eigen::Index lam = 1;

  // Omega_minus |Phi> = nu * integral_0^inf e^{-nu t} e^{i(H - E)t/hbar} |Phi> dt.
  const ComplexVector phi = model.free_states().col(lam);
  const double e = model.free_energy(lam);
  ComplexVector acc = ComplexVector::Zero(2);
  const double horizon = 24.0 / nu;
  const int panels = 20000;
  const double dt = horizon / panels;
  for (int k = 0; k < panels; ++k) {
    const double t = (k + 0.5) * dt;
    const ComplexMatrix u =
        testing::expm_taylor(Complex(0.0, t) * (model.h() - e * ComplexMatrix::Identity(2, 2)));
    acc += std::exp(-nu * t) * (u * phi) * dt;
  }
  acc *= nu;
  const WaveOperators ops = wave_operators_and_s_matrix(model);
  CHECK((ops.omega_minus * phi - acc).norm() < 1e-6);
}

TEST_CASE("unitarity defect decreases monotonically with increasing damping") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0});
  const ComplexMatrix hi = offdiag_coupling(2, 1e-4);
  const double scale = 1.0;  // spectral gap over hbar
  std::vector<double> defects;
  for (double nu : {1e-4 * scale, 1e-3 * scale, 1e-2 * scale, 1e-1 * scale}) {
    const ScatteringModel model(h0, hi, nu);
    defects.push_back(wave_operators_and_s_matrix(model).unitarity_defect);
  }
  for (std::size_t i = 1; i < defects.size(); ++i) CHECK(defects[i] < defects[i - 1]);
  CHECK(defects.front() < 1e-6);
}

TEST_CASE("off-shell S-matrix elements fade as nu -> 0") {
  const ComplexMatrix h0 = diag_h0({0.0, 0.7, 1.6});
  const ComplexMatrix hi = offdiag_coupling(3, 1e-3);
  double prev = 1.0;
  for (double nu : {1e-1, 1e-2, 1e-3}) {
    const WaveOperators ops = wave_operators_and_s_matrix(ScatteringModel(h0, hi, nu));
    double off = 0.0;
    for (Eigen::Index i = 0; i < 3; ++i) {
      for (Eigen::Index j = 0; j < 3; ++j) {
        if (i != j) off = std::max(off, std::abs(ops.s_matrix(i, j)));
      }
    }
    CHECK(off < prev);
    prev = off;
  }
}

TEST_CASE("conditional propagator: free limit and t0 = 0 limit") {
  const ComplexMatrix h0 = diag_h0({0.0, 0.8, 1.9});
  const ScatteringModel free_model(h0, ComplexMatrix::Zero(3, 3), 1e-3);
  const double tp = 0.7, t0 = 1.3;
  const ComplexMatrix k_free = conditional_propagator(free_model, tp, t0);
  const ComplexMatrix expected = testing::expm_taylor(Complex(0.0, -(tp + t0)) * h0);
  CHECK(max_abs(k_free - expected) < 1e-10);

  const ScatteringModel coupled(h0, offdiag_coupling(3, 0.02), 1e-3);
  const WaveOperators ops = wave_operators_and_s_matrix(coupled);
  const ComplexMatrix k0 = conditional_propagator(coupled, tp, 0.0);
  CHECK(max_abs(k0 - coupled.free_propagator(tp) * ops.s_matrix) < 1e-12);

  // Unitarity defect of the composite tracks the S defect.
  const ComplexMatrix k = conditional_propagator(coupled, tp, t0);
  const double defect = max_abs(k.adjoint() * k - ComplexMatrix::Identity(3, 3));
  const double s_defect =
      max_abs(ops.s_matrix.adjoint() * ops.s_matrix - ComplexMatrix::Identity(3, 3));
  // Conjugating with the isometry-defective wave operators can add at most
  // the omega defects on top.
  CHECK(defect <= s_defect + ops.isometry_defect_plus + ops.isometry_defect_minus + 1e-12);
}

TEST_CASE("transition amplitudes: free theory, time constancy and the T-matrix identity") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0, 2.3});
  const ScatteringModel free_model(h0, ComplexMatrix::Zero(3, 3), 1e-3);
  const TransitionAmplitudes free_t = transition_amplitudes(free_model, 1, 0.6);
  for (Eigen::Index mu = 0; mu < 3; ++mu) {
    CHECK(std::abs(free_t.f(mu) - (mu == 1 ? Complex(1, 0) : Complex(0, 0))) < 1e-12);
  }
  CHECK(free_t.norm_constant == doctest::Approx(1.0).epsilon(1e-12));

  Rng rng(91);
  ComplexMatrix hi = testing::random_hermitian(rng, 3, 0.05);
  const ScatteringModel model(h0, hi, 2e-3);
  for (Eigen::Index lam = 0; lam < 3; ++lam) {
    const double n0 = transition_amplitudes(model, lam, 0.0).norm_constant;
    for (double t : {1.0, 7.0}) {
      const double nt = transition_amplitudes(model, lam, t).norm_constant;
      CHECK(std::abs(nt - n0) < 1e-10);
    }
    const TransitionAmplitudes at0 = transition_amplitudes(model, lam, 0.0);
    CHECK(std::abs(at0.norm_constant - at0.norm_via_t_matrix) < 1e-10);

    // f_{mu lambda}(0) = delta + T / (E_lam - E_mu + i hbar nu).
    const ComplexVector psi = scattered_state(model, lam);
    for (Eigen::Index mu = 0; mu < 3; ++mu) {
      const Complex t_mu = model.free_states().col(mu).dot(model.hi() * psi);
      const Complex expected =
          (mu == lam ? Complex(1, 0) : Complex(0, 0)) +
          t_mu / (Complex(model.free_energy(lam) - model.free_energy(mu), model.nu()));
      CHECK(std::abs(at0.f(mu) - expected) < 1e-10);
    }
  }
}

TEST_CASE("double limit probe: cubic scaling at fixed nu and plateau along eps^3 = c nu") {
  const ComplexMatrix h0 = diag_h0({0.0, 0.7, 1.3});
  ComplexMatrix v(3, 3);
  v.setZero();
  v(0, 1) = v(1, 0) = 1.0;
  v(1, 2) = v(2, 1) = 1.0;
  v(0, 2) = v(2, 0) = 0.5;

  const std::vector<double> eps_list{0.04, 0.02, 0.01, 0.005};
  const auto table = double_limit_probe(h0, v, eps_list, {0.1});
  // Rows come out grouped by eps; check lambda = 0 halving ratios near 8.
  std::vector<double> dev;
  for (const DoubleLimitEntry& e : table) {
    if (e.lambda == 0) dev.push_back(std::abs(e.n_lambda - 1.0));
  }
  REQUIRE(dev.size() == eps_list.size());
  for (std::size_t i = 1; i < dev.size(); ++i) {
    CHECK(dev[i - 1] / dev[i] > 7.0);
    CHECK(dev[i - 1] / dev[i] < 9.0);
  }

  // Pre-scaled zero interaction: N = 1 exactly.
  const auto zero_table = double_limit_probe(h0, ComplexMatrix::Zero(3, 3), {0.1}, {0.05});
  for (const DoubleLimitEntry& e : zero_table) {
    CHECK(e.n_lambda == doctest::Approx(1.0).epsilon(1e-12));
  }

  // Along eps^3 = 8 nu the deviation stays put instead of fading.
  std::vector<double> plateau;
  for (const auto& [eps, nu] : std::vector<std::pair<double, double>>{
           {0.1, 1.25e-4}, {0.05, 1.5625e-5}, {0.025, 1.953125e-6}}) {
    const auto t = double_limit_probe(h0, v, {eps}, {nu});
    plateau.push_back(std::abs(t.front().n_lambda - 1.0));
  }
  CHECK(plateau[2] > 0.5 * plateau[0]);
  CHECK(plateau[2] < 2.0 * plateau[0]);
}

TEST_CASE("model validation and default damping") {
  const ComplexMatrix h0 = diag_h0({0.0, 1.0});
  ComplexMatrix skew(2, 2);
  skew << Complex(0, 0), Complex(0.1, 0.05), Complex(0.1, 0), Complex(0, 0);
  CHECK_THROWS_AS(ScatteringModel(h0, skew, 1e-3), std::invalid_argument);
  CHECK_THROWS_AS(ScatteringModel(h0, ComplexMatrix::Zero(2, 2), 0.0), std::invalid_argument);

  const double nu = ScatteringModel::default_nu(h0, offdiag_coupling(2, 0.1));
  CHECK(nu == doctest::Approx(1e-3 * std::sqrt(1.0 + 0.04)).epsilon(1e-10));
}
