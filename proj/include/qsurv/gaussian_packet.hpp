#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "qsurv/linalg.hpp"
#include "qsurv/survival.hpp"

namespace qsurv {

/// Minimum-uncertainty Gaussian packet: width a, mean momentum p0, with the
/// physical constants carried alongside. b = hbar/a is the momentum width.
struct GaussianPacket {
  double a = 1.0;
  double p0 = 1.0;
  double hbar = 1.0;
  double m = 1.0;

  void validate() const {
    if (!(a > 0.0) || !(hbar > 0.0) || !(m > 0.0)) {
      throw std::invalid_argument("GaussianPacket: a, hbar, m must be positive");
    }
  }

  double width_b() const { return hbar / a; }

  Complex position_wavefunction(double x) const {
    const double amp = std::pow(std::numbers::pi, -0.25) / std::sqrt(a);
    return amp * std::exp(Complex(-0.5 * x * x / (a * a), p0 * x / hbar));
  }

  /// d^2/dx^2 of the conjugate wavefunction, analytic.
  Complex conj_wavefunction_second_derivative(double x) const {
    const Complex psi_conj = std::conj(position_wavefunction(x));
    const Complex slope(-x / (a * a), -p0 / hbar);
    return psi_conj * (slope * slope - 1.0 / (a * a));
  }

  /// Momentum-space wavefunction, real and positive for this packet.
  double momentum_wavefunction(double p) const {
    const double b = width_b();
    const double amp = std::pow(std::numbers::pi, -0.25) / std::sqrt(b);
    return amp * std::exp(-0.5 * (p - p0) * (p - p0) / (b * b));
  }
};

/// Drift length l = s tau p0 / m imparted by the survival delay.
inline double drift_length(const GaussianPacket& pk, const SurvivalDistribution& dist) {
  return dist.shape() * dist.tau() * pk.p0 / pk.m;
}

/// Dimensionless survival parameter 2 l^2 / a^2.
inline double survival_epsilon0(const GaussianPacket& pk, const SurvivalDistribution& dist) {
  const double l = drift_length(pk, dist);
  return 2.0 * l * l / (pk.a * pk.a);
}

}  // namespace qsurv
