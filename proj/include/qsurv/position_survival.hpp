#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "qsurv/cell_grid.hpp"
#include "qsurv/gaussian_packet.hpp"

namespace qsurv {

/// Ideal position density of the packet: pi^{-1/2} a^{-1} e^{-x^2/a^2}.
double packet_position_density_ideal(const GaussianPacket& pk, double x);

/// Momentum density pi^{-1/2} b^{-1} e^{-(p-p0)^2/b^2}. The same function
/// serves ideal and non-ideal measurements; the survival delay never enters.
double packet_momentum_density(const GaussianPacket& pk, double p);

/// Position wavefunction together with its second derivative; when the
/// derivative callable is absent it is taken by centered differences
/// (step 1e-4 * scale) with a Richardson cross-check.
struct WavefunctionC2 {
  std::function<Complex(double)> value;
  std::function<Complex(double)> second_derivative;  // may be empty
  double scale = 1.0;                                // length scale for the difference step
};

/// First-order non-ideal position density:
/// |psi|^2 + (hbar s tau / m) Im[psi(x) d^2/dx^2 conj(psi)(x)].
/// May be negative where |psi|^2 is close to zero.
double survival_position_first_order(const WavefunctionC2& psi, const SurvivalDistribution& dist,
                                     double m, double hbar, double x);

/// Same, on the Gaussian packet with the analytic second derivative.
double survival_position_first_order(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                     double x);

/// Closed form for the packet: pi^{-1/2} a^{-1} (1 + 2 l x / a^2) e^{-x^2/a^2},
/// negative for x < -a^2/(2l).
double survival_position_gaussian(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                  double x);

/// Full double-sum over momentum cells, with the exact cell-state position
/// wavefunctions <x|p,eps> = sqrt(eps/2 pi hbar) e^{ipx/hbar} sinc(eps x/2hbar):
/// P(x) = (eps/2 pi hbar) sinc^2(eps x/2hbar)
///        * sum_{p'p''} a(p') conj(a(p'')) q(w'-w'') e^{i(p'-p'')x/hbar}.
/// The grid must cover at least 6 momentum widths around p0. Integrated over
/// the whole line this recovers the captured norm (1 minus the completeness
/// residual), not exactly 1.
double survival_position_exact(const GaussianPacket& pk, const SurvivalDistribution& dist,
                               const CellGrid& grid, double x);

struct ExactPositionDensity {
  std::vector<double> values;
  double captured_norm = 0.0;   // sum |a|^2 over the grid cells
  double window_integral = 0.0; // analytic integral of the density over the x window
};

/// Batch evaluation over many x from one amplitude tabulation, with the
/// analytic integral of the density over [x_lo, x_hi].
ExactPositionDensity survival_position_exact_batch(const GaussianPacket& pk,
                                                   const SurvivalDistribution& dist,
                                                   const CellGrid& grid,
                                                   const std::vector<double>& xs, double x_lo,
                                                   double x_hi);

/// Uniformly sampled density on [x_min, x_max].
struct SampledDistribution {
  double x_min = 0.0;
  double step = 0.0;
  std::vector<double> density;
  double normalization = 1.0;

  double x(std::size_t i) const { return x_min + step * static_cast<double>(i); }
  /// Composite Simpson integral of the samples (3/8 rule on a trailing odd panel).
  double integral() const;
};

SampledDistribution sample_density(const std::function<double(double)>& density, double x_min,
                                   double x_max, std::size_t count);

struct RenormalizedDistribution {
  SampledDistribution density;
  double q = 1.0;  // mass of the positive region
};

/// Clips the density to x >= x0, divides by the retained mass Q, zeroes the
/// rest. Throws when Q <= 0.
RenormalizedDistribution renormalize_positive(const SampledDistribution& density, double x0);

struct UncertaintyProduct {
  double dx = 0.0;
  double dp = 0.0;
  double product = 0.0;
  double mean_x = 0.0;
};

/// Position-momentum uncertainty product under the survival effect.
/// use_renormalized = false gives the closed form sqrt(a^2/2 - l^2) * hbar/(sqrt(2) a);
/// true integrates the clipped renormalized density numerically.
/// Throws when l^2 >= a^2/2 (outside the formula's domain).
UncertaintyProduct uncertainty_product(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                       bool use_renormalized);

/// Dimensionless profile W(xi) = pi^{-1/2} (1 + sqrt(2 eps0) xi) e^{-xi^2};
/// equals a * survival_position_gaussian at x = a xi.
double dimensionless_position_density(double eps0, double xi);

struct TailMoment {
  double exact = 0.0;
  double asymptotic = 0.0;
};

/// n-th moment of the closed-form density over the negative region x < -a^2/2l:
/// exact via the incomplete gamma integral, plus its leading large-sigma
/// asymptotic (sigma = a^2/4l^2 > 1 required).
TailMoment negative_tail_moment(const GaussianPacket& pk, const SurvivalDistribution& dist, int n);

/// Retained mass Q of the closed-form density over x >= -a^2/2l (exact), with
/// the leading asymptotic 1 + (2/sqrt(pi)) (l/a)^3 e^{-sigma}.
TailMoment renormalization_constant(const GaussianPacket& pk, const SurvivalDistribution& dist);

}  // namespace qsurv
