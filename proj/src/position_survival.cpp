#include "qsurv/position_survival.hpp"

#include <cmath>
#include <numbers>

#include "qsurv/quadrature.hpp"
#include "qsurv/special_functions.hpp"

namespace qsurv {

namespace {

constexpr double kInvSqrtPi = 0.5641895835477562869;  // pi^{-1/2}

Complex second_derivative(const WavefunctionC2& psi, double x) {
  if (psi.second_derivative) return psi.second_derivative(x);
  // Centered differences at h and h/2, Richardson-combined to fourth order.
  const double h = 1e-4 * psi.scale;
  const auto d2 = [&](double step) {
    return (psi.value(x + step) - 2.0 * psi.value(x) + psi.value(x - step)) / (step * step);
  };
  const Complex coarse = d2(h);
  const Complex fine = d2(0.5 * h);
  return (4.0 * fine - coarse) / 3.0;
}

}  // namespace

double packet_position_density_ideal(const GaussianPacket& pk, double x) {
  pk.validate();
  return kInvSqrtPi / pk.a * std::exp(-x * x / (pk.a * pk.a));
}

double packet_momentum_density(const GaussianPacket& pk, double p) {
  pk.validate();
  const double b = pk.width_b();
  const double d = (p - pk.p0) / b;
  return kInvSqrtPi / b * std::exp(-d * d);
}

double survival_position_first_order(const WavefunctionC2& psi, const SurvivalDistribution& dist,
                                     double m, double hbar, double x) {
  const Complex value = psi.value(x);
  const Complex dd_conj = std::conj(second_derivative(psi, x));
  const double correction = (hbar * dist.shape() * dist.tau() / m) * (value * dd_conj).imag();
  return std::norm(value) + correction;
}

double survival_position_first_order(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                     double x) {
  pk.validate();
  const Complex value = pk.position_wavefunction(x);
  const Complex dd_conj = pk.conj_wavefunction_second_derivative(x);
  const double correction =
      (pk.hbar * dist.shape() * dist.tau() / pk.m) * (value * dd_conj).imag();
  return std::norm(value) + correction;
}

double survival_position_gaussian(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                  double x) {
  pk.validate();
  const double l = drift_length(pk, dist);
  const double a2 = pk.a * pk.a;
  return kInvSqrtPi / pk.a * (1.0 + 2.0 * l * x / a2) * std::exp(-x * x / a2);
}

namespace {

struct ExactKernel {
  std::vector<double> centers;
  ComplexVector amplitudes;
  ComplexMatrix q;  // q(w_i - w_j), Hermitian
  double epsilon = 0.0;
  double hbar = 1.0;
};

ExactKernel build_exact_kernel(const GaussianPacket& pk, const SurvivalDistribution& dist,
                               const CellGrid& grid) {
  pk.validate();
  if (grid.kind() != GridKind::momentum || grid.dims() != 1) {
    throw std::invalid_argument("survival_position_exact: need a 1D momentum grid");
  }
  const double b = pk.width_b();
  const double reach = grid.epsilon() * grid.half_extent() + 0.5 * grid.epsilon();
  if (reach < pk.p0 + 6.0 * b || -reach > pk.p0 - 6.0 * b) {
    throw std::invalid_argument(
        "survival_position_exact: grid does not cover 6 momentum widths around p0");
  }
  ExactKernel k;
  k.epsilon = grid.epsilon();
  k.hbar = pk.hbar;
  const int half = grid.half_extent();
  const auto psi_p = [&](double p) { return Complex(pk.momentum_wavefunction(p), 0.0); };
  const CellAmplitudes amps = tabulate_amplitudes(psi_p, grid, {});
  const Eigen::Index n = static_cast<Eigen::Index>(amps.values.size());
  k.centers.resize(static_cast<std::size_t>(n));
  k.amplitudes.resize(n);
  for (int i = -half; i <= half; ++i) {
    k.centers[static_cast<std::size_t>(i + half)] = grid.center(i);
    k.amplitudes(i + half) = amps.values[static_cast<std::size_t>(i + half)];
  }
  k.q.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double wi = k.centers[static_cast<std::size_t>(i)] *
                      k.centers[static_cast<std::size_t>(i)] / (2.0 * pk.m * pk.hbar);
    for (Eigen::Index j = 0; j < n; ++j) {
      const double wj = k.centers[static_cast<std::size_t>(j)] *
                        k.centers[static_cast<std::size_t>(j)] / (2.0 * pk.m * pk.hbar);
      k.q(i, j) = q_factor(dist, wi - wj);
    }
  }
  return k;
}

double sinc(double z) { return z == 0.0 ? 1.0 : std::sin(z) / z; }

double evaluate_exact(const ExactKernel& k, double x) {
  const Eigen::Index n = k.amplitudes.size();
  ComplexVector u(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    u(i) = k.amplitudes(i) *
           std::exp(Complex(0.0, k.centers[static_cast<std::size_t>(i)] * x / k.hbar));
  }
  const Complex total = (u.transpose() * (k.q * u.conjugate())).value();
  const double window = sinc(0.5 * k.epsilon * x / k.hbar);
  return k.epsilon / (2.0 * std::numbers::pi * k.hbar) * window * window * total.real();
}

// Integral over [lo, hi] of sinc^2(c x) e^{i d x}, by adaptive quadrature of
// the smooth scalar kernel (cheap next to the double sum itself).
Complex window_kernel_integral(double c, double d, double lo, double hi) {
  const auto f = [&](double x) {
    const double s = sinc(c * x);
    return Complex(s * s, 0.0) * std::exp(Complex(0.0, d * x));
  };
  return integrate_adaptive_c(f, lo, hi, 1e-13).value;
}

}  // namespace

double survival_position_exact(const GaussianPacket& pk, const SurvivalDistribution& dist,
                               const CellGrid& grid, double x) {
  return evaluate_exact(build_exact_kernel(pk, dist, grid), x);
}

ExactPositionDensity survival_position_exact_batch(const GaussianPacket& pk,
                                                   const SurvivalDistribution& dist,
                                                   const CellGrid& grid,
                                                   const std::vector<double>& xs, double x_lo,
                                                   double x_hi) {
  const ExactKernel k = build_exact_kernel(pk, dist, grid);
  ExactPositionDensity out;
  out.values.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out.values[i] = evaluate_exact(k, xs[i]);
  out.captured_norm = k.amplitudes.squaredNorm();

  // The x integral acts only on sinc^2 e^{i dp x / hbar}; the kernel depends
  // on the cell offset alone, so one integral per offset suffices.
  const Eigen::Index n = k.amplitudes.size();
  const double c = 0.5 * k.epsilon / k.hbar;
  std::vector<Complex> offset_integral(static_cast<std::size_t>(2 * n - 1));
  for (Eigen::Index off = -(n - 1); off <= n - 1; ++off) {
    offset_integral[static_cast<std::size_t>(off + n - 1)] =
        window_kernel_integral(c, k.epsilon * static_cast<double>(off) / k.hbar, x_lo, x_hi);
  }
  Complex total(0.0, 0.0);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      total += k.amplitudes(i) * std::conj(k.amplitudes(j)) * k.q(i, j) *
               offset_integral[static_cast<std::size_t>(i - j + n - 1)];
    }
  }
  out.window_integral = k.epsilon / (2.0 * std::numbers::pi * k.hbar) * total.real();
  return out;
}

double SampledDistribution::integral() const {
  const std::size_t n = density.size();
  if (n < 2) return 0.0;
  const std::size_t intervals = n - 1;
  double total = 0.0;
  std::size_t simpson_end = intervals;  // index of the last node of the Simpson part
  if (intervals % 2 != 0) {
    if (intervals < 3) return 0.5 * step * (density[0] + density[1]);
    simpson_end = intervals - 3;
  }
  for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
    total += step / 3.0 * (density[i] + 4.0 * density[i + 1] + density[i + 2]);
  }
  if (simpson_end != intervals) {
    // Simpson 3/8 on the trailing three intervals.
    const std::size_t j = simpson_end;
    total += 3.0 * step / 8.0 *
             (density[j] + 3.0 * density[j + 1] + 3.0 * density[j + 2] + density[j + 3]);
  }
  return total;
}

SampledDistribution sample_density(const std::function<double(double)>& density, double x_min,
                                   double x_max, std::size_t count) {
  if (count < 2 || !(x_max > x_min)) {
    throw std::invalid_argument("sample_density: need x_max > x_min and at least two samples");
  }
  SampledDistribution out;
  out.x_min = x_min;
  out.step = (x_max - x_min) / static_cast<double>(count - 1);
  out.density.resize(count);
  for (std::size_t i = 0; i < count; ++i) out.density[i] = density(out.x(i));
  return out;
}

RenormalizedDistribution renormalize_positive(const SampledDistribution& density, double x0) {
  SampledDistribution clipped = density;
  for (std::size_t i = 0; i < clipped.density.size(); ++i) {
    if (clipped.x(i) < x0) clipped.density[i] = 0.0;
  }
  const double q = clipped.integral();
  if (q <= 0.0) {
    throw std::invalid_argument("renormalize_positive: retained mass is not positive");
  }
  for (double& v : clipped.density) v /= q;
  clipped.normalization = q;
  return {std::move(clipped), q};
}

namespace {

struct RenormalizedMoments {
  double q = 1.0;
  double mean = 0.0;
  double second = 0.0;
};

// Adaptive quadrature of the clipped closed-form density and its first two
// moments over [x0, 12a].
RenormalizedMoments renormalized_moments(const GaussianPacket& pk,
                                         const SurvivalDistribution& dist) {
  const double l = drift_length(pk, dist);
  const double a = pk.a;
  const auto p_raw = [&](double x) { return survival_position_gaussian(pk, dist, x); };
  const double lo = (l > 0.0) ? -a * a / (2.0 * l) : -12.0 * a;
  const double hi = 12.0 * a;
  const double tol = 1e-13;
  RenormalizedMoments out;
  out.q = integrate_adaptive(p_raw, lo, hi, tol).value;
  const double m1 = integrate_adaptive([&](double x) { return x * p_raw(x); }, lo, hi, tol).value;
  const double m2 =
      integrate_adaptive([&](double x) { return x * x * p_raw(x); }, lo, hi, tol).value;
  out.mean = m1 / out.q;
  out.second = m2 / out.q;
  return out;
}

}  // namespace

UncertaintyProduct uncertainty_product(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                       bool use_renormalized) {
  pk.validate();
  const double l = drift_length(pk, dist);
  if (l < 0.0) {
    throw std::invalid_argument("uncertainty_product: negative drift length (p0 < 0)");
  }
  const double a2 = pk.a * pk.a;
  if (l * l >= 0.5 * a2) {
    throw std::invalid_argument("uncertainty_product: l^2 >= a^2/2, outside the formula domain");
  }
  UncertaintyProduct out;
  out.dp = pk.hbar / (std::sqrt(2.0) * pk.a);
  if (use_renormalized) {
    const RenormalizedMoments m = renormalized_moments(pk, dist);
    out.mean_x = m.mean;
    out.dx = std::sqrt(m.second - m.mean * m.mean);
  } else {
    out.mean_x = l;
    out.dx = std::sqrt(0.5 * a2 - l * l);
  }
  out.product = out.dx * out.dp;
  return out;
}

double dimensionless_position_density(double eps0, double xi) {
  if (eps0 < 0.0) {
    throw std::invalid_argument("dimensionless_position_density: eps0 must be nonnegative");
  }
  return kInvSqrtPi * (1.0 + std::sqrt(2.0 * eps0) * xi) * std::exp(-xi * xi);
}

namespace {

double require_sigma(const GaussianPacket& pk, const SurvivalDistribution& dist) {
  const double l = drift_length(pk, dist);
  if (!(l > 0.0)) {
    throw std::invalid_argument("tail moments: need positive drift length l");
  }
  const double sigma = pk.a * pk.a / (4.0 * l * l);
  if (!(sigma > 1.0)) {
    throw std::invalid_argument("tail moments: sigma = a^2/4l^2 must exceed 1");
  }
  return sigma;
}

}  // namespace

TailMoment negative_tail_moment(const GaussianPacket& pk, const SurvivalDistribution& dist,
                                int n) {
  if (n < 0 || n > 2) throw std::invalid_argument("negative_tail_moment: n must be 0, 1 or 2");
  const double sigma = require_sigma(pk, dist);
  const double a = pk.a;
  const double sign = (n % 2 == 0) ? 1.0 : -1.0;
  const double a_pow = std::pow(a, n);
  TailMoment out;
  out.exact = sign * a_pow / (2.0 * std::sqrt(std::numbers::pi)) *
              (upper_incomplete_gamma((n + 1) / 2.0, sigma) -
               upper_incomplete_gamma((n + 2) / 2.0, sigma) / std::sqrt(sigma));
  out.asymptotic = -sign * a_pow / (4.0 * std::sqrt(std::numbers::pi)) *
                   std::pow(sigma, (n - 3) / 2.0) * std::exp(-sigma);
  return out;
}

TailMoment renormalization_constant(const GaussianPacket& pk, const SurvivalDistribution& dist) {
  const double sigma = require_sigma(pk, dist);
  const double l = drift_length(pk, dist);
  const TailMoment tail = negative_tail_moment(pk, dist, 0);
  TailMoment out;
  out.exact = 1.0 - tail.exact;
  out.asymptotic = 1.0 + 2.0 / std::sqrt(std::numbers::pi) * std::pow(l / pk.a, 3.0) *
                             std::exp(-sigma);
  return out;
}

}  // namespace qsurv
