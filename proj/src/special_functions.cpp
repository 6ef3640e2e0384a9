#include "qsurv/special_functions.hpp"

#include <cmath>
#include <stdexcept>

namespace qsurv {

namespace {

constexpr int kMaxIter = 500;
constexpr double kRelEps = 1e-15;

// Regularized lower gamma P(a, x) by its power series, x < a + 1.
double lower_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double term = sum;
  for (int n = 0; n < kMaxIter; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::abs(term) < std::abs(sum) * kRelEps) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("upper_incomplete_gamma: series did not converge");
}

// Regularized upper gamma Q(a, x) by the modified Lentz continued fraction,
// x >= a + 1.
double upper_continued_fraction(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIter; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < kRelEps) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("upper_incomplete_gamma: continued fraction did not converge");
}

}  // namespace

double upper_incomplete_gamma(double lambda, double sigma) {
  if (!(lambda > 0.0)) {
    throw std::invalid_argument("upper_incomplete_gamma: lambda must be positive");
  }
  if (sigma < 0.0) {
    throw std::invalid_argument("upper_incomplete_gamma: sigma must be nonnegative");
  }
  const double gamma_complete = std::tgamma(lambda);
  if (sigma == 0.0) return gamma_complete;
  if (sigma < lambda + 1.0) {
    return gamma_complete * (1.0 - lower_series(lambda, sigma));
  }
  return gamma_complete * upper_continued_fraction(lambda, sigma);
}

}  // namespace qsurv
