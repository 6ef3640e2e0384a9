#include "qsurv/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "qsurv/linalg.hpp"

namespace qsurv {

namespace {

// Nodes are the roots of P_n, found by Newton iteration from the Chebyshev
// estimate; weights w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
GaussLegendre compute_gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("GaussLegendre: order must be >= 1");
  GaussLegendre rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

std::map<int, GaussLegendre> g_rules;
std::mutex g_rules_mutex;

template <typename T>
T integrate_impl(const std::function<T(double)>& f, double a, double b, int order) {
  const GaussLegendre& rule = GaussLegendre::order(order);
  const double mid = 0.5 * (a + b);
  const double hw = 0.5 * (b - a);
  std::vector<T> terms(rule.nodes.size());
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    terms[i] = rule.weights[i] * f(mid + hw * rule.nodes[i]);
  }
  return hw * pairwise_sum(terms.data(), terms.size());
}

template <typename T>
T integrate_panels_impl(const std::function<T(double)>& f, double a, double b, int panels,
                        int order) {
  if (panels < 1) throw std::invalid_argument("integrate_panels: panels must be >= 1");
  const double h = (b - a) / panels;
  std::vector<T> parts(static_cast<std::size_t>(panels));
  for (int i = 0; i < panels; ++i) {
    parts[static_cast<std::size_t>(i)] = integrate_impl<T>(f, a + i * h, a + (i + 1) * h, order);
  }
  return pairwise_sum(parts.data(), parts.size());
}

template <typename T>
void adaptive_step(const std::function<T(double)>& f, double a, double b, double abs_tol,
                   int order, int depth, int max_depth, T coarse, T& value, double& err,
                   bool& converged) {
  const double mid = 0.5 * (a + b);
  const T left = integrate_impl<T>(f, a, mid, order);
  const T right = integrate_impl<T>(f, mid, b, order);
  const T fine = left + right;
  const double diff = std::abs(fine - coarse);
  if (diff <= abs_tol || depth >= max_depth) {
    value += fine;
    err += diff;
    if (diff > abs_tol) converged = false;
    return;
  }
  adaptive_step(f, a, mid, 0.5 * abs_tol, order, depth + 1, max_depth, left, value, err, converged);
  adaptive_step(f, mid, b, 0.5 * abs_tol, order, depth + 1, max_depth, right, value, err,
                converged);
}

}  // namespace

const GaussLegendre& GaussLegendre::order(int n) {
  std::lock_guard<std::mutex> lock(g_rules_mutex);
  auto it = g_rules.find(n);
  if (it == g_rules.end()) it = g_rules.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double integrate(const std::function<double(double)>& f, double a, double b, int order) {
  return integrate_impl<double>(f, a, b, order);
}

std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, int order) {
  return integrate_impl<std::complex<double>>(f, a, b, order);
}

double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int order) {
  return integrate_panels_impl<double>(f, a, b, panels, order);
}

std::complex<double> integrate_panels_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, int panels, int order) {
  return integrate_panels_impl<std::complex<double>>(f, a, b, panels, order);
}

AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int order, int max_depth) {
  AdaptiveResult res;
  res.converged = true;
  const double coarse = integrate_impl<double>(f, a, b, order);
  adaptive_step<double>(f, a, b, abs_tol, order, 0, max_depth, coarse, res.value,
                        res.error_estimate, res.converged);
  return res;
}

AdaptiveResultC integrate_adaptive_c(const std::function<std::complex<double>(double)>& f,
                                     double a, double b, double abs_tol, int order,
                                     int max_depth) {
  AdaptiveResultC res;
  res.converged = true;
  const std::complex<double> coarse = integrate_impl<std::complex<double>>(f, a, b, order);
  adaptive_step<std::complex<double>>(f, a, b, abs_tol, order, 0, max_depth, coarse, res.value,
                                      res.error_estimate, res.converged);
  return res;
}

}  // namespace qsurv
