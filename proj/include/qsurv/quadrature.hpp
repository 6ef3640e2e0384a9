#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qsurv {

/// Gauss-Legendre nodes/weights on [-1, 1]. Instances are cached per order.
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  static const GaussLegendre& order(int n);
};

double integrate(const std::function<double(double)>& f, double a, double b, int order = 8);
std::complex<double> integrate_c(const std::function<std::complex<double>(double)>& f, double a,
                                 double b, int order = 8);

/// Composite rule: [a, b] split into `panels` equal panels, Gauss-Legendre of
/// `order` on each. Panel contributions are combined by pairwise reduction.
double integrate_panels(const std::function<double(double)>& f, double a, double b, int panels,
                        int order = 8);
std::complex<double> integrate_panels_c(const std::function<std::complex<double>(double)>& f,
                                        double a, double b, int panels, int order = 8);

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  bool converged = false;
};

/// Recursive bisection with a Gauss-Legendre(order) vs split-in-two error
/// estimate. abs_tol is distributed over subintervals.
AdaptiveResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                                  double abs_tol, int order = 8, int max_depth = 40);

struct AdaptiveResultC {
  std::complex<double> value{0.0, 0.0};
  double error_estimate = 0.0;
  bool converged = false;
};

AdaptiveResultC integrate_adaptive_c(const std::function<std::complex<double>(double)>& f,
                                     double a, double b, double abs_tol, int order = 8,
                                     int max_depth = 40);

}  // namespace qsurv
