#pragma once

namespace qsurv {

/// Upper incomplete gamma integral from sigma to infinity of t^{lambda-1} e^{-t} dt,
/// lambda > 0, sigma >= 0. Series expansion for sigma < lambda + 1, modified
/// Lentz continued fraction otherwise; relative error <= 1e-12. Throws on
/// non-convergence.
double upper_incomplete_gamma(double lambda, double sigma);

}  // namespace qsurv
