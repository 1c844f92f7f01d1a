#pragma once

#include <vector>

#include "logroots/poisson_limit.hpp"

namespace logroots {

/// psi(x) = Gamma'(x) / Gamma(x) for x > 0.
double digamma(double x);

/// C(beta) = lim_n { sum_{m<=n} psi(m beta) - (n + 1/2 - 1/(2 beta)) log(n beta) + n }.
/// The sequence is evaluated at n = 16, 32, 64, ... and extrapolated in 1/n
/// (Romberg table) until successive diagonal entries differ by less than tol.
double barnes_C(double beta, double tol = 1e-10);

/// E L_alpha from the Barnes-constant formula. The formula has a removable
/// singularity at alpha = 1/2; within 5e-4 of it the value is obtained from
/// symmetric evaluations at 1/2 +- h (h = 0.01, 0.005, 0.0025) with
/// Richardson extrapolation, expanded to second order.
double expected_segments_closed(double alpha);

/// E L_alpha from the integral representation, by adaptive Gauss-Kronrod
/// quadrature after the substitution u = e^-t.
double expected_segments_integral(double alpha, double tol = 1e-10);

/// P[L_alpha = 2] = 1 - alpha.
double prob_two_segments(double alpha);

/// Limit of the expected number of real roots for tail balance c and sign
/// probability p: (2c(1-c) + 1/2)(E L_alpha - 2) + 2(p + c - 2pc) + 1.
double expected_real_roots(double alpha, double c, double p);

struct Alpha0Distribution {
  Parity parity = Parity::Even;
  std::vector<int> support;
  std::vector<double> probs;

  double mean() const;
};

/// Limit law of the number of real roots when log|xi| is slowly varying.
Alpha0Distribution alpha0_real_distribution(double c, double p, Parity parity);

}  // namespace logroots
