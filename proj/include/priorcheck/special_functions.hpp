#pragma once

namespace priorcheck {

// Scalar special functions used by the score formulas. All are pure and
// thread-safe. Domain violations throw std::domain_error.

// ln Gamma(x), x > 0. Lanczos approximation, ~1e-14 relative accuracy.
double log_gamma(double x);

// Digamma psi(x), x > 0. Recurrence shift plus asymptotic series.
double digamma(double x);

// ln Beta(a, b) = ln Gamma(a) + ln Gamma(b) - ln Gamma(a+b).
double log_beta(double a, double b);

// Standard normal CDF. Accurate in both tails (erfc-based, no underflow
// until the result itself underflows around |x| ~ 38).
double std_normal_cdf(double x);

// Standard normal quantile (inverse CDF), p in (0, 1). Wichura's AS241.
double std_normal_quantile(double p);

}  // namespace priorcheck
