#pragma once

// Special functions backing every distribution computation in the toolkit:
// ln-gamma, regularized incomplete beta, normal and Student-t CDFs and
// quantiles. All functions are pure and thread-safe.

namespace mbistat::specfun {

// ln Gamma(x) for x > 0, Lanczos approximation.
// Throws std::domain_error for x <= 0.
double ln_gamma(double x);

// Regularized incomplete beta I_x(a, b) for a, b > 0 and x in [0, 1].
// Continued fraction (modified Lentz) with the symmetry switch at
// x = (a+1)/(a+b+2). Throws std::domain_error outside the domain and
// numeric_error if the fraction fails to converge.
double reg_inc_beta(double a, double b, double x);

// Student-t CDF P(T <= t) with df > 0 degrees of freedom (non-integer df
// accepted). Evaluated through reg_inc_beta with x = df/(df + t^2).
double t_cdf(double t, double df);

// Student-t density, used as the derivative in quantile refinement.
double t_pdf(double t, double df);

// Inverse of t_cdf in t: bisection bracket plus Newton refinement.
// Requires 0 < p < 1, df > 0.
double t_quantile(double p, double df);

// Standard normal CDF and density.
double norm_cdf(double z);
double norm_pdf(double z);

// Inverse of norm_cdf. Requires 0 < p < 1.
double norm_quantile(double p);

} // namespace mbistat::specfun
