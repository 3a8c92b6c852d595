#pragma once

#include "tcdkit/types.hpp"

namespace tcd::stats {

/// Standard normal pdf.
double norm_pdf(double x);

/// Standard normal cdf. Throws std::domain_error on non-finite input.
Probability norm_cdf(double x);

/// Inverse of norm_cdf. Returns -inf/+inf at p = 0/1, throws outside [0,1].
/// Rational initial guess refined by one Halley step; round-trips with
/// norm_cdf to better than 1e-10 over p in [1e-9, 1 - 1e-9].
double norm_quantile(double p);

/// Chi-squared cdf with k degrees of freedom, x >= 0.
Probability chi2_cdf(double x, DegreesOfFreedom k);

/// Inverse of chi2_cdf for p in (0, 1).
double chi2_quantile(double p, DegreesOfFreedom k);

/// Regularized lower incomplete gamma P(a, x). Series for x < a + 1,
/// continued fraction otherwise.
double gamma_p(double a, double x);

/// Probabilists' Hermite polynomial He_k(z), k in {0..6}.
double hermite_poly(int k, double z);

/// Raw moment E[X^k] of X ~ Normal(mu, sigma2), via the recurrence
/// E[X^k] = mu E[X^{k-1}] + (k-1) sigma2 E[X^{k-2}].
double gaussian_raw_moment(double mu, double sigma2, int k);

} // namespace tcd::stats
