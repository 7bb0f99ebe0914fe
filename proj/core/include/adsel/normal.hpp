#pragma once

namespace adsel {

/// Standard normal CDF via erfc (accurate deep into the left tail).
double norm_cdf(double x);

/// Standard normal density.
double norm_pdf(double x);

/// log Phi(x), switching to an asymptotic expansion below x ~ -37 where
/// erfc underflows.
double norm_log_cdf(double x);

/// Inverse Mills ratio phi(x)/Phi(x).
double norm_mills(double x);

/// Inverse standard normal CDF (Wichura's AS241, full double precision).
/// Throws std::domain_error unless p is strictly inside (0,1).
double norm_ppf(double p);

/// Log-density of N(mean, sd^2) at x.
double normal_log_density(double x, double mean, double sd);

} // namespace adsel
