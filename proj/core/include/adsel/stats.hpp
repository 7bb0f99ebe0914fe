#pragma once

#include <functional>
#include <span>
#include <vector>

namespace adsel {

/// Sample Kendall rank correlation (tau-b) via merge-sort inversion
/// counting, O(n log n). Reduces to tau-a on tie-free data.
double kendall_tau_sample(std::span<const double> x, std::span<const double> y);

/// One-sample Kolmogorov-Smirnov statistic sup |F_n - F| against a given
/// CDF. The sample is copied and sorted internally.
double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf);

double mean(std::span<const double> x);
double sample_sd(std::span<const double> x);

} // namespace adsel
