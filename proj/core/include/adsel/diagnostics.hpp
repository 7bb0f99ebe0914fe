#pragma once

#include <span>

namespace adsel {

struct HeidelbergerResult {
    bool stationary = false;
    double kept_fraction = 0.0; // fraction of the series the passing stage retained
    double cvm_statistic = 0.0; // statistic of the last stage evaluated
};

/// Stationarity stage of the Heidelberger-Welch diagnostic: the spectral
/// density at zero is estimated once from the final half of the series
/// (Bartlett window), then initial 10% blocks are discarded (up to 50%)
/// until the Cramer-von Mises statistic of the standardized Brownian
/// bridge drops below the critical value at `alpha`.
///
/// Requires series.size() >= 100 and alpha in (0, 0.2]. Throws
/// std::runtime_error on a degenerate (zero-variance) series.
HeidelbergerResult heidelberger_welch(std::span<const double> series, double alpha);

/// Asymptotic critical value of the Cramer-von Mises distribution
/// (integral of the squared Brownian bridge) at upper-tail mass alpha.
double cvm_critical_value(double alpha);

/// Bartlett-window estimate of the spectral density at frequency zero,
/// lag window K = floor(sqrt(n)).
double spectral_density_zero(std::span<const double> series);

} // namespace adsel
