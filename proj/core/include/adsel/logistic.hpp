#pragma once

#include <cmath>

namespace adsel {

/// Standard logistic CDF 1/(1+e^-x). Stable over the full double range
/// (no overflow for |x| up to ~700 and beyond; saturates gracefully).
inline double logistic_cdf(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    const double e = std::exp(x);
    return e / (1.0 + e);
}

/// log of the logistic CDF, stable in both tails.
inline double logistic_log_cdf(double x) {
    if (x > 0.0) {
        return -std::log1p(std::exp(-x));
    }
    return x - std::log1p(std::exp(x));
}

/// Logistic density e^-|x| / (1+e^-|x|)^2, evaluated symmetrically so the
/// tails underflow to 0 instead of losing precision through 1-F.
inline double logistic_pdf(double x) {
    const double e = std::exp(-std::abs(x));
    const double d = 1.0 + e;
    return e / (d * d);
}

/// Logistic quantile ln(u/(1-u)) for u in (0,1).
inline double logistic_quantile(double u) {
    return std::log(u) - std::log1p(-u);
}

} // namespace adsel
