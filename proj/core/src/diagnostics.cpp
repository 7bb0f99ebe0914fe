#include "adsel/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace adsel {

namespace {

// Upper-tail percentage points of the asymptotic CvM distribution
// (Anderson & Darling 1952; Csorgo & Faraway 1996). Interpolated linearly
// in log(alpha).
constexpr double kAlphas[] = {0.20, 0.15, 0.10, 0.05, 0.025, 0.01, 0.005, 0.001};
constexpr double kCrits[] = {0.24124, 0.28406, 0.34730, 0.46136,
                             0.58061, 0.74346, 0.86944, 1.16786};
constexpr int kTable = 8;

double mean_of(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

} // namespace

double cvm_critical_value(double alpha) {
    if (!(alpha > 0.0 && alpha <= 0.2)) {
        throw std::invalid_argument("cvm_critical_value: alpha must be in (0, 0.2]");
    }
    if (alpha >= kAlphas[0]) return kCrits[0];
    const double la = std::log(alpha);
    for (int i = 1; i < kTable; ++i) {
        if (alpha >= kAlphas[i]) {
            const double l0 = std::log(kAlphas[i - 1]);
            const double l1 = std::log(kAlphas[i]);
            const double t = (la - l0) / (l1 - l0);
            return kCrits[i - 1] + t * (kCrits[i] - kCrits[i - 1]);
        }
    }
    // below the table: extrapolate along the last segment
    const double l0 = std::log(kAlphas[kTable - 2]);
    const double l1 = std::log(kAlphas[kTable - 1]);
    const double t = (la - l0) / (l1 - l0);
    return kCrits[kTable - 2] + t * (kCrits[kTable - 1] - kCrits[kTable - 2]);
}

double spectral_density_zero(std::span<const double> series) {
    const std::size_t n = series.size();
    if (n < 2) {
        throw std::invalid_argument("spectral_density_zero: series too short");
    }
    const double mean = mean_of(series);
    const std::size_t max_lags = n / 6;
    std::vector<double> acov;
    acov.reserve(64);
    auto gamma_at = [&](std::size_t k) {
        double s = 0.0;
        for (std::size_t i = k; i < n; ++i) {
            s += (series[i] - mean) * (series[i - k] - mean);
        }
        return s / static_cast<double>(n);
    };
    acov.push_back(gamma_at(0));

    // lag window sized to the measured decorrelation length: at least
    // sqrt(n), extended to 3x the first lag where the autocorrelation
    // drops below 0.05. The n/6 cap keeps the window short relative to the
    // series so divergent (trending) sequences still blow up the bridge
    // statistic; white noise keeps the sqrt(n) window.
    const std::size_t base = static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(n))));
    std::size_t decorr = max_lags;
    for (std::size_t k = 1; k <= max_lags; ++k) {
        acov.push_back(gamma_at(k));
        if (acov[k] < 0.05 * acov[0]) {
            decorr = k;
            break;
        }
    }
    const std::size_t lags = std::min(max_lags, std::max(base, 3 * decorr));
    for (std::size_t k = acov.size(); k <= lags; ++k) acov.push_back(gamma_at(k));

    double s0 = acov[0];
    for (std::size_t k = 1; k <= lags; ++k) {
        const double w = 1.0 - static_cast<double>(k) / static_cast<double>(lags + 1);
        s0 += 2.0 * w * acov[k];
    }
    return s0;
}

HeidelbergerResult heidelberger_welch(std::span<const double> series, double alpha) {
    const std::size_t n_total = series.size();
    if (n_total < 100) {
        throw std::invalid_argument("heidelberger_welch: need at least 100 samples");
    }
    const double crit = cvm_critical_value(alpha);

    const auto [min_it, max_it] = std::minmax_element(series.begin(), series.end());
    if (*min_it == *max_it) {
        throw std::runtime_error("heidelberger_welch: constant series (zero spectral density)");
    }
    const std::size_t half = n_total / 2;
    const double s0 = spectral_density_zero(series.subspan(n_total - half, half));
    if (!(s0 > 0.0)) {
        throw std::runtime_error("heidelberger_welch: zero spectral density (degenerate series)");
    }

    HeidelbergerResult result;
    for (int stage = 0; stage <= 5; ++stage) {
        const std::size_t start = (n_total * static_cast<std::size_t>(stage)) / 10;
        const auto sub = series.subspan(start);
        const std::size_t n = sub.size();
        const double mean = mean_of(sub);

        double cvm = 0.0;
        double cum = 0.0;
        for (std::size_t k = 1; k <= n; ++k) {
            cum += sub[k - 1];
            const double bridge = cum - static_cast<double>(k) * mean;
            cvm += bridge * bridge;
        }
        cvm /= static_cast<double>(n) * static_cast<double>(n) * s0;

        result.cvm_statistic = cvm;
        result.kept_fraction = static_cast<double>(n) / static_cast<double>(n_total);
        if (cvm < crit) {
            result.stationary = true;
            return result;
        }
    }
    result.stationary = false;
    return result;
}

} // namespace adsel
