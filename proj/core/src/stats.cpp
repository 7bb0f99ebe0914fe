#include "adsel/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace adsel {

namespace {

// Counts exchanges a merge sort performs to order `v`; equals the number
// of discordant-index pairs.
std::uint64_t merge_count(std::vector<double>& v, std::vector<double>& scratch,
                          std::size_t lo, std::size_t hi) {
    if (hi - lo < 2) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t count = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
    std::size_t i = lo, j = mid, k = lo;
    while (i < mid && j < hi) {
        if (v[j] < v[i]) {
            scratch[k++] = v[j++];
            count += mid - i;
        } else {
            scratch[k++] = v[i++];
        }
    }
    while (i < mid) scratch[k++] = v[i++];
    while (j < hi) scratch[k++] = v[j++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return count;
}

std::uint64_t tie_pairs(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    std::uint64_t pairs = 0;
    std::size_t i = 0;
    while (i < v.size()) {
        std::size_t j = i + 1;
        while (j < v.size() && v[j] == v[i]) ++j;
        const std::uint64_t t = j - i;
        pairs += t * (t - 1) / 2;
        i = j;
    }
    return pairs;
}

} // namespace

double kendall_tau_sample(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (y.size() != n || n < 2) {
        throw std::invalid_argument("kendall_tau_sample: need two equal-length series, n >= 2");
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (x[a] != x[b]) return x[a] < x[b];
        return y[a] < y[b];
    });

    std::vector<double> ys(n);
    for (std::size_t i = 0; i < n; ++i) ys[i] = y[order[i]];

    // pairs tied in x (and in both) counted along the sorted order
    std::uint64_t tx = 0, txy = 0;
    {
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i + 1;
            while (j < n && x[order[j]] == x[order[i]]) ++j;
            const std::uint64_t t = j - i;
            tx += t * (t - 1) / 2;
            std::size_t a = i;
            while (a < j) {
                std::size_t b = a + 1;
                while (b < j && ys[b] == ys[a]) ++b;
                const std::uint64_t tb = b - a;
                txy += tb * (tb - 1) / 2;
                a = b;
            }
            i = j;
        }
    }
    const std::uint64_t ty = tie_pairs(ys);

    std::vector<double> scratch(n);
    const std::uint64_t discordant = merge_count(ys, scratch, 0, n);

    const double n0 = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    // within-x-tie pairs are neither concordant nor discordant; the
    // inversion count already excludes them because ties sort together
    const double cd_pairs = n0 - static_cast<double>(tx) - static_cast<double>(ty) +
                            static_cast<double>(txy);
    const double concordant_minus_discordant =
        cd_pairs - 2.0 * static_cast<double>(discordant);
    const double denom = std::sqrt((n0 - static_cast<double>(tx)) *
                                   (n0 - static_cast<double>(ty)));
    if (denom == 0.0) return 0.0;
    return concordant_minus_discordant / denom;
}

double ks_statistic(std::span<const double> sample, const std::function<double(double)>& cdf) {
    std::vector<double> sorted(sample.begin(), sample.end());
    std::sort(sorted.begin(), sorted.end());
    const double n = static_cast<double>(sorted.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        const double f = cdf(sorted[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / n));
        d = std::max(d, std::abs(f - static_cast<double>(i) / n));
    }
    return d;
}

double mean(std::span<const double> x) {
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

double sample_sd(std::span<const double> x) {
    const double m = mean(x);
    double v = 0.0;
    for (double e : x) v += (e - m) * (e - m);
    return std::sqrt(v / static_cast<double>(x.size() - 1));
}

} // namespace adsel
