#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "adsel/diagnostics.hpp"
#include "adsel/rng.hpp"

using namespace adsel;

TEST_SUITE_BEGIN("diagnostics");

TEST_CASE("cvm critical values") {
    CHECK(cvm_critical_value(0.05) == doctest::Approx(0.46136));
    CHECK(cvm_critical_value(0.10) == doctest::Approx(0.34730));
    CHECK(cvm_critical_value(0.01) == doctest::Approx(0.74346));
    CHECK(cvm_critical_value(0.2) == doctest::Approx(0.24124));
    // monotone decreasing in alpha
    CHECK(cvm_critical_value(0.03) > cvm_critical_value(0.05));
    CHECK_THROWS_AS((void)cvm_critical_value(0.25), std::invalid_argument);
    CHECK_THROWS_AS((void)cvm_critical_value(0.0), std::invalid_argument);
}

TEST_CASE("bartlett spectral density of white noise approximates the variance") {
    Rng rng(101);
    const std::size_t n = 20000;
    std::vector<double> x(n);
    for (auto& v : x) v = rng.next_normal();
    const double s0 = spectral_density_zero(x);
    CHECK(s0 == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("iid normal chains pass at the nominal level with the full series kept") {
    const int reps = 500;
    int pass_full = 0;
    for (int rep = 0; rep < reps; ++rep) {
        Rng rng(5000 + static_cast<std::uint64_t>(rep));
        std::vector<double> x(1000);
        for (auto& v : x) v = rng.next_normal();
        const auto res = heidelberger_welch(x, 0.05);
        if (res.stationary && res.kept_fraction == doctest::Approx(1.0)) ++pass_full;
    }
    CHECK(pass_full >= static_cast<int>(0.9 * reps));
}

TEST_CASE("a deterministic linear trend fails") {
    const std::size_t n = 2000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = static_cast<double>(i) / static_cast<double>(n);
    }
    // the trend dominates every staged sub-series
    const auto res = heidelberger_welch(x, 0.05);
    CHECK_FALSE(res.stationary);
    CHECK(res.cvm_statistic > cvm_critical_value(0.05));
}

TEST_CASE("trend plus noise still fails, pure noise around the same mean passes") {
    Rng rng(404);
    const std::size_t n = 4000;
    std::vector<double> trend(n), flat(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double eps = 0.1 * rng.next_normal();
        trend[i] = static_cast<double>(i) / static_cast<double>(n) + eps;
        flat[i] = 0.5 + eps;
    }
    CHECK_FALSE(heidelberger_welch(trend, 0.05).stationary);
    CHECK(heidelberger_welch(flat, 0.05).stationary);
}

TEST_CASE("an initial transient is discarded and the remainder passes") {
    Rng rng(505);
    const std::size_t n = 5000;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double transient = (i < n / 10) ? 8.0 * (1.0 - 10.0 * static_cast<double>(i) / n) : 0.0;
        x[i] = transient + rng.next_normal();
    }
    const auto res = heidelberger_welch(x, 0.05);
    CHECK(res.stationary);
    CHECK(res.kept_fraction < 1.0);
    CHECK(res.kept_fraction >= 0.5);
}

TEST_CASE("degenerate and invalid inputs") {
    std::vector<double> constant(500, 3.14);
    CHECK_THROWS_AS((void)heidelberger_welch(constant, 0.05), std::runtime_error);
    std::vector<double> tiny(50, 0.0);
    CHECK_THROWS_AS((void)heidelberger_welch(tiny, 0.05), std::invalid_argument);
    std::vector<double> ok(200, 0.0);
    CHECK_THROWS_AS((void)heidelberger_welch(ok, 0.5), std::invalid_argument);
}

TEST_SUITE_END();
