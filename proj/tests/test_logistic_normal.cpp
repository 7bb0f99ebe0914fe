#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "adsel/logistic.hpp"
#include "adsel/normal.hpp"
#include "adsel/rng.hpp"

using namespace adsel;

TEST_SUITE_BEGIN("logistic_normal");

TEST_CASE("logistic cdf known values") {
    CHECK(logistic_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(logistic_cdf(std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-14));
    // deep tail: positive, below 1e-15 (extended-precision value exp(-40)/(1+exp(-40)))
    const double tail = logistic_cdf(-40.0);
    CHECK(tail > 0.0);
    CHECK(tail < 1e-15);
    const long double ref = 1.0L / (1.0L + std::exp(40.0L));
    CHECK(tail == doctest::Approx(static_cast<double>(ref)).epsilon(1e-12));
}

TEST_CASE("logistic cdf stable at the 700 contract boundary") {
    CHECK(std::isfinite(logistic_cdf(700.0)));
    CHECK(std::isfinite(logistic_cdf(-700.0)));
    CHECK(logistic_cdf(700.0) == doctest::Approx(1.0));
    CHECK(logistic_cdf(-700.0) >= 0.0);
    CHECK(logistic_cdf(-700.0) < 1e-300);
}

TEST_CASE("logistic cdf monotone") {
    Rng rng(11);
    for (int i = 0; i < 200; ++i) {
        const double x = 40.0 * (rng.next_uniform() - 0.5);
        const double h = 1e-3;
        CHECK(logistic_cdf(x + h) >= logistic_cdf(x));
    }
}

TEST_CASE("logistic log cdf matches log of cdf and stays finite in the tail") {
    for (double x : {-5.0, -1.0, 0.0, 2.0, 10.0}) {
        CHECK(logistic_log_cdf(x) == doctest::Approx(std::log(logistic_cdf(x))).epsilon(1e-13));
    }
    CHECK(logistic_log_cdf(-700.0) == doctest::Approx(-700.0).epsilon(1e-12));
    CHECK(logistic_log_cdf(700.0) == doctest::Approx(0.0));
}

TEST_CASE("logistic pdf matches F(1-F) and the derivative of the cdf") {
    Rng rng(12);
    for (int i = 0; i < 100; ++i) {
        const double x = 20.0 * (rng.next_uniform() - 0.5);
        const double f = logistic_cdf(x);
        CHECK(logistic_pdf(x) == doctest::Approx(f * (1.0 - f)).epsilon(1e-12));
        const double h = 1e-6;
        const double fd = (logistic_cdf(x + h) - logistic_cdf(x - h)) / (2.0 * h);
        CHECK(logistic_pdf(x) == doctest::Approx(fd).epsilon(1e-7));
    }
    CHECK(logistic_pdf(-740.0) < 1e-300); // underflows cleanly, no NaN
    CHECK(std::isfinite(logistic_pdf(-740.0)));
}

TEST_CASE("logistic quantile inverts the cdf") {
    CHECK(logistic_quantile(0.5) == doctest::Approx(0.0));
    CHECK(logistic_quantile(0.75) == doctest::Approx(std::log(3.0)).epsilon(1e-14));
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const double u = rng.next_uniform();
        CHECK(logistic_cdf(logistic_quantile(u)) == doctest::Approx(u).epsilon(1e-12));
    }
}

TEST_CASE("normal cdf/ppf round trip and spot values") {
    CHECK(norm_cdf(0.0) == doctest::Approx(0.5));
    CHECK(norm_ppf(0.5) == doctest::Approx(0.0));
    CHECK(norm_ppf(0.975) == doctest::Approx(1.959963984540054).epsilon(1e-12));
    CHECK(norm_ppf(0.001) == doctest::Approx(-3.090232306167814).epsilon(1e-12));
    CHECK(norm_ppf(1e-10) == doctest::Approx(-6.361340902404056).epsilon(1e-10));
    Rng rng(14);
    for (int i = 0; i < 500; ++i) {
        const double p = rng.next_uniform();
        CHECK(norm_cdf(norm_ppf(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS_AS((void)norm_ppf(0.0), std::domain_error);
    CHECK_THROWS_AS((void)norm_ppf(1.0), std::domain_error);
}

TEST_CASE("normal log cdf and mills ratio continue smoothly into the deep tail") {
    for (double x : {-36.9, -37.1, -50.0, -100.0}) {
        CHECK(std::isfinite(norm_log_cdf(x)));
        CHECK(std::isfinite(norm_mills(x)));
    }
    // asymptotic branch agrees with the direct formula where both are representable
    const double direct = std::log(norm_cdf(-37.1));
    CHECK(norm_log_cdf(-37.1) == doctest::Approx(direct).epsilon(1e-9));
    CHECK(norm_mills(-37.1) == doctest::Approx(norm_pdf(-37.1) / norm_cdf(-37.1)).epsilon(1e-6));
    // Mills ratio at 0 is sqrt(2/pi)
    CHECK(norm_mills(0.0) ==
          doctest::Approx(std::sqrt(2.0 / 3.14159265358979323846)).epsilon(1e-12));
}

TEST_CASE("normal log density") {
    CHECK(normal_log_density(0.0, 0.0, 100.0) ==
          doctest::Approx(-5.524108719192764).epsilon(1e-12));
    CHECK(normal_log_density(0.0, 0.0, 0.25) == doctest::Approx(0.4673558279152179).epsilon(1e-10));
}

TEST_CASE("rng determinism and uniform range") {
    Rng a(99), b(99);
    for (int i = 0; i < 1000; ++i) {
        const double u = a.next_uniform();
        CHECK(u == b.next_uniform());
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
    CHECK(derive_stream(1, std::uint64_t{2}) != derive_stream(1, std::uint64_t{3}));
    CHECK(derive_stream(1, "chain") == derive_stream(1, "chain"));
    CHECK(derive_stream(1, "chain") != derive_stream(2, "chain"));
}

TEST_CASE("rng normal moments") {
    Rng rng(7);
    const int n = 200000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double x = rng.next_normal();
        s += x;
        s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.01);
    CHECK(s2 / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_SUITE_END();
