#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace adsel {

/// Row-major design matrix with column names (names drive the
/// rank-deficiency error messages and the report tables).
struct DesignMatrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> values;
    std::vector<std::string> names;

    double& at(std::size_t i, std::size_t j) { return values[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    static DesignMatrix zeros(std::size_t rows, std::size_t cols, std::vector<std::string> names);
};

struct FitResult {
    std::vector<double> coefficients;
    std::vector<double> standard_errors;
    std::size_t n_used = 0;
    bool converged = false;
    double log_likelihood = 0.0; // probit fits
    double sigma2 = 0.0;         // OLS residual variance
};

/// Maximum-likelihood probit via Newton iterations on the observed
/// information; converges when the score sup-norm drops below 1e-8.
/// Throws on rank-deficient designs (naming the offending columns) and on
/// perfect separation (diverging coefficients).
FitResult probit_fit(const DesignMatrix& X, std::span<const std::uint8_t> y);

/// Fitted probabilities Phi(X beta), clamped strictly inside (0,1).
std::vector<double> propensity_scores(const FitResult& fit, const DesignMatrix& X);

/// Least squares through a column-pivoted QR of X; classic homoskedastic
/// standard errors.
FitResult ols_fit(const DesignMatrix& X, std::span<const double> y);

struct AteResult {
    double ate = 0.0;
    double se = 0.0;
    FitResult fit;
};

/// Control-function regression of y on 1, d, p_hat (plus p_hat^2, p_hat^3
/// at degree 3) and d*(p_hat - mean(p_hat)); the ATE is the coefficient
/// on d.
AteResult control_function_ate(std::span<const double> y, std::span<const std::uint8_t> d,
                               std::span<const double> p_hat, int degree);

struct IpwResult {
    double ate = 0.0;
    double se = 0.0;
    std::size_t n_used = 0;
    std::size_t n_trimmed = 0;
};

/// Inverse-probability-weighted ATE (1/n) sum y (d - p)/(p(1-p)) over rows
/// with p inside the trimming window (0.001, 0.999).
IpwResult ipw_ate(std::span<const double> y, std::span<const std::uint8_t> d,
                  std::span<const double> p_hat);

/// Per-arm probit fits averaged into (1/n) sum [Phi(x b1) - Phi(x b0)].
/// Arms with a constant outcome contribute that constant directly.
double regression_adjustment_ate(const DesignMatrix& X, std::span<const std::uint8_t> y,
                                 std::span<const std::uint8_t> d);

struct NaiveProbitResult {
    FitResult fit;                       // regressors: X columns then d (last)
    double average_marginal_effect = 0.0;
};

/// Probit of the outcome on [X | d] plus the average marginal effect of d
/// (sample average of Phi at d=1 minus Phi at d=0).
NaiveProbitResult naive_probit_effect(const DesignMatrix& X, std::span<const std::uint8_t> d,
                                      std::span<const std::uint8_t> y);

} // namespace adsel
