#include "adsel/propensity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "adsel/normal.hpp"
#include "adsel/stats.hpp"

namespace adsel {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

Eigen::Map<const MatrixXd> map_rowmajor(const DesignMatrix& X) {
    // row-major storage mapped as a transposed column-major view
    return {X.values.data(), static_cast<Eigen::Index>(X.cols),
            static_cast<Eigen::Index>(X.rows)};
}

MatrixXd to_eigen(const DesignMatrix& X) {
    return map_rowmajor(X).transpose();
}

// Column-pivoted QR rank check; throws naming the redundant columns.
void check_full_rank(const MatrixXd& M, const std::vector<std::string>& names,
                     const char* who) {
    Eigen::ColPivHouseholderQR<MatrixXd> qr(M);
    qr.setThreshold(1e-10);
    if (qr.rank() == M.cols()) return;
    const auto& perm = qr.colsPermutation().indices();
    std::ostringstream msg;
    msg << who << ": design matrix is rank deficient; offending columns:";
    for (Eigen::Index k = qr.rank(); k < M.cols(); ++k) {
        const auto col = static_cast<std::size_t>(perm[k]);
        msg << ' ' << (col < names.size() ? names[col] : "col" + std::to_string(col));
    }
    throw std::runtime_error(msg.str());
}

} // namespace

DesignMatrix DesignMatrix::zeros(std::size_t rows, std::size_t cols,
                                 std::vector<std::string> names) {
    DesignMatrix X;
    X.rows = rows;
    X.cols = cols;
    X.values.assign(rows * cols, 0.0);
    X.names = std::move(names);
    return X;
}

FitResult probit_fit(const DesignMatrix& X, std::span<const std::uint8_t> y) {
    if (X.rows != y.size()) {
        throw std::invalid_argument("probit_fit: X and y row counts differ");
    }
    if (X.rows <= X.cols) {
        throw std::invalid_argument("probit_fit: need more rows than columns");
    }
    const MatrixXd M = to_eigen(X);
    check_full_rank(M, X.names, "probit_fit");

    const auto n = static_cast<Eigen::Index>(X.rows);
    const auto k = static_cast<Eigen::Index>(X.cols);
    VectorXd beta = VectorXd::Zero(k);
    VectorXd eta(n), score_w(n), info_w(n);

    FitResult result;
    result.n_used = X.rows;
    double loglik = 0.0;

    for (int iter = 0; iter < 100; ++iter) {
        eta = M * beta;
        loglik = 0.0;
        for (Eigen::Index i = 0; i < n; ++i) {
            const double e = eta[i];
            if (y[static_cast<std::size_t>(i)]) {
                loglik += norm_log_cdf(e);
                const double lam = norm_mills(e);
                score_w[i] = lam;
                info_w[i] = lam * (e + lam);
            } else {
                loglik += norm_log_cdf(-e);
                const double lam = norm_mills(-e);
                score_w[i] = -lam;
                info_w[i] = lam * (lam - e);
            }
        }
        const VectorXd score = M.transpose() * score_w;
        if (score.lpNorm<Eigen::Infinity>() < 1e-8) {
            result.converged = true;
            break;
        }
        const MatrixXd info = M.transpose() * info_w.asDiagonal() * M;
        const VectorXd step = info.ldlt().solve(score);
        beta += step;
        if (beta.lpNorm<Eigen::Infinity>() > 1e3) {
            throw std::runtime_error(
                "probit_fit: coefficients diverging (perfect separation suspected)");
        }
    }
    if (!result.converged) {
        throw std::runtime_error("probit_fit: Newton iterations failed to converge");
    }
    // a numerically perfect fit means the MLE is at infinity
    if (loglik > -1e-6 * static_cast<double>(n)) {
        throw std::runtime_error(
            "probit_fit: likelihood indistinguishable from a perfect fit (separation)");
    }

    eta = M * beta;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double e = eta[i];
        if (y[static_cast<std::size_t>(i)]) {
            const double lam = norm_mills(e);
            info_w[i] = lam * (e + lam);
        } else {
            const double lam = norm_mills(-e);
            info_w[i] = lam * (lam - e);
        }
    }
    const MatrixXd info = M.transpose() * info_w.asDiagonal() * M;
    const MatrixXd cov = info.ldlt().solve(MatrixXd::Identity(k, k));

    result.coefficients.assign(beta.data(), beta.data() + k);
    result.standard_errors.resize(static_cast<std::size_t>(k));
    for (Eigen::Index j = 0; j < k; ++j) {
        result.standard_errors[static_cast<std::size_t>(j)] = std::sqrt(std::max(cov(j, j), 0.0));
    }
    result.log_likelihood = loglik;
    return result;
}

std::vector<double> propensity_scores(const FitResult& fit, const DesignMatrix& X) {
    if (!fit.converged) {
        throw std::invalid_argument("propensity_scores: fit did not converge");
    }
    if (fit.coefficients.size() != X.cols) {
        throw std::invalid_argument("propensity_scores: coefficient/column mismatch");
    }
    std::vector<double> p(X.rows);
    for (std::size_t i = 0; i < X.rows; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < X.cols; ++j) eta += X.at(i, j) * fit.coefficients[j];
        p[i] = std::clamp(norm_cdf(eta), 1e-15, 1.0 - 1e-15);
    }
    return p;
}

FitResult ols_fit(const DesignMatrix& X, std::span<const double> y) {
    if (X.rows != y.size()) {
        throw std::invalid_argument("ols_fit: X and y row counts differ");
    }
    if (X.rows <= X.cols) {
        throw std::invalid_argument("ols_fit: need more rows than columns");
    }
    const MatrixXd M = to_eigen(X);
    check_full_rank(M, X.names, "ols_fit");

    const Eigen::Map<const VectorXd> yv(y.data(), static_cast<Eigen::Index>(y.size()));
    Eigen::ColPivHouseholderQR<MatrixXd> qr(M);
    const VectorXd beta = qr.solve(yv);

    const VectorXd resid = yv - M * beta;
    const double dof = static_cast<double>(X.rows - X.cols);
    const double sigma2 = resid.squaredNorm() / dof;

    const MatrixXd xtx_inv =
        (M.transpose() * M).ldlt().solve(MatrixXd::Identity(M.cols(), M.cols()));

    FitResult result;
    result.converged = true;
    result.n_used = X.rows;
    result.sigma2 = sigma2;
    result.coefficients.assign(beta.data(), beta.data() + beta.size());
    result.standard_errors.resize(X.cols);
    for (Eigen::Index j = 0; j < beta.size(); ++j) {
        result.standard_errors[static_cast<std::size_t>(j)] =
            std::sqrt(std::max(sigma2 * xtx_inv(j, j), 0.0));
    }
    return result;
}

AteResult control_function_ate(std::span<const double> y, std::span<const std::uint8_t> d,
                               std::span<const double> p_hat, int degree) {
    const std::size_t n = y.size();
    if (d.size() != n || p_hat.size() != n) {
        throw std::invalid_argument("control_function_ate: input length mismatch");
    }
    if (degree != 1 && degree != 3) {
        throw std::invalid_argument("control_function_ate: degree must be 1 or 3");
    }
    if (sample_sd(p_hat) < 1e-8) {
        throw std::runtime_error(
            "control_function_ate: propensity scores are (near) constant, collinear with "
            "the intercept");
    }
    const double mu_p = mean(p_hat);

    std::vector<std::string> names{"const", "d", "p"};
    if (degree == 3) {
        names.push_back("p2");
        names.push_back("p3");
    }
    names.push_back("d_x_p_demeaned");
    DesignMatrix X = DesignMatrix::zeros(n, names.size(), names);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t j = 0;
        X.at(i, j++) = 1.0;
        X.at(i, j++) = d[i];
        X.at(i, j++) = p_hat[i];
        if (degree == 3) {
            X.at(i, j++) = p_hat[i] * p_hat[i];
            X.at(i, j++) = p_hat[i] * p_hat[i] * p_hat[i];
        }
        X.at(i, j++) = d[i] * (p_hat[i] - mu_p);
    }

    AteResult result;
    result.fit = ols_fit(X, y);
    result.ate = result.fit.coefficients[1];
    result.se = result.fit.standard_errors[1];
    return result;
}

IpwResult ipw_ate(std::span<const double> y, std::span<const std::uint8_t> d,
                  std::span<const double> p_hat) {
    const std::size_t n = y.size();
    if (d.size() != n || p_hat.size() != n) {
        throw std::invalid_argument("ipw_ate: input length mismatch");
    }
    constexpr double kTrim = 1e-3;
    IpwResult result;
    double sum = 0.0, sumsq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double p = p_hat[i];
        if (p <= kTrim || p >= 1.0 - kTrim) {
            ++result.n_trimmed;
            continue;
        }
        const double term = y[i] * (static_cast<double>(d[i]) - p) / (p * (1.0 - p));
        sum += term;
        sumsq += term * term;
        ++result.n_used;
    }
    if (result.n_used == 0) {
        throw std::runtime_error("ipw_ate: every row was trimmed");
    }
    const double m = static_cast<double>(result.n_used);
    result.ate = sum / m;
    if (result.n_used > 1) {
        result.se = std::sqrt((sumsq / m - result.ate * result.ate) / (m - 1.0));
    }
    return result;
}

double regression_adjustment_ate(const DesignMatrix& X, std::span<const std::uint8_t> y,
                                 std::span<const std::uint8_t> d) {
    const std::size_t n = X.rows;
    if (y.size() != n || d.size() != n) {
        throw std::invalid_argument("regression_adjustment_ate: input length mismatch");
    }

    // arm-specific fitted-probability functions; a constant-outcome arm is
    // the degenerate ML limit with that constant as its probability
    auto arm_probs = [&](int arm) -> std::vector<double> {
        std::vector<std::size_t> rows;
        for (std::size_t i = 0; i < n; ++i) {
            if (d[i] == arm) rows.push_back(i);
        }
        if (rows.empty()) {
            throw std::runtime_error("regression_adjustment_ate: empty treatment arm");
        }
        bool all0 = true, all1 = true;
        for (std::size_t i : rows) {
            all0 = all0 && y[i] == 0;
            all1 = all1 && y[i] == 1;
        }
        if (all0 || all1) {
            return std::vector<double>(n, all1 ? 1.0 : 0.0);
        }
        DesignMatrix sub = DesignMatrix::zeros(rows.size(), X.cols, X.names);
        std::vector<std::uint8_t> ysub(rows.size());
        for (std::size_t r = 0; r < rows.size(); ++r) {
            for (std::size_t j = 0; j < X.cols; ++j) sub.at(r, j) = X.at(rows[r], j);
            ysub[r] = y[rows[r]];
        }
        const FitResult fit = probit_fit(sub, ysub);
        return propensity_scores(fit, X);
    };

    const std::vector<double> p1 = arm_probs(1);
    const std::vector<double> p0 = arm_probs(0);
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) sum += p1[i] - p0[i];
    return sum / static_cast<double>(n);
}

NaiveProbitResult naive_probit_effect(const DesignMatrix& X, std::span<const std::uint8_t> d,
                                      std::span<const std::uint8_t> y) {
    const std::size_t n = X.rows;
    if (d.size() != n || y.size() != n) {
        throw std::invalid_argument("naive_probit_effect: input length mismatch");
    }
    std::vector<std::string> names = X.names;
    names.push_back("d");
    DesignMatrix Xd = DesignMatrix::zeros(n, X.cols + 1, names);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < X.cols; ++j) Xd.at(i, j) = X.at(i, j);
        Xd.at(i, X.cols) = d[i];
    }

    NaiveProbitResult result;
    result.fit = probit_fit(Xd, y);

    const double beta_d = result.fit.coefficients[X.cols];
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double eta = 0.0;
        for (std::size_t j = 0; j < X.cols; ++j) eta += X.at(i, j) * result.fit.coefficients[j];
        sum += norm_cdf(eta + beta_d) - norm_cdf(eta);
    }
    result.average_marginal_effect = sum / static_cast<double>(n);
    return result;
}

} // namespace adsel
