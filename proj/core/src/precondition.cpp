#include "adsel/precondition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace adsel {

namespace {

// plain in-place Cholesky, lower triangular; returns false if not PD
bool cholesky(std::vector<double>& a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j <= i; ++j) {
            double sum = a[i * n + j];
            for (std::size_t k = 0; k < j; ++k) sum -= a[i * n + k] * a[j * n + k];
            if (i == j) {
                if (sum <= 0.0) return false;
                a[i * n + i] = std::sqrt(sum);
            } else {
                a[i * n + j] = sum / a[j * n + j];
            }
        }
        for (std::size_t j = i + 1; j < n; ++j) a[i * n + j] = 0.0;
    }
    return true;
}

// inverse of a lower-triangular matrix, in place
std::vector<double> invert_lower(const std::vector<double>& l, std::size_t n) {
    std::vector<double> inv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        inv[i * n + i] = 1.0 / l[i * n + i];
        for (std::size_t j = 0; j < i; ++j) {
            double sum = 0.0;
            for (std::size_t k = j; k < i; ++k) sum += l[i * n + k] * inv[k * n + j];
            inv[i * n + j] = -sum / l[i * n + i];
        }
    }
    return inv;
}

} // namespace

AffineTarget::AffineTarget(const Target& base, std::vector<double> origin,
                           std::vector<double> chol)
    : base_(base), origin_(std::move(origin)), chol_(std::move(chol)) {
    if (chol_.size() != origin_.size() * origin_.size() || base_.dim() != origin_.size()) {
        throw std::invalid_argument("AffineTarget: dimension mismatch");
    }
}

std::vector<double> AffineTarget::to_x(std::span<const double> y) const {
    const std::size_t n = origin_.size();
    std::vector<double> x(origin_);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j <= i; ++j) acc += chol_[i * n + j] * y[j];
        x[i] += acc;
    }
    return x;
}

std::vector<double> AffineTarget::to_y(std::span<const double> x) const {
    const std::size_t n = origin_.size();
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        double acc = x[i] - origin_[i];
        for (std::size_t j = 0; j < i; ++j) acc -= chol_[i * n + j] * y[j];
        y[i] = acc / chol_[i * n + i];
    }
    return y;
}

double AffineTarget::value(std::span<const double> y) const {
    return base_.value(to_x(y));
}

double AffineTarget::value_and_gradient(std::span<const double> y,
                                        std::span<double> grad) const {
    const std::size_t n = origin_.size();
    const std::vector<double> x = to_x(y);
    std::vector<double> gx(n, 0.0);
    const double value = base_.value_and_gradient(x, gx);
    if (std::isinf(value)) return value;
    for (std::size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (std::size_t j = i; j < n; ++j) acc += chol_[j * n + i] * gx[j]; // L^T g
        grad[i] = acc;
    }
    return value;
}

std::vector<double> crude_map(const Target& target, std::span<const double> init,
                              int iterations) {
    const std::size_t n = target.dim();
    std::vector<double> x(init.begin(), init.end());
    std::vector<double> grad(n, 0.0);
    double value = target.value_and_gradient(x, grad);
    if (!std::isfinite(value)) {
        throw std::invalid_argument("crude_map: initial point has non-finite density");
    }
    double step = 1e-6;
    std::vector<double> trial(n);
    for (int it = 0; it < iterations; ++it) {
        bool moved = false;
        for (int bt = 0; bt < 50; ++bt) {
            for (std::size_t j = 0; j < n; ++j) trial[j] = x[j] + step * grad[j];
            const double tv = target.value(trial);
            if (std::isfinite(tv) && tv > value) {
                x = trial;
                value = target.value_and_gradient(x, grad);
                step *= 2.0;
                moved = true;
                break;
            }
            step *= 0.25;
            if (step < 1e-15) break;
        }
        if (!moved) break;
    }
    return x;
}

Whitening laplace_whitening(const Target& target, std::span<const double> init,
                            int map_iterations, double fd_step) {
    const std::size_t n = target.dim();
    Whitening result;
    result.origin = crude_map(target, init, map_iterations);

    // negative Hessian of the log density by central differences of the gradient
    std::vector<double> h(n * n, 0.0);
    std::vector<double> gp(n), gm(n), point(result.origin);
    for (std::size_t j = 0; j < n; ++j) {
        const double saved = point[j];
        point[j] = saved + fd_step;
        const double vp = target.value_and_gradient(point, gp);
        point[j] = saved - fd_step;
        const double vm = target.value_and_gradient(point, gm);
        point[j] = saved;
        if (!std::isfinite(vp) || !std::isfinite(vm)) {
            throw std::runtime_error("laplace_whitening: curvature probe left the domain");
        }
        for (std::size_t i = 0; i < n; ++i) {
            h[i * n + j] = -(gp[i] - gm[i]) / (2.0 * fd_step);
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) {
            const double sym = 0.5 * (h[i * n + j] + h[j * n + i]);
            h[i * n + j] = sym;
            h[j * n + i] = sym;
        }
    }

    // factor the information matrix, adding jitter until PD; the local
    // covariance Cholesky is then the inverse transpose
    double jitter = 0.0;
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(h[i * n + i]));
    if (scale == 0.0) scale = 1.0;
    std::vector<double> factor;
    for (int attempt = 0; attempt < 60; ++attempt) {
        factor = h;
        for (std::size_t i = 0; i < n; ++i) factor[i * n + i] += jitter;
        if (cholesky(factor, n)) break;
        jitter = (jitter == 0.0) ? 1e-10 * scale : jitter * 10.0;
        factor.clear();
    }
    if (factor.empty()) {
        throw std::runtime_error("laplace_whitening: information matrix not positive definite");
    }

    // H = F F^T  =>  H^{-1} = F^{-T} F^{-1}; its Cholesky factor is F^{-T},
    // which is upper triangular, so transpose the inverse into lower form
    const std::vector<double> finv = invert_lower(factor, n);
    result.chol.assign(n * n, 0.0);
    // L = (F^{-1})^T is upper triangular; we need a lower-triangular factor
    // with L L^T = H^{-1}. Use the Cholesky of H^{-1} computed directly.
    std::vector<double> hinv(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            for (std::size_t k = std::max(i, j); k < n; ++k) {
                acc += finv[k * n + i] * finv[k * n + j];
            }
            hinv[i * n + j] = acc;
        }
    }
    result.chol = hinv;
    if (!cholesky(result.chol, n)) {
        throw std::runtime_error("laplace_whitening: covariance factorization failed");
    }
    return result;
}

} // namespace adsel
