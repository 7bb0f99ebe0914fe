#pragma once

#include <span>
#include <vector>

#include "adsel/target.hpp"

namespace adsel {

/// Target viewed through the affine map x = origin + L y with L lower
/// triangular. Densities compose directly; gradients pick up L^T. Used to
/// whiten badly scaled posteriors so the scalar-step proposal mixes.
class AffineTarget final : public Target {
public:
    AffineTarget(const Target& base, std::vector<double> origin, std::vector<double> chol);

    std::size_t dim() const override { return origin_.size(); }
    double value(std::span<const double> y) const override;
    double value_and_gradient(std::span<const double> y, std::span<double> grad) const override;

    std::vector<double> to_x(std::span<const double> y) const;
    /// Inverse map (forward substitution against L).
    std::vector<double> to_y(std::span<const double> x) const;

private:
    const Target& base_;
    std::vector<double> origin_;
    std::vector<double> chol_; // dim x dim, row-major, lower triangular
};

/// Deterministic gradient ascent with backtracking; returns the best point
/// found. -inf regions are stepped around by shrinking the step.
std::vector<double> crude_map(const Target& target, std::span<const double> init,
                              int iterations = 200);

struct Whitening {
    std::vector<double> origin; // MAP estimate
    std::vector<double> chol;   // Cholesky factor of the local covariance
};

/// Laplace-style whitening: crude MAP, finite-difference Hessian of the
/// log density (central differences of the analytic gradient), jitter
/// until positive definite, Cholesky of the inverse.
Whitening laplace_whitening(const Target& target, std::span<const double> init,
                            int map_iterations = 200, double fd_step = 1e-4);

} // namespace adsel
