#pragma once

namespace adsel {

/// Dependence parameters below this are treated as the product copula,
/// removing the theta = 0 singularity.
inline constexpr double kThetaIndependenceEps = 1e-8;

/// Lower bound of the admissible dependence range. The trivariate copula
/// is a valid CDF only for theta > -1/2; values at or below are rejected.
inline constexpr double kThetaMin = -0.5;

struct ThetaTransform {
    double theta;  // (theta_tilde + 1)^2 - 1
    double dtheta; // d theta / d theta_tilde = 2 (theta_tilde + 1)
};

/// Maps the unconstrained sampling parameter to the copula parameter.
ThetaTransform theta_transform(double theta_tilde);

/// Kendall rank correlation theta/(theta+2). Domain: theta > -1/2, theta != 0.
double kendall_tau_clayton(double theta);

/// Bivariate Clayton CDF ([u^-t + v^-t - 1]_+)^(-1/t); product copula for
/// |theta| < kThetaIndependenceEps.
double clayton_cdf2(double u, double v, double theta);

/// Trivariate Clayton CDF ([u^-t + v^-t + w^-t - 2]_+)^(-1/t).
double clayton_cdf3(double u, double v, double w, double theta);

struct Clayton2Partials {
    double c;      // CDF value
    double du, dv; // partials in the uniform arguments
    double dtheta;
};

struct Clayton3Partials {
    double c;
    double du, dv, dw;
    double dtheta;
};

Clayton2Partials clayton_cdf2_partials(double u, double v, double theta);
Clayton3Partials clayton_cdf3_partials(double u, double v, double w, double theta);

} // namespace adsel
