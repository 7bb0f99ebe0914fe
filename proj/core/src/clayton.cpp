#include "adsel/clayton.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

// Evaluation strategy: for theta > 0 the powers u^-theta can overflow for
// small u, so everything is factored by the largest term m^-theta
// (m = min of the arguments), leaving ratios in (0,1] and a bracket sum
// S >= 1. For theta in (-1/2, 0) the powers u^|theta| live in (0,1] and the
// bracket can go negative, in which case the CDF is clamped at zero.

namespace adsel {

namespace {

void check_args2(double u, double v, double theta) {
    if (!(theta > kThetaMin)) {
        throw std::domain_error("clayton: theta must exceed -1/2");
    }
    if (!(u >= 0.0 && u <= 1.0) || !(v >= 0.0 && v <= 1.0)) {
        throw std::domain_error("clayton: arguments must lie in [0,1]");
    }
}

void check_args3(double u, double v, double w, double theta) {
    check_args2(u, v, theta);
    if (!(w >= 0.0 && w <= 1.0)) {
        throw std::domain_error("clayton: arguments must lie in [0,1]");
    }
}

} // namespace

ThetaTransform theta_transform(double theta_tilde) {
    const double t = theta_tilde + 1.0;
    return {t * t - 1.0, 2.0 * t};
}

double kendall_tau_clayton(double theta) {
    if (!(theta > kThetaMin) || theta == 0.0) {
        throw std::domain_error("kendall_tau_clayton: theta must be in (-1/2, inf), theta != 0");
    }
    return theta / (theta + 2.0);
}

double clayton_cdf2(double u, double v, double theta) {
    check_args2(u, v, theta);
    if (u == 0.0 || v == 0.0) return 0.0;
    if (u == 1.0) return v;
    if (v == 1.0) return u;
    if (std::abs(theta) < kThetaIndependenceEps) return u * v;

    const double lu = std::log(u);
    const double lv = std::log(v);
    if (theta > 0.0) {
        const double lm = std::min(lu, lv);
        const double s = std::exp(-theta * (lu - lm)) + std::exp(-theta * (lv - lm)) -
                         std::exp(theta * lm);
        return std::exp(lm - std::log(s) / theta);
    }
    const double t = std::exp(-theta * lu) + std::exp(-theta * lv) - 1.0;
    if (t <= 0.0) return 0.0;
    return std::exp(-std::log(t) / theta);
}

double clayton_cdf3(double u, double v, double w, double theta) {
    check_args3(u, v, w, theta);
    if (u == 0.0 || v == 0.0 || w == 0.0) return 0.0;
    if (u == 1.0) return clayton_cdf2(v, w, theta);
    if (v == 1.0) return clayton_cdf2(u, w, theta);
    if (w == 1.0) return clayton_cdf2(u, v, theta);
    if (std::abs(theta) < kThetaIndependenceEps) return u * v * w;

    const double lu = std::log(u);
    const double lv = std::log(v);
    const double lw = std::log(w);
    if (theta > 0.0) {
        const double lm = std::min({lu, lv, lw});
        const double s = std::exp(-theta * (lu - lm)) + std::exp(-theta * (lv - lm)) +
                         std::exp(-theta * (lw - lm)) - 2.0 * std::exp(theta * lm);
        return std::exp(lm - std::log(s) / theta);
    }
    const double t = std::exp(-theta * lu) + std::exp(-theta * lv) + std::exp(-theta * lw) - 2.0;
    if (t <= 0.0) return 0.0;
    return std::exp(-std::log(t) / theta);
}

Clayton2Partials clayton_cdf2_partials(double u, double v, double theta) {
    check_args2(u, v, theta);
    if (u == 0.0 || v == 0.0) return {0.0, 0.0, 0.0, 0.0};
    if (std::abs(theta) < kThetaIndependenceEps) {
        const double lu = std::log(u);
        const double lv = std::log(v);
        return {u * v, v, u, u * v * lu * lv};
    }

    const double lu = std::log(u);
    const double lv = std::log(v);
    if (theta > 0.0) {
        const double lm = std::min(lu, lv);
        const double ru = std::exp(-theta * (lu - lm));
        const double rv = std::exp(-theta * (lv - lm));
        const double s = ru + rv - std::exp(theta * lm);
        const double ls = std::log(s);
        const double c = std::exp(lm - ls / theta);
        const double du = std::exp((1.0 + theta) * (lm - lu) - (1.0 / theta + 1.0) * ls);
        const double dv = std::exp((1.0 + theta) * (lm - lv) - (1.0 / theta + 1.0) * ls);
        const double lt = -theta * lm + ls; // log of the unfactored bracket
        const double dtheta = c * (lt / (theta * theta) + (ru * lu + rv * lv) / (theta * s));
        return {c, du, dv, dtheta};
    }

    const double tu = std::exp(-theta * lu);
    const double tv = std::exp(-theta * lv);
    const double t = tu + tv - 1.0;
    if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0};
    const double lt = std::log(t);
    const double c = std::exp(-lt / theta);
    const double du = std::exp(-(1.0 / theta + 1.0) * lt - (1.0 + theta) * lu);
    const double dv = std::exp(-(1.0 / theta + 1.0) * lt - (1.0 + theta) * lv);
    const double dtheta = c * (lt / (theta * theta) + (tu * lu + tv * lv) / (theta * t));
    return {c, du, dv, dtheta};
}

Clayton3Partials clayton_cdf3_partials(double u, double v, double w, double theta) {
    check_args3(u, v, w, theta);
    if (u == 0.0 || v == 0.0 || w == 0.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
    if (std::abs(theta) < kThetaIndependenceEps) {
        const double lu = std::log(u);
        const double lv = std::log(v);
        const double lw = std::log(w);
        return {u * v * w, v * w, u * w, u * v,
                u * v * w * (lu * lv + lu * lw + lv * lw)};
    }

    const double lu = std::log(u);
    const double lv = std::log(v);
    const double lw = std::log(w);
    if (theta > 0.0) {
        const double lm = std::min({lu, lv, lw});
        const double ru = std::exp(-theta * (lu - lm));
        const double rv = std::exp(-theta * (lv - lm));
        const double rw = std::exp(-theta * (lw - lm));
        const double s = ru + rv + rw - 2.0 * std::exp(theta * lm);
        const double ls = std::log(s);
        const double c = std::exp(lm - ls / theta);
        const double e = -(1.0 / theta + 1.0) * ls;
        const double du = std::exp((1.0 + theta) * (lm - lu) + e);
        const double dv = std::exp((1.0 + theta) * (lm - lv) + e);
        const double dw = std::exp((1.0 + theta) * (lm - lw) + e);
        const double lt = -theta * lm + ls;
        const double dtheta =
            c * (lt / (theta * theta) + (ru * lu + rv * lv + rw * lw) / (theta * s));
        return {c, du, dv, dw, dtheta};
    }

    const double tu = std::exp(-theta * lu);
    const double tv = std::exp(-theta * lv);
    const double tw = std::exp(-theta * lw);
    const double t = tu + tv + tw - 2.0;
    if (t <= 0.0) return {0.0, 0.0, 0.0, 0.0, 0.0};
    const double lt = std::log(t);
    const double c = std::exp(-lt / theta);
    const double e = -(1.0 / theta + 1.0) * lt;
    const double du = std::exp(e - (1.0 + theta) * lu);
    const double dv = std::exp(e - (1.0 + theta) * lv);
    const double dw = std::exp(e - (1.0 + theta) * lw);
    const double dtheta =
        c * (lt / (theta * theta) + (tu * lu + tv * lv + tw * lw) / (theta * t));
    return {c, du, dv, dw, dtheta};
}

} // namespace adsel
