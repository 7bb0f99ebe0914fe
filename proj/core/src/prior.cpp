#include "adsel/prior.hpp"

#include <cmath>
#include <stdexcept>

#include "adsel/clayton.hpp"
#include "adsel/normal.hpp"

namespace adsel {

namespace {

void check_spec(const ParameterSet& params, const PriorSpec& spec) {
    if (!(spec.default_sd > 0.0) || !(spec.w1_sd > 0.0) || !(spec.delta >= 0.0)) {
        throw std::invalid_argument("PriorSpec: sds must be positive and delta >= 0");
    }
    if (spec.instrument_index >= params.beta.size()) {
        throw std::invalid_argument("PriorSpec: instrument_index outside the beta block");
    }
    if (params.alpha1.empty()) {
        throw std::invalid_argument("PriorSpec: alpha1 block is empty");
    }
}

} // namespace

double log_prior(const ParameterSet& params, const PriorSpec& spec) {
    check_spec(params, spec);

    const double theta = params.theta();
    if (theta <= kThetaMin) return kNegInf;

    const double hier_sd =
        spec.delta * std::max(std::abs(params.alpha1[0]), spec.hier_scale_floor);
    if (hier_sd < 1e-12) return kNegInf;

    double lp = 0.0;
    for (double g : params.gamma) lp += normal_log_density(g, 0.0, spec.default_sd);
    for (double a : params.alpha1) lp += normal_log_density(a, 0.0, spec.default_sd);
    for (std::size_t j = 0; j < params.beta.size(); ++j) {
        if (j == spec.instrument_index) {
            lp += normal_log_density(params.beta[j], 0.0, hier_sd);
        } else {
            lp += normal_log_density(params.beta[j], 0.0, spec.default_sd);
        }
    }
    lp += normal_log_density(params.alpha2, 0.0, spec.default_sd);
    lp += normal_log_density(params.w1, spec.w1_mean, spec.w1_sd);
    lp += normal_log_density(params.w2, 0.0, spec.default_sd);
    lp += normal_log_density(params.theta_tilde, 0.0, spec.default_sd);
    return lp;
}

std::vector<double> log_prior_gradient(const ParameterSet& params, const PriorSpec& spec) {
    check_spec(params, spec);

    const std::size_t k1 = params.gamma.size();
    const std::size_t kz = params.alpha1.size();
    const std::size_t k2 = params.beta.size();
    const double var = spec.default_sd * spec.default_sd;

    std::vector<double> grad(params.flat_size(), 0.0);
    std::size_t pos = 0;
    for (std::size_t j = 0; j < k1; ++j) grad[pos + j] = -params.gamma[j] / var;
    pos += k1;
    for (std::size_t j = 0; j < kz; ++j) grad[pos + j] = -params.alpha1[j] / var;

    // hierarchical term: log N(g; 0, (delta*a)^2) with g the instrument
    // coefficient and a the alpha1 baseline; no cross term when the
    // tuning floor is binding (the sd is locally constant in a)
    const double a = params.alpha1[0];
    const double g = params.beta[spec.instrument_index];
    const double d2 = spec.delta * spec.delta;
    const bool floored = std::abs(a) < spec.hier_scale_floor;
    const double scale = floored ? spec.hier_scale_floor : std::abs(a);
    if (!floored) {
        grad[pos] += g * g / (d2 * a * a * a) - 1.0 / a;
    }
    pos += kz;

    for (std::size_t j = 0; j < k2; ++j) {
        if (j == spec.instrument_index) {
            grad[pos + j] = -g / (d2 * scale * scale);
        } else {
            grad[pos + j] = -params.beta[j] / var;
        }
    }
    pos += k2;
    grad[pos++] = -params.alpha2 / var;
    grad[pos++] = -(params.w1 - spec.w1_mean) / (spec.w1_sd * spec.w1_sd);
    grad[pos++] = -params.w2 / var;
    grad[pos++] = -params.theta_tilde / var;
    return grad;
}

} // namespace adsel
