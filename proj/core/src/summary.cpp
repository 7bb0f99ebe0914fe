#include "adsel/summary.hpp"

#include <cmath>
#include <stdexcept>

#include "adsel/clayton.hpp"

namespace adsel {

PosteriorSummary posterior_summary(const PosteriorChain& chain, double burn_in_fraction) {
    if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
        throw std::invalid_argument("posterior_summary: burn_in_fraction must be in [0,1)");
    }
    const std::size_t iters = chain.iterations();
    const std::size_t burn = static_cast<std::size_t>(
        std::floor(burn_in_fraction * static_cast<double>(iters)));
    const std::size_t kept = iters - burn;
    if (kept < 100) {
        throw std::invalid_argument("posterior_summary: fewer than 100 post-burn-in draws");
    }

    const std::size_t dim = chain.dim;
    PosteriorSummary s;
    s.n_draws_used = kept;
    s.burn_in = burn;
    s.acceptance_rate = chain.acceptance_rate();
    s.parameter_names = chain.parameter_names;
    s.mean_sampling.assign(dim, 0.0);
    s.sd_sampling.assign(dim, 0.0);
    s.mean_model.assign(dim, 0.0);
    s.sd_model.assign(dim, 0.0);

    const std::size_t theta_col = dim - 1; // theta_tilde is always last
    for (std::size_t j = 0; j < dim; ++j) {
        double m0 = 0.0, m1 = 0.0;
        for (std::size_t i = burn; i < iters; ++i) {
            const double v = chain.draws[i * dim + j];
            const double w = (j == theta_col) ? theta_transform(v).theta : v;
            m0 += v;
            m1 += w;
        }
        m0 /= static_cast<double>(kept);
        m1 /= static_cast<double>(kept);
        double v0 = 0.0, v1 = 0.0;
        for (std::size_t i = burn; i < iters; ++i) {
            const double v = chain.draws[i * dim + j];
            const double w = (j == theta_col) ? theta_transform(v).theta : v;
            v0 += (v - m0) * (v - m0);
            v1 += (w - m1) * (w - m1);
        }
        const double denom = static_cast<double>(kept > 1 ? kept - 1 : 1);
        s.mean_sampling[j] = m0;
        s.sd_sampling[j] = std::sqrt(v0 / denom);
        s.mean_model[j] = m1;
        s.sd_model[j] = std::sqrt(v1 / denom);
    }
    return s;
}

} // namespace adsel
