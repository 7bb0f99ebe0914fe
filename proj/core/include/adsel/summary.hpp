#pragma once

#include <vector>

#include "adsel/mala.hpp"

namespace adsel {

/// Posterior means and sds after burn-in. `sampling` summarizes the raw
/// theta_tilde-space draws; `model` applies the theta transform to the
/// theta_tilde column draw by draw before averaging (never transform of
/// the mean).
struct PosteriorSummary {
    std::vector<double> mean_sampling, sd_sampling;
    std::vector<double> mean_model, sd_model;
    std::size_t n_draws_used = 0;
    std::size_t burn_in = 0;
    double acceptance_rate = 0.0;
    std::vector<std::string> parameter_names;
};

PosteriorSummary posterior_summary(const PosteriorChain& chain, double burn_in_fraction);

} // namespace adsel
