#pragma once

#include <span>
#include <vector>

#include "adsel/prior.hpp"
#include "adsel/target.hpp"
#include "adsel/types.hpp"

namespace adsel {

double log_posterior(const Dataset& data, const ParameterSet& params, const PriorSpec& spec,
                     int n_threads = 1);

std::vector<double> log_posterior_gradient(const Dataset& data, const ParameterSet& params,
                                           const PriorSpec& spec, int n_threads = 1);

/// Posterior of the three-equation model over the flat parameter vector in
/// theta_tilde space. The prior is evaluated first so the likelihood is
/// never touched outside the admissible theta region.
class PosteriorModel final : public Target {
public:
    PosteriorModel(const Dataset& data, PriorSpec spec, int n_threads = 1);

    std::size_t dim() const override { return dim_; }
    double value(std::span<const double> x) const override;
    double value_and_gradient(std::span<const double> x, std::span<double> grad) const override;

    ParameterSet unflatten(std::span<const double> x) const;
    const PriorSpec& prior() const { return spec_; }

private:
    const Dataset& data_;
    PriorSpec spec_;
    int n_threads_;
    std::size_t dim_;
};

} // namespace adsel
