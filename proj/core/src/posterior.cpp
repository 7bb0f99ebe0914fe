#include "adsel/posterior.hpp"

#include <cmath>

#include "adsel/likelihood.hpp"

namespace adsel {

double log_posterior(const Dataset& data, const ParameterSet& params, const PriorSpec& spec,
                     int n_threads) {
    const double lp = log_prior(params, spec);
    if (std::isinf(lp)) return lp;
    return lp + log_likelihood(data, params, n_threads);
}

std::vector<double> log_posterior_gradient(const Dataset& data, const ParameterSet& params,
                                           const PriorSpec& spec, int n_threads) {
    std::vector<double> grad = log_prior_gradient(params, spec);
    const auto lik = log_likelihood_with_gradient(data, params, n_threads);
    for (std::size_t j = 0; j < grad.size(); ++j) grad[j] += lik.gradient[j];
    return grad;
}

PosteriorModel::PosteriorModel(const Dataset& data, PriorSpec spec, int n_threads)
    : data_(data), spec_(spec), n_threads_(n_threads),
      dim_(data.k1() + data.kz() + data.k2() + 4) {}

ParameterSet PosteriorModel::unflatten(std::span<const double> x) const {
    return ParameterSet::from_flat(x, data_.k1(), data_.kz(), data_.k2());
}

double PosteriorModel::value(std::span<const double> x) const {
    const ParameterSet params = unflatten(x);
    const double lp = log_prior(params, spec_);
    if (std::isinf(lp)) return lp;
    return lp + log_likelihood(data_, params, n_threads_);
}

double PosteriorModel::value_and_gradient(std::span<const double> x,
                                          std::span<double> grad) const {
    const ParameterSet params = unflatten(x);
    const double lp = log_prior(params, spec_);
    if (std::isinf(lp)) return lp;
    const auto lik = log_likelihood_with_gradient(data_, params, n_threads_);
    const auto pg = log_prior_gradient(params, spec_);
    for (std::size_t j = 0; j < dim_; ++j) grad[j] = pg[j] + lik.gradient[j];
    return lp + lik.value;
}

} // namespace adsel
