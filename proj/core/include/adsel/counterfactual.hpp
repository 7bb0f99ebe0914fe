#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "adsel/types.hpp"

namespace adsel {

/// P(y_tau = 1, y = 1 | d forced) for one record: the upper-orthant
/// probability of the (eps2, eps3) pair under the bivariate Clayton margin.
double joint_outcome_prob(std::span<const double> x2, std::span<const double> z,
                          const ParameterSet& params, int forced_d);
double joint_outcome_prob(const ImpressionRecord& rec, const ParameterSet& params, int forced_d);

/// Average over all records of the forced-arm difference
/// P(y_tau=1, y=1 | d=1) - P(y_tau=1, y=1 | d=0).
double ate(const Dataset& data, const ParameterSet& params);

/// The same difference averaged over treated records only.
double att(const Dataset& data, const ParameterSet& params);

/// Per-group averages of the forced-arm difference; groups sorted by label.
std::vector<std::pair<std::string, double>> late_by_group(
    const Dataset& data, const ParameterSet& params, std::span<const std::string> labels);

/// Mean over treated records of
/// P(d=1) * P(y_tau=1, y=1 | d=1) - P(d=1, y_tau=1, y=1);
/// zero under independence, positive under adverse selection.
double adverse_selection_loss(const Dataset& data, const ParameterSet& params);

/// Revenue per thousand impressions: quantity * price * 1000.
double cpm(double quantity, double price_per_install);

struct CounterfactualReport {
    double ate = 0.0;
    double att = 0.0;
    double adverse_selection_loss = 0.0;
    std::vector<std::pair<std::string, double>> late_by_group;
    std::map<std::string, double> cpm_equivalents;
    std::size_t n = 0;
    std::size_t n_treated = 0;
    std::string evaluation_mode; // "posterior_mean" or "draw_average"
    double price_per_install = 0.0;
};

/// All quantities at one parameter point (posterior-mean evaluation).
CounterfactualReport counterfactual_report(const Dataset& data, const ParameterSet& params,
                                           std::span<const std::string> labels,
                                           double price_per_install);

/// Quantities averaged over a set of posterior draws (flat rows).
CounterfactualReport counterfactual_report_draws(const Dataset& data,
                                                 std::span<const double> draws,
                                                 std::size_t n_draws,
                                                 std::span<const std::string> labels,
                                                 double price_per_install);

} // namespace adsel
