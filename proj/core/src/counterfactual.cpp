#include "adsel/counterfactual.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adsel/clayton.hpp"
#include "adsel/likelihood.hpp"
#include "adsel/logistic.hpp"

namespace adsel {

namespace {

// Neumaier-compensated accumulator; the LATE aggregation identity is
// checked at 1e-12, tighter than naive summation drift over 1e5 records.
struct KahanSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double outcome_pair_prob(double b, double c, double theta) {
    const double ub = std::max(logistic_cdf(-b), 1e-300);
    const double uc = std::max(logistic_cdf(-c), 1e-300);
    return 1.0 - ub - uc + clayton_cdf2(ub, uc, theta);
}

double forced_diff(std::span<const double> x2, std::span<const double> z,
                   const ParameterSet& params, double theta) {
    const double s = dot(x2, params.beta);
    const double az = dot(z, params.alpha1);
    const double b1 = az + s;
    const double c1 = params.alpha2 + params.w1 * s + params.w2;
    const double c0 = params.w1 * s + params.w2;
    return outcome_pair_prob(b1, c1, theta) - outcome_pair_prob(s, c0, theta);
}

void check_dims(const Dataset& data, const ParameterSet& params) {
    if (data.k1() != params.gamma.size() || data.k2() != params.beta.size() ||
        data.kz() != params.alpha1.size()) {
        throw std::invalid_argument("counterfactual: dataset/parameter dimension mismatch");
    }
}

} // namespace

double joint_outcome_prob(std::span<const double> x2, std::span<const double> z,
                          const ParameterSet& params, int forced_d) {
    const double theta = params.theta();
    const double s = dot(x2, params.beta);
    const double b = (forced_d ? dot(z, params.alpha1) : 0.0) + s;
    const double c = params.alpha2 * forced_d + params.w1 * s + params.w2;
    return outcome_pair_prob(b, c, theta);
}

double joint_outcome_prob(const ImpressionRecord& rec, const ParameterSet& params, int forced_d) {
    return joint_outcome_prob(rec.x2, rec.z, params, forced_d);
}

double ate(const Dataset& data, const ParameterSet& params) {
    if (data.empty()) throw std::invalid_argument("ate: empty dataset");
    check_dims(data, params);
    const double theta = params.theta();
    KahanSum acc;
    for (std::size_t i = 0; i < data.size(); ++i) {
        acc.add(forced_diff(data.x2_row(i), data.z_row(i), params, theta));
    }
    return acc.value() / static_cast<double>(data.size());
}

double att(const Dataset& data, const ParameterSet& params) {
    check_dims(data, params);
    const double theta = params.theta();
    KahanSum acc;
    std::size_t treated = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data.d(i)) continue;
        acc.add(forced_diff(data.x2_row(i), data.z_row(i), params, theta));
        ++treated;
    }
    if (treated == 0) throw std::invalid_argument("att: no treated records");
    return acc.value() / static_cast<double>(treated);
}

std::vector<std::pair<std::string, double>> late_by_group(
    const Dataset& data, const ParameterSet& params, std::span<const std::string> labels) {
    if (labels.size() != data.size()) {
        throw std::invalid_argument("late_by_group: one label per record required");
    }
    check_dims(data, params);
    const double theta = params.theta();

    std::map<std::string, std::pair<KahanSum, std::size_t>> groups;
    for (std::size_t i = 0; i < data.size(); ++i) {
        auto& slot = groups[labels[i]];
        slot.first.add(forced_diff(data.x2_row(i), data.z_row(i), params, theta));
        slot.second += 1;
    }
    std::vector<std::pair<std::string, double>> out;
    out.reserve(groups.size());
    for (const auto& [label, slot] : groups) {
        out.emplace_back(label, slot.first.value() / static_cast<double>(slot.second));
    }
    return out;
}

double adverse_selection_loss(const Dataset& data, const ParameterSet& params) {
    check_dims(data, params);
    const double theta = params.theta();
    KahanSum acc;
    std::size_t treated = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        if (!data.d(i)) continue;
        const auto x2 = data.x2_row(i);
        const auto z = data.z_row(i);
        const double a = dot(data.x1_row(i), params.gamma);
        const double ua = std::max(logistic_cdf(-a), 1e-300);
        const double p_treat = 1.0 - ua;

        const double s = dot(x2, params.beta);
        const double b1 = dot(z, params.alpha1) + s;
        const double c1 = params.alpha2 + params.w1 * s + params.w2;
        const double factored = p_treat * outcome_pair_prob(b1, c1, theta);

        const double ub = std::max(logistic_cdf(-b1), 1e-300);
        const double uc = std::max(logistic_cdf(-c1), 1e-300);
        const double joint = 1.0 - ua - ub - uc + clayton_cdf2(ua, ub, theta) +
                             clayton_cdf2(ua, uc, theta) + clayton_cdf2(ub, uc, theta) -
                             clayton_cdf3(ua, ub, uc, theta);
        acc.add(factored - joint);
        ++treated;
    }
    if (treated == 0) throw std::invalid_argument("adverse_selection_loss: no treated records");
    return acc.value() / static_cast<double>(treated);
}

double cpm(double quantity, double price_per_install) {
    if (price_per_install < 0.0) {
        throw std::invalid_argument("cpm: price must be non-negative");
    }
    return quantity * price_per_install * 1000.0;
}

CounterfactualReport counterfactual_report(const Dataset& data, const ParameterSet& params,
                                           std::span<const std::string> labels,
                                           double price_per_install) {
    CounterfactualReport report;
    report.n = data.size();
    report.n_treated = data.n_treated();
    report.evaluation_mode = "posterior_mean";
    report.price_per_install = price_per_install;
    report.ate = ate(data, params);
    report.att = att(data, params);
    report.adverse_selection_loss = adverse_selection_loss(data, params);
    if (!labels.empty()) {
        report.late_by_group = late_by_group(data, params, labels);
    }
    report.cpm_equivalents["ate"] = cpm(report.ate, price_per_install);
    report.cpm_equivalents["att"] = cpm(report.att, price_per_install);
    report.cpm_equivalents["adverse_selection_loss"] =
        cpm(report.adverse_selection_loss, price_per_install);
    return report;
}

CounterfactualReport counterfactual_report_draws(const Dataset& data,
                                                 std::span<const double> draws,
                                                 std::size_t n_draws,
                                                 std::span<const std::string> labels,
                                                 double price_per_install) {
    if (n_draws == 0) {
        throw std::invalid_argument("counterfactual_report_draws: no draws");
    }
    const std::size_t dim = draws.size() / n_draws;
    CounterfactualReport total;
    for (std::size_t r = 0; r < n_draws; ++r) {
        const ParameterSet params =
            ParameterSet::from_flat(draws.subspan(r * dim, dim), data.k1(), data.kz(), data.k2());
        CounterfactualReport one = counterfactual_report(data, params, labels, price_per_install);
        if (r == 0) {
            total = one;
        } else {
            total.ate += one.ate;
            total.att += one.att;
            total.adverse_selection_loss += one.adverse_selection_loss;
            for (std::size_t g = 0; g < total.late_by_group.size(); ++g) {
                total.late_by_group[g].second += one.late_by_group[g].second;
            }
        }
    }
    const double inv = 1.0 / static_cast<double>(n_draws);
    total.ate *= inv;
    total.att *= inv;
    total.adverse_selection_loss *= inv;
    for (auto& [label, v] : total.late_by_group) v *= inv;
    total.evaluation_mode = "draw_average";
    total.cpm_equivalents["ate"] = cpm(total.ate, price_per_install);
    total.cpm_equivalents["att"] = cpm(total.att, price_per_install);
    total.cpm_equivalents["adverse_selection_loss"] =
        cpm(total.adverse_selection_loss, price_per_install);
    return total;
}

} // namespace adsel
