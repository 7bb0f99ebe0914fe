#include "adsel/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "adsel/clayton.hpp"
#include "adsel/logistic.hpp"

namespace adsel {

namespace {

constexpr double kBracketFloor = 1e-300;
constexpr double kUnitClamp = 1e-12;

double clamp_unit(double u) {
    return std::clamp(u, kUnitClamp, 1.0 - kUnitClamp);
}

std::size_t find_column(const std::vector<std::string>& names, const std::string& name) {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw std::invalid_argument("simulate: unknown column '" + name + "' in role assignment");
    }
    return static_cast<std::size_t>(it - names.begin());
}

} // namespace

std::vector<std::string> CovariateGenSpec::column_names() const {
    std::vector<std::string> names;
    for (const auto& cat : categoricals) {
        for (std::size_t level = 1; level < cat.level_probs.size(); ++level) {
            names.push_back(cat.name + "_" + std::to_string(level));
        }
    }
    for (const auto& cont : continuous) names.push_back(cont.name);
    return names;
}

Clayton3Sample sample_clayton3(double theta, Rng& rng) {
    if (!(theta > kThetaMin)) {
        throw std::domain_error("sample_clayton3: theta must exceed -1/2");
    }
    const double u1 = rng.next_uniform();
    const double p2 = rng.next_uniform();
    const double p3 = rng.next_uniform();
    if (std::abs(theta) < kThetaIndependenceEps) {
        return {u1, p2, p3};
    }

    const double u1_pow = std::exp(-theta * std::log(u1)); // u1^-theta
    const double base2 =
        std::max((std::pow(p2, -theta / (1.0 + theta)) - 1.0) * u1_pow + 1.0, kBracketFloor);
    const double u2 = clamp_unit(std::exp(-std::log(base2) / theta));

    const double s2 = std::max(u1_pow + std::exp(-theta * std::log(u2)) - 1.0, kBracketFloor);
    const double base3 =
        std::max(s2 * (std::pow(p3, -theta / (1.0 + 2.0 * theta)) - 1.0) + 1.0, kBracketFloor);
    const double u3 = clamp_unit(std::exp(-std::log(base3) / theta));

    return {clamp_unit(u1), u2, u3};
}

std::array<double, 3> sample_error_triple(double theta, Rng& rng) {
    const Clayton3Sample s = sample_clayton3(theta, rng);
    return {logistic_quantile(s.u1), logistic_quantile(s.u2), logistic_quantile(s.u3)};
}

SimulatedTable simulate_table(const ParameterSet& params, const CovariateGenSpec& spec) {
    if (spec.n < 1) {
        throw std::invalid_argument("simulate_table: n must be at least 1");
    }
    for (const auto& cat : spec.categoricals) {
        double total = 0.0;
        for (double p : cat.level_probs) {
            if (p < 0.0) throw std::invalid_argument("simulate_table: negative level probability");
            total += p;
        }
        if (std::abs(total - 1.0) > 1e-9) {
            throw std::invalid_argument("simulate_table: level probabilities of '" + cat.name +
                                        "' must sum to 1");
        }
    }

    SimulatedTable table;
    table.names = spec.column_names();
    table.n = spec.n;
    const std::size_t m = table.names.size();
    table.values.resize(spec.n * m);
    table.d.resize(spec.n);
    table.y_tau.resize(spec.n);
    table.y.resize(spec.n);

    const double theta = theta_transform(params.theta_tilde).theta;

    // role columns resolved once; the per-record loop fills raw columns
    // then assembles the index vectors inline
    std::vector<std::size_t> x1_idx, x2_idx, z_idx;
    for (const auto& name : spec.x1_columns) x1_idx.push_back(find_column(table.names, name));
    for (const auto& name : spec.x2_columns) x2_idx.push_back(find_column(table.names, name));
    for (const auto& name : spec.z_columns) z_idx.push_back(find_column(table.names, name));
    if (x1_idx.size() + 1 != params.gamma.size() || x2_idx.size() + 1 != params.beta.size() ||
        z_idx.size() + 1 != params.alpha1.size()) {
        throw std::invalid_argument("simulate_table: role dimensions do not match parameters");
    }

    for (std::size_t i = 0; i < spec.n; ++i) {
        Rng rng(derive_stream(spec.seed, static_cast<std::uint64_t>(i)));
        double* row = table.values.data() + i * m;

        std::size_t col = 0;
        for (const auto& cat : spec.categoricals) {
            const double u = rng.next_uniform();
            double cum = 0.0;
            std::size_t level = cat.level_probs.size() - 1;
            for (std::size_t l = 0; l < cat.level_probs.size(); ++l) {
                cum += cat.level_probs[l];
                if (u <= cum) {
                    level = l;
                    break;
                }
            }
            for (std::size_t l = 1; l < cat.level_probs.size(); ++l) {
                row[col++] = (level == l) ? 1.0 : 0.0;
            }
        }
        for (const auto& cont : spec.continuous) {
            if (cont.kind == ContinuousBlock::Kind::Uniform) {
                row[col++] = cont.a + (cont.b - cont.a) * rng.next_uniform();
            } else {
                row[col++] = cont.a + cont.b * rng.next_normal();
            }
        }

        const auto errors = sample_error_triple(theta, rng);

        double a = params.gamma[0];
        for (std::size_t j = 0; j < x1_idx.size(); ++j) a += params.gamma[j + 1] * row[x1_idx[j]];
        double s = params.beta[0];
        for (std::size_t j = 0; j < x2_idx.size(); ++j) s += params.beta[j + 1] * row[x2_idx[j]];
        double az = params.alpha1[0];
        for (std::size_t j = 0; j < z_idx.size(); ++j) az += params.alpha1[j + 1] * row[z_idx[j]];

        const std::uint8_t d = (a + errors[0] >= 0.0) ? 1 : 0;
        const double b = (d ? az : 0.0) + s;
        const double c = params.alpha2 * d + params.w1 * s + params.w2;
        const std::uint8_t y_tau = (b + errors[1] >= 0.0) ? 1 : 0;
        const std::uint8_t y = y_tau && (c + errors[2] >= 0.0) ? 1 : 0;
        table.d[i] = d;
        table.y_tau[i] = y_tau;
        table.y[i] = y;
    }
    return table;
}

Dataset assemble_simulated(const SimulatedTable& table, const CovariateGenSpec& spec) {
    auto role_names = [](const std::string& lead, const std::vector<std::string>& cols) {
        std::vector<std::string> names{lead};
        names.insert(names.end(), cols.begin(), cols.end());
        return names;
    };
    Dataset data(role_names("const", spec.x1_columns), role_names("const", spec.x2_columns),
                 role_names("base", spec.z_columns));
    data.reserve(table.n);

    std::vector<std::size_t> x1_idx, x2_idx, z_idx;
    for (const auto& name : spec.x1_columns) x1_idx.push_back(find_column(table.names, name));
    for (const auto& name : spec.x2_columns) x2_idx.push_back(find_column(table.names, name));
    for (const auto& name : spec.z_columns) z_idx.push_back(find_column(table.names, name));

    const std::size_t m = table.names.size();
    std::vector<double> x1(x1_idx.size() + 1), x2(x2_idx.size() + 1), z(z_idx.size() + 1);
    x1[0] = x2[0] = z[0] = 1.0;
    for (std::size_t i = 0; i < table.n; ++i) {
        const double* row = table.values.data() + i * m;
        for (std::size_t j = 0; j < x1_idx.size(); ++j) x1[j + 1] = row[x1_idx[j]];
        for (std::size_t j = 0; j < x2_idx.size(); ++j) x2[j + 1] = row[x2_idx[j]];
        for (std::size_t j = 0; j < z_idx.size(); ++j) z[j + 1] = row[z_idx[j]];
        data.append_unchecked(table.d[i], table.y_tau[i], table.y[i], x1, x2, z);
    }
    return data;
}

Dataset simulate_dataset(const ParameterSet& params, const CovariateGenSpec& spec) {
    return assemble_simulated(simulate_table(params, spec), spec);
}

} // namespace adsel
