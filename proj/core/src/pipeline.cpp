#include "adsel/pipeline.hpp"

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "adsel/counterfactual.hpp"
#include "adsel/diagnostics.hpp"
#include "adsel/posterior.hpp"
#include "adsel/precondition.hpp"
#include "adsel/propensity.hpp"
#include "adsel/report.hpp"
#include "adsel/summary.hpp"

namespace adsel {

namespace {

using nlohmann::ordered_json;

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot open " + path.string() + " for writing");
    }
    out << text;
}

ParsedDataset load_data(const RunConfig& config) {
    if (config.data_path.empty()) {
        throw std::runtime_error("no dataset path configured (data.path)");
    }
    return parse_dataset(config.data_path, config.model);
}

// Initial chain state: coefficients at zero except the alpha1 baseline,
// which must be nonzero for the hierarchical prior sd to be positive.
std::vector<double> initial_state(const Dataset& data) {
    std::vector<double> x(data.k1() + data.kz() + data.k2() + 4, 0.0);
    x[data.k1()] = 0.1;            // alpha1 baseline
    x[x.size() - 3] = 0.5;         // w1
    x[x.size() - 1] = 0.1;         // theta_tilde
    return x;
}

ordered_json summary_to_json(const PosteriorSummary& summary,
                             const std::vector<HeidelbergerResult>& hw) {
    ordered_json params = ordered_json::array();
    for (std::size_t j = 0; j < summary.mean_sampling.size(); ++j) {
        ordered_json p;
        p["name"] = summary.parameter_names[j];
        p["mean"] = summary.mean_sampling[j];
        p["sd"] = summary.sd_sampling[j];
        p["mean_model"] = summary.mean_model[j];
        p["sd_model"] = summary.sd_model[j];
        p["hw_stationary"] = hw[j].stationary;
        p["hw_kept_fraction"] = hw[j].kept_fraction;
        p["hw_cvm"] = hw[j].cvm_statistic;
        params.push_back(std::move(p));
    }
    return params;
}

std::vector<HeidelbergerResult> chain_diagnostics(const PosteriorChain& chain, double alpha) {
    std::vector<HeidelbergerResult> out;
    out.reserve(chain.dim);
    for (std::size_t j = 0; j < chain.dim; ++j) {
        const auto series = chain.column(j);
        out.push_back(heidelberger_welch(series, alpha));
    }
    return out;
}

// Group labels for the LATE table, reconstructed from the indicator
// columns of the configured language column. Records with no active
// indicator belong to the reference group.
std::vector<std::string> group_labels(const ColumnTable& table, const std::string& column) {
    std::vector<std::size_t> idx;
    std::vector<std::string> level_names;
    const std::string eq_prefix = column + "=";
    const std::string us_prefix = column + "_";
    for (std::size_t j = 0; j < table.names.size(); ++j) {
        if (table.names[j].rfind(eq_prefix, 0) == 0 || table.names[j].rfind(us_prefix, 0) == 0) {
            idx.push_back(j);
            level_names.push_back(table.names[j]);
        }
    }
    if (idx.empty()) {
        throw std::runtime_error("language column '" + column + "' has no indicator columns");
    }
    const std::string ref = column + ":ref";
    std::vector<std::string> labels(table.n, ref);
    const std::size_t m = table.names.size();
    for (std::size_t i = 0; i < table.n; ++i) {
        for (std::size_t k = 0; k < idx.size(); ++k) {
            if (table.values[i * m + idx[k]] == 1.0) {
                labels[i] = level_names[k];
                break;
            }
        }
    }
    return labels;
}

ReportTable fit_to_table(const std::string& title, const FitResult& fit,
                         const std::vector<std::string>& names) {
    ReportTable table;
    table.title = title;
    table.n_used = fit.n_used;
    for (std::size_t j = 0; j < fit.coefficients.size(); ++j) {
        table.rows.push_back({names[j], fit.coefficients[j], fit.standard_errors[j], true});
    }
    return table;
}

DesignMatrix covariate_design(const Dataset& data) {
    DesignMatrix X = DesignMatrix::zeros(data.size(), data.k1(), data.x1_names());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.x1_row(i);
        for (std::size_t j = 0; j < data.k1(); ++j) X.at(i, j) = row[j];
    }
    return X;
}

std::vector<std::uint8_t> outcome_column(const Dataset& data, bool final_outcome) {
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        out[i] = final_outcome ? data.y(i) : data.y_tau(i);
    }
    return out;
}

std::vector<std::uint8_t> treatment_column(const Dataset& data) {
    std::vector<std::uint8_t> out(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) out[i] = data.d(i);
    return out;
}

ordered_json counterfactual_to_json(const CounterfactualReport& report) {
    ordered_json doc;
    doc["mode"] = report.evaluation_mode;
    doc["n"] = report.n;
    doc["n_treated"] = report.n_treated;
    doc["price_per_install"] = report.price_per_install;
    doc["ate"] = report.ate;
    doc["att"] = report.att;
    doc["adverse_selection_loss"] = report.adverse_selection_loss;
    ordered_json late = ordered_json::object();
    for (const auto& [label, v] : report.late_by_group) late[label] = v;
    doc["late_by_group"] = std::move(late);
    ordered_json cpms = ordered_json::object();
    for (const auto& [key, v] : report.cpm_equivalents) cpms[key] = v;
    doc["cpm"] = std::move(cpms);
    return doc;
}

std::string counterfactual_to_csv(const CounterfactualReport& report) {
    std::string out = "quantity,value,cpm\n";
    auto line = [&](const std::string& name, double v, double c) {
        out += name + "," + format_value(v) + "," + format_value(c) + "\n";
    };
    line("ate", report.ate, report.cpm_equivalents.at("ate"));
    line("att", report.att, report.cpm_equivalents.at("att"));
    line("adverse_selection_loss", report.adverse_selection_loss,
         report.cpm_equivalents.at("adverse_selection_loss"));
    for (const auto& [label, v] : report.late_by_group) {
        line("late:" + label, v, cpm(v, report.price_per_install));
    }
    out += "n," + std::to_string(report.n) + ",\n";
    out += "n_treated," + std::to_string(report.n_treated) + ",\n";
    out += "mode," + report.evaluation_mode + ",\n";
    return out;
}

struct StoredSummary {
    ParameterSet params; // posterior means in sampling space
    std::size_t k1 = 0, kz = 0, k2 = 0;
};

StoredSummary read_summary(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("cannot open summary " + path.string());
    }
    ordered_json doc = ordered_json::parse(in);
    StoredSummary stored;
    stored.k1 = doc.at("model").at("k1").get<std::size_t>();
    stored.kz = doc.at("model").at("kz").get<std::size_t>();
    stored.k2 = doc.at("model").at("k2").get<std::size_t>();
    std::vector<double> means;
    for (const auto& p : doc.at("parameters")) {
        means.push_back(p.at("mean").get<double>());
    }
    stored.params = ParameterSet::from_flat(means, stored.k1, stored.kz, stored.k2);
    return stored;
}

} // namespace

PosteriorChain fit_posterior_chain(const Dataset& data, const PriorSpec& prior,
                                   const MalaConfig& config, int threads) {
    PosteriorModel model(data, prior, threads);
    const std::vector<double> init = initial_state(data);

    // whiten the posterior around a crude MAP so the scalar-step proposal
    // sees comparable scales in every direction; the chain starts at the
    // MAP itself (the neutral point seeds the optimizer, not the chain --
    // starting far from the dominant basin risks trapping the sampler in
    // a spurious ridge at this scale). The mode search runs against a
    // surrogate with the hierarchical scale floored, keeping the ascent
    // and the curvature probe away from the prior's spike at
    // alpha1_baseline -> 0.
    PriorSpec surrogate = prior;
    surrogate.hier_scale_floor = 0.1;
    PosteriorModel tuning_model(data, surrogate, threads);
    const Whitening whitening = laplace_whitening(tuning_model, init, 400, 1e-4);
    const AffineTarget scaled(model, whitening.origin, whitening.chol);
    const std::vector<double> y0(model.dim(), 0.0);

    PosteriorChain raw = run_chain(scaled, y0, config);

    PosteriorChain chain;
    chain.dim = raw.dim;
    chain.accept_flags = std::move(raw.accept_flags);
    chain.step_sizes = std::move(raw.step_sizes);
    chain.log_posteriors = std::move(raw.log_posteriors);
    chain.draws.resize(raw.draws.size());
    for (std::size_t i = 0; i < chain.iterations(); ++i) {
        const auto x = scaled.to_x(raw.row(i));
        std::copy(x.begin(), x.end(), chain.draws.begin() + static_cast<std::ptrdiff_t>(i * chain.dim));
    }
    return chain;
}

int cmd_simulate(const RunConfig& config) {
    if (!config.has_true_params) {
        throw std::runtime_error("simulate: [simulate] section must define the true parameters");
    }
    if (config.covgen.n == 0) {
        throw std::runtime_error("simulate: [simulate] n must be positive");
    }
    std::filesystem::create_directories(config.out_dir);

    const SimulatedTable table = simulate_table(config.true_params, config.covgen);
    write_dataset_csv(config.out_dir / "dataset.csv", ColumnTable{table.names, table.values,
                                                                  table.d, table.y_tau, table.y,
                                                                  table.n});

    ordered_json truth;
    truth["n"] = table.n;
    truth["seed"] = config.covgen.seed;
    truth["gamma"] = config.true_params.gamma;
    truth["alpha1"] = config.true_params.alpha1;
    truth["beta"] = config.true_params.beta;
    truth["alpha2"] = config.true_params.alpha2;
    truth["w1"] = config.true_params.w1;
    truth["w2"] = config.true_params.w2;
    truth["theta_tilde"] = config.true_params.theta_tilde;
    truth["theta"] = config.true_params.theta();
    write_text(config.out_dir / "truth.json", truth.dump(2) + "\n");
    return 0;
}

int cmd_fit(const RunConfig& config) {
    const ParsedDataset parsed = load_data(config);
    std::filesystem::create_directories(config.out_dir);

    PriorSpec prior = config.prior;
    prior.instrument_index = parsed.instrument_index_in_x2;

    PosteriorChain chain = fit_posterior_chain(parsed.data, prior, config.mala, config.threads);
    chain.parameter_names = parsed.data.parameter_names();

    {
        std::ofstream out(config.out_dir / "chain.csv");
        if (!out) {
            throw std::runtime_error("cannot open chain.csv for writing");
        }
        dump_chain_csv(chain, out);
    }

    const PosteriorSummary summary = posterior_summary(chain, config.mala.burn_in_fraction);
    const auto hw = chain_diagnostics(chain, 0.05);

    ordered_json doc;
    doc["model"] = {{"k1", parsed.data.k1()},
                    {"kz", parsed.data.kz()},
                    {"k2", parsed.data.k2()},
                    {"n", parsed.data.size()},
                    {"n_treated", parsed.data.n_treated()},
                    {"instrument_index", parsed.instrument_index_in_x2}};
    doc["ingestion"] = {{"rows_in", parsed.report.rows_in},
                        {"rows_kept", parsed.report.rows_kept},
                        {"rows_dropped", parsed.report.rows_dropped()}};
    doc["mala"] = {{"iterations", chain.iterations()},
                   {"burn_in", summary.burn_in},
                   {"acceptance_rate", summary.acceptance_rate},
                   {"final_step", chain.step_sizes.back()},
                   {"seed", config.mala.seed}};
    doc["parameters"] = summary_to_json(summary, hw);
    write_text(config.out_dir / "summary.json", doc.dump(2) + "\n");
    return 0;
}

int cmd_counterfactual(const RunConfig& config, const PipelineOptions& opts) {
    const ParsedDataset parsed = load_data(config);
    std::filesystem::create_directories(config.out_dir);

    std::vector<std::string> labels;
    if (!config.language_column.empty()) {
        labels = group_labels(parsed.table, config.language_column);
    }

    const StoredSummary stored = read_summary(config.out_dir / "summary.json");
    if (stored.k1 != parsed.data.k1() || stored.kz != parsed.data.kz() ||
        stored.k2 != parsed.data.k2()) {
        throw std::runtime_error("counterfactual: summary dimensions do not match the dataset");
    }

    CounterfactualReport report;
    if (opts.average_draws) {
        std::ifstream in(config.out_dir / "chain.csv");
        if (!in) {
            throw std::runtime_error("counterfactual: chain.csv required for --average-draws");
        }
        const PosteriorChain chain = load_chain_csv(in);
        const std::size_t burn = static_cast<std::size_t>(
            config.mala.burn_in_fraction * static_cast<double>(chain.iterations()));
        const std::size_t kept = chain.iterations() - burn;
        report = counterfactual_report_draws(
            parsed.data,
            std::span<const double>(chain.draws.data() + burn * chain.dim, kept * chain.dim),
            kept, labels, config.price_per_install);
    } else {
        report = counterfactual_report(parsed.data, stored.params, labels,
                                       config.price_per_install);
    }

    write_text(config.out_dir / "counterfactual.json",
               counterfactual_to_json(report).dump(2) + "\n");
    write_text(config.out_dir / "counterfactual.csv", counterfactual_to_csv(report));
    return 0;
}

int cmd_propensity(const RunConfig& config) {
    const ParsedDataset parsed = load_data(config);
    std::filesystem::create_directories(config.out_dir);

    const Dataset& data = parsed.data;
    const DesignMatrix X = covariate_design(data);
    const auto d = treatment_column(data);

    std::vector<ReportTable> tables;
    const FitResult first_stage = probit_fit(X, d);
    tables.push_back(fit_to_table("first_stage_probit", first_stage, X.names));
    const std::vector<double> p_hat = propensity_scores(first_stage, X);

    for (const bool final_outcome : {false, true}) {
        const std::string tag = final_outcome ? "final" : "intermediate";
        const auto outcome = outcome_column(data, final_outcome);
        std::vector<double> y(outcome.begin(), outcome.end());

        for (const int degree : {1, 3}) {
            const AteResult cf = control_function_ate(y, d, p_hat, degree);
            ReportTable t = fit_to_table("control_function_deg" + std::to_string(degree) + "_" + tag,
                                         cf.fit, cf.fit.coefficients.size() == 4
                                                     ? std::vector<std::string>{"const", "d", "p",
                                                                                "d_x_p_demeaned"}
                                                     : std::vector<std::string>{"const", "d", "p",
                                                                                "p2", "p3",
                                                                                "d_x_p_demeaned"});
            t.notes.emplace_back("ate", format_value(cf.ate));
            tables.push_back(std::move(t));
        }

        const IpwResult ipw = ipw_ate(y, d, p_hat);
        ReportTable ipw_table;
        ipw_table.title = "ipw_" + tag;
        ipw_table.n_used = ipw.n_used;
        ipw_table.rows.push_back({"ate", ipw.ate, ipw.se, true});
        ipw_table.notes.emplace_back("n_trimmed", std::to_string(ipw.n_trimmed));
        tables.push_back(std::move(ipw_table));

        const double ra = regression_adjustment_ate(X, outcome, d);
        ReportTable ra_table;
        ra_table.title = "regression_adjustment_" + tag;
        ra_table.n_used = data.size();
        ra_table.rows.push_back({"ate", ra, 0.0, false});
        tables.push_back(std::move(ra_table));
    }

    const std::string ext = config.format == "csv" ? ".csv" : ".json";
    emit_report(tables, config.out_dir / ("propensity" + ext), config.format);
    return 0;
}

int cmd_naive(const RunConfig& config) {
    const ParsedDataset parsed = load_data(config);
    std::filesystem::create_directories(config.out_dir);

    const Dataset& data = parsed.data;
    const DesignMatrix X = covariate_design(data);
    const auto d = treatment_column(data);

    std::vector<ReportTable> tables;
    for (const bool final_outcome : {false, true}) {
        const std::string tag = final_outcome ? "final" : "intermediate";
        const auto outcome = outcome_column(data, final_outcome);
        const NaiveProbitResult naive = naive_probit_effect(X, d, outcome);
        std::vector<std::string> names = X.names;
        names.push_back("d");
        ReportTable t = fit_to_table("naive_probit_" + tag, naive.fit, names);
        t.notes.emplace_back("average_marginal_effect",
                             format_value(naive.average_marginal_effect));
        tables.push_back(std::move(t));
    }

    const std::string ext = config.format == "csv" ? ".csv" : ".json";
    emit_report(tables, config.out_dir / ("naive" + ext), config.format);
    return 0;
}

int cmd_diagnose(const RunConfig& config) {
    std::ifstream in(config.out_dir / "chain.csv");
    if (!in) {
        throw std::runtime_error("diagnose: cannot open chain.csv under the output directory");
    }
    const PosteriorChain chain = load_chain_csv(in);
    const PosteriorSummary summary = posterior_summary(chain, config.mala.burn_in_fraction);
    const auto hw = chain_diagnostics(chain, 0.05);

    ordered_json doc;
    doc["iterations"] = chain.iterations();
    doc["burn_in"] = summary.burn_in;
    doc["acceptance_rate"] = summary.acceptance_rate;
    doc["parameters"] = summary_to_json(summary, hw);
    write_text(config.out_dir / "diagnostics.json", doc.dump(2) + "\n");
    return 0;
}

int run_command(const std::string& subcommand, const RunConfig& config,
                const PipelineOptions& opts, std::ostream& err) {
    try {
        if (subcommand == "simulate") return cmd_simulate(config);
        if (subcommand == "fit") return cmd_fit(config);
        if (subcommand == "counterfactual") return cmd_counterfactual(config, opts);
        if (subcommand == "propensity") return cmd_propensity(config);
        if (subcommand == "naive") return cmd_naive(config);
        if (subcommand == "diagnose") return cmd_diagnose(config);
        throw std::runtime_error("unknown subcommand '" + subcommand + "'");
    } catch (const std::exception& e) {
        ordered_json record;
        record["status"] = "error";
        record["stage"] = subcommand;
        record["message"] = e.what();
        err << record.dump() << std::endl;
        return 1;
    }
}

} // namespace adsel
