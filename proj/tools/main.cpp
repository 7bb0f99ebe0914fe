#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "adsel/pipeline.hpp"

// Endogenous-treatment estimation pipeline:
//   adsel simulate|fit|counterfactual|propensity|naive|diagnose --config run.cfg [...]
int main(int argc, char** argv) {
    CLI::App app{"adsel: endogenous binary-treatment effects under copula selection"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string config_path;
    std::string out_dir;
    std::string format;
    std::string data_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    std::uint64_t iterations = 0;
    double delta = -1.0;
    double price = -1.0;
    int threads = 0;
    bool average_draws = false;

    app.add_option("--config", config_path, "run configuration file")->required();
    app.add_option("--out", out_dir, "output directory (default: current directory)");
    app.add_option("--format", format, "report format: json|csv")
        ->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--data", data_path, "override data.path");
    auto* seed_opt = app.add_option("--seed", seed, "override every seed in the run");
    app.add_option("--threads", threads, "likelihood reduction threads");

    CLI::App* sim = app.add_subcommand("simulate", "emit a synthetic dataset");
    CLI::App* fit = app.add_subcommand("fit", "run the MALA chain and summarize the posterior");
    fit->add_option("--iterations", iterations, "override mala.iterations");
    fit->add_option("--delta", delta, "override the plausible-exogeneity scale");
    CLI::App* cf = app.add_subcommand("counterfactual", "treatment-effect and revenue report");
    cf->add_option("--price", price, "price per install (dollars)");
    cf->add_flag("--average-draws", average_draws, "average over post-burn-in draws");
    app.add_subcommand("propensity", "propensity-score benchmark estimators");
    app.add_subcommand("naive", "probit regressions without selection control");
    app.add_subcommand("diagnose", "re-run diagnostics on a stored chain dump");
    (void)sim;

    CLI11_PARSE(app, argc, argv);
    seed_set = seed_opt->count() > 0;

    try {
        adsel::RunConfig config = adsel::RunConfig::load(config_path);
        if (!out_dir.empty()) config.out_dir = out_dir;
        if (!format.empty()) config.format = format;
        if (!data_path.empty()) config.data_path = data_path;
        if (seed_set) {
            config.mala.seed = seed;
            config.covgen.seed = seed;
        }
        if (iterations > 0) {
            config.mala.iterations = iterations;
            config.mala.adapt_until = iterations / 2;
        }
        if (delta >= 0.0) config.prior.delta = delta;
        if (price >= 0.0) config.price_per_install = price;
        if (threads > 0) config.threads = threads;

        adsel::PipelineOptions opts;
        opts.average_draws = average_draws;
        const std::string subcommand = app.get_subcommands().front()->get_name();
        return adsel::run_command(subcommand, config, opts, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << R"({"status":"error","stage":"config","message":")" << e.what() << "\"}"
                  << std::endl;
        return 1;
    }
}
