#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "adsel/clayton.hpp"
#include "adsel/mala.hpp"
#include "adsel/pipeline.hpp"

using namespace adsel;
using nlohmann::ordered_json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("adsel_pipe_" + std::to_string(reinterpret_cast<std::uintptr_t>(this)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

// small but real end-to-end configuration
std::string pipeline_config(const fs::path& dir, std::size_t n, std::size_t iterations) {
    std::ostringstream cfg;
    cfg << "[data]\n"
        << "path = " << (dir / "dataset.csv").string() << "\n"
        << "x1 = volume,lang_1\n"
        << "x2 = volume,lang_1\n"
        << "z = lang_1\n"
        << "instrument = volume\n"
        << "language_column = lang\n"
        << "[mala]\n"
        << "iterations = " << iterations << "\n"
        << "initial_step = 0.01\n"
        << "seed = 42\n"
        << "[simulate]\n"
        << "n = " << n << "\n"
        << "seed = 42\n"
        << "categorical = lang:0.55,0.45\n"
        << "continuous = volume:uniform:0:1\n"
        << "x1 = volume,lang_1\n"
        << "x2 = volume,lang_1\n"
        << "z = lang_1\n"
        << "instrument = volume\n"
        << "gamma = 0.2,-0.5,0.3\n"
        << "alpha1 = -0.2,0.3\n"
        << "beta = -0.4,0.1,0.25\n"
        << "alpha2 = 0.141\n"
        << "w1 = 0.5\n"
        << "w2 = -0.2\n"
        << "theta = -0.35\n"
        << "[run]\n"
        << "threads = 2\n";
    return cfg.str();
}

RunConfig make_config(const TempDir& dir, std::size_t n, std::size_t iterations) {
    RunConfig rc = RunConfig::from_config(
        ConfigFile::parse_string(pipeline_config(dir.path, n, iterations)));
    rc.out_dir = dir.path;
    return rc;
}

ordered_json read_json(const fs::path& p) {
    std::ifstream in(p);
    REQUIRE(in.good());
    return ordered_json::parse(in);
}

} // namespace

TEST_SUITE_BEGIN("pipeline");

TEST_CASE("simulate, fit, counterfactual, diagnose chain together") {
    TempDir dir;
    RunConfig config = make_config(dir, 3000, 700);

    REQUIRE(cmd_simulate(config) == 0);
    REQUIRE(fs::exists(dir.path / "dataset.csv"));
    REQUIRE(fs::exists(dir.path / "truth.json"));

    REQUIRE(cmd_fit(config) == 0);
    REQUIRE(fs::exists(dir.path / "chain.csv"));
    const auto summary = read_json(dir.path / "summary.json");
    CHECK(summary.at("model").at("n").get<std::size_t>() == 3000);
    CHECK(summary.at("model").at("instrument_index").get<std::size_t>() == 1);
    CHECK(summary.at("mala").at("iterations").get<std::size_t>() == 700);
    const auto params = summary.at("parameters");
    REQUIRE(params.size() == 3 + 2 + 3 + 4);
    for (const auto& p : params) {
        CHECK(std::isfinite(p.at("mean").get<double>()));
        CHECK(p.at("sd").get<double>() >= 0.0);
    }
    CHECK(params.back().at("name").get<std::string>() == "theta_tilde");

    // every stored draw respects the copula domain
    {
        std::ifstream in(dir.path / "chain.csv");
        const PosteriorChain chain = load_chain_csv(in);
        for (std::size_t i = 0; i < chain.iterations(); ++i) {
            const double tt = chain.row(i)[chain.dim - 1];
            CHECK(theta_transform(tt).theta > -0.5);
        }
        // step sizes freeze after adaptation (default adapt_until = iterations/2)
        const double frozen = chain.step_sizes[350];
        for (std::size_t i = 350; i < chain.iterations(); ++i) {
            CHECK(chain.step_sizes[i] == frozen);
        }
    }

    REQUIRE(cmd_counterfactual(config, {}) == 0);
    const auto cf = read_json(dir.path / "counterfactual.json");
    CHECK(cf.at("mode").get<std::string>() == "posterior_mean");
    CHECK(cf.at("n").get<std::size_t>() == 3000);
    const double ate = cf.at("ate").get<double>();
    const double cpm_ate = cf.at("cpm").at("ate").get<double>();
    CHECK(cpm_ate == doctest::Approx(ate * 0.52 * 1000.0).epsilon(1e-12));
    CHECK(cf.at("late_by_group").size() == 2);
    REQUIRE(fs::exists(dir.path / "counterfactual.csv"));

    // draw-averaged variant runs and differs in mode
    PipelineOptions opts;
    opts.average_draws = true;
    RunConfig cheap = config;
    REQUIRE(cmd_counterfactual(cheap, opts) == 0);
    CHECK(read_json(dir.path / "counterfactual.json").at("mode").get<std::string>() ==
          "draw_average");

    // diagnose recomputes exactly the parameter block of summary.json
    REQUIRE(cmd_diagnose(config) == 0);
    const auto diag = read_json(dir.path / "diagnostics.json");
    CHECK(diag.at("parameters") == summary.at("parameters"));
    CHECK(diag.at("acceptance_rate") == summary.at("mala").at("acceptance_rate"));
}

TEST_CASE("propensity and naive reports") {
    TempDir dir;
    RunConfig config = make_config(dir, 4000, 200);
    REQUIRE(cmd_simulate(config) == 0);

    REQUIRE(cmd_propensity(config) == 0);
    const auto tables = read_json(dir.path / "propensity.json");
    REQUIRE(tables.is_array());
    CHECK(tables.size() == 1 + 2 * 4); // first stage + 4 estimators per outcome
    CHECK(tables[0].at("title").get<std::string>() == "first_stage_probit");
    bool saw_cf3 = false;
    for (const auto& t : tables) {
        if (t.at("title").get<std::string>() == "control_function_deg3_final") saw_cf3 = true;
    }
    CHECK(saw_cf3);

    config.format = "csv";
    REQUIRE(cmd_naive(config) == 0);
    REQUIRE(fs::exists(dir.path / "naive.csv"));
    std::ifstream in(dir.path / "naive.csv");
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str().find("naive_probit_intermediate") != std::string::npos);
    CHECK(ss.str().find("average_marginal_effect") != std::string::npos);
}

TEST_CASE("run_command surfaces machine-readable errors") {
    TempDir dir;
    RunConfig config = make_config(dir, 100, 100);
    config.data_path = dir.path / "missing.csv";
    std::ostringstream err;
    const int code = run_command("fit", config, {}, err);
    CHECK(code != 0);
    const auto record = ordered_json::parse(err.str());
    CHECK(record.at("status").get<std::string>() == "error");
    CHECK(record.at("stage").get<std::string>() == "fit");
    CHECK(record.at("message").get<std::string>().find("cannot open") != std::string::npos);

    std::ostringstream err2;
    CHECK(run_command("bogus", config, {}, err2) != 0);
}

TEST_CASE("empty dataset surfaces the ingestion error through run_command") {
    TempDir dir;
    RunConfig config = make_config(dir, 100, 100);
    {
        std::ofstream out(dir.path / "dataset.csv");
        out << "d,ytau,y,volume,lang_1\n"; // header only
    }
    std::ostringstream err;
    CHECK(run_command("fit", config, {}, err) != 0);
    CHECK(err.str().find("empty") != std::string::npos);
}

TEST_CASE("cli binary smoke test") {
    TempDir dir;
    const std::string cfg_path = (dir.path / "run.cfg").string();
    {
        std::ofstream out(cfg_path);
        out << pipeline_config(dir.path, 300, 150);
    }
    const std::string cmd = std::string(ADSEL_CLI_PATH) + " simulate --config " + cfg_path +
                            " --out " + dir.path.string() + " > /dev/null 2>&1";
    CHECK(std::system(cmd.c_str()) == 0);
    CHECK(fs::exists(dir.path / "dataset.csv"));

    const std::string bad = std::string(ADSEL_CLI_PATH) + " fit --config " + cfg_path +
                            " --data /nonexistent.csv --out " + dir.path.string() +
                            " > /dev/null 2>&1";
    CHECK(std::system(bad.c_str()) != 0);
}

TEST_SUITE_END();
