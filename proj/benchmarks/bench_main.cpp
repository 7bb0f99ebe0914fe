#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "adsel/clayton.hpp"
#include "adsel/likelihood.hpp"
#include "adsel/posterior.hpp"
#include "adsel/propensity.hpp"
#include "adsel/rng.hpp"
#include "adsel/simulate.hpp"

using namespace adsel;

namespace {

CovariateGenSpec bench_design(std::size_t n) {
    CovariateGenSpec spec;
    spec.n = n;
    spec.seed = 99;
    spec.categoricals.push_back({"lang", {0.40, 0.35, 0.25}});
    spec.categoricals.push_back({"wifi", {0.25, 0.75}});
    spec.continuous.push_back({"volume", ContinuousBlock::Kind::Uniform, -1.0, 1.0});
    spec.continuous.push_back({"res", ContinuousBlock::Kind::Normal, 0.0, 0.7});
    spec.continuous.push_back({"version", ContinuousBlock::Kind::Uniform, -1.0, 1.0});
    spec.x1_columns = {"lang_1", "lang_2", "wifi_1", "volume", "res", "version"};
    spec.x2_columns = {"lang_1", "lang_2", "wifi_1", "volume", "res", "version"};
    spec.z_columns = {"lang_1", "lang_2"};
    return spec;
}

ParameterSet bench_params() {
    ParameterSet p;
    p.gamma = {-0.05, 0.25, -0.3, 0.35, -1.3, -0.2, 0.25};
    p.alpha1 = {-0.2, 0.35, -0.15};
    p.beta = {-0.3, 0.7, 0.35, -0.55, 0.02, 0.6, -0.5};
    p.alpha2 = 0.141;
    p.w1 = 0.5;
    p.w2 = 0.2;
    p.theta_tilde = std::sqrt(0.65) - 1.0;
    return p;
}

const Dataset& bench_data() {
    static const Dataset data = simulate_dataset(bench_params(), bench_design(20000));
    return data;
}

void BM_ClaytonCdf3(benchmark::State& state) {
    double u = 0.31, v = 0.72, w = 0.55;
    for (auto _ : state) {
        benchmark::DoNotOptimize(clayton_cdf3(u, v, w, -0.35));
        benchmark::DoNotOptimize(clayton_cdf3(u, v, w, 2.0));
    }
}
BENCHMARK(BM_ClaytonCdf3);

void BM_ClaytonPartials3(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(clayton_cdf3_partials(0.31, 0.72, 0.55, -0.35));
    }
}
BENCHMARK(BM_ClaytonPartials3);

void BM_SampleClayton3(benchmark::State& state) {
    Rng rng(1);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sample_clayton3(-0.35, rng));
    }
}
BENCHMARK(BM_SampleClayton3);

void BM_CellProbabilities(benchmark::State& state) {
    const auto& data = bench_data();
    const ParameterSet params = bench_params();
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            cell_probabilities(data.x1_row(i), data.x2_row(i), data.z_row(i), params));
        i = (i + 1) % data.size();
    }
}
BENCHMARK(BM_CellProbabilities);

void BM_LogLikelihood(benchmark::State& state) {
    const auto& data = bench_data();
    const ParameterSet params = bench_params();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_likelihood(data, params, threads));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(bench_data().size()));
}
BENCHMARK(BM_LogLikelihood)->Arg(1)->Arg(2);

void BM_LogLikelihoodGradient(benchmark::State& state) {
    const auto& data = bench_data();
    const ParameterSet params = bench_params();
    const int threads = static_cast<int>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(log_likelihood_with_gradient(data, params, threads));
    }
    state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()) *
                            static_cast<std::int64_t>(bench_data().size()));
}
BENCHMARK(BM_LogLikelihoodGradient)->Arg(1)->Arg(2);

void BM_ProbitFit(benchmark::State& state) {
    const auto& data = bench_data();
    DesignMatrix X = DesignMatrix::zeros(data.size(), data.k1(), data.x1_names());
    std::vector<std::uint8_t> d(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
        const auto row = data.x1_row(i);
        for (std::size_t j = 0; j < data.k1(); ++j) X.at(i, j) = row[j];
        d[i] = data.d(i);
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(probit_fit(X, d));
    }
}
BENCHMARK(BM_ProbitFit);

} // namespace

BENCHMARK_MAIN();
