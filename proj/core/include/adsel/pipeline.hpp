#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "adsel/config.hpp"
#include "adsel/mala.hpp"

namespace adsel {

/// Whitened-space MALA fit: crude MAP + Laplace preconditioning, then the
/// chain from the configured neutral initialization; draws are returned in
/// the flat theta_tilde-space parameterization.
PosteriorChain fit_posterior_chain(const Dataset& data, const PriorSpec& prior,
                                   const MalaConfig& config, int threads);

/// Subcommand options resolved from CLI flags; every field overrides the
/// corresponding config entry when set.
struct PipelineOptions {
    bool average_draws = false; // counterfactual over post-burn-in draws
};

/// Each command returns 0 on success and writes its artifacts under
/// config.out_dir. Failures surface as exceptions; run_command turns them
/// into a machine-readable error record on `err` and a nonzero exit code.
int cmd_simulate(const RunConfig& config);
int cmd_fit(const RunConfig& config);
int cmd_counterfactual(const RunConfig& config, const PipelineOptions& opts);
int cmd_propensity(const RunConfig& config);
int cmd_naive(const RunConfig& config);
int cmd_diagnose(const RunConfig& config);

int run_command(const std::string& subcommand, const RunConfig& config,
                const PipelineOptions& opts, std::ostream& err);

} // namespace adsel
