#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "adsel/rng.hpp"
#include "adsel/target.hpp"

namespace adsel {

struct MalaConfig {
    std::size_t iterations = 5000;
    double initial_step = 0.1;
    double target_accept = 0.574; // asymptotically optimal MALA rate
    std::size_t adapt_until = 2500;
    std::uint64_t seed = 0;
    double burn_in_fraction = 0.5;
};

/// Full sampling record: one row per iteration in theta_tilde space, plus
/// acceptance flags, the step-size trajectory, and log posteriors.
struct PosteriorChain {
    std::size_t dim = 0;
    std::vector<std::string> parameter_names;
    std::vector<double> draws; // iterations x dim, row-major
    std::vector<std::uint8_t> accept_flags;
    std::vector<double> step_sizes;
    std::vector<double> log_posteriors;

    std::size_t iterations() const { return accept_flags.size(); }
    std::span<const double> row(std::size_t i) const { return {draws.data() + i * dim, dim}; }
    double acceptance_rate() const;
    /// Draws of one parameter across iterations.
    std::vector<double> column(std::size_t j) const;
};

/// One MALA transition. The caller supplies the cached log posterior and
/// gradient at `state`; on acceptance the proposal's values replace them.
struct MalaStepResult {
    bool accepted = false;
    double accept_prob = 0.0;
};

/// Deterministic core: noise and the acceptance uniform are injected, so
/// the transition can be exercised with pinned randomness.
MalaStepResult mala_step_with_noise(std::span<double> state, double& log_post,
                                    std::span<double> grad, double step, const Target& target,
                                    std::span<const double> noise, double accept_uniform);

/// Transition using `rng` for the proposal noise and acceptance draw.
MalaStepResult mala_step(std::span<double> state, double& log_post, std::span<double> grad,
                         double step, const Target& target, Rng& rng);

/// Run a full chain: Robbins-Monro step adaptation toward target_accept
/// while iteration <= adapt_until (kappa_t = t^-0.6), frozen afterwards.
/// Throws std::invalid_argument on a non-finite initial log posterior and
/// std::runtime_error when >99% of the first 200 proposals are rejected.
PosteriorChain run_chain(const Target& target, std::span<const double> init,
                         const MalaConfig& config);

/// Chain dump format: CSV with header
/// iteration,accept,step,log_posterior,<one column per parameter>.
void dump_chain_csv(const PosteriorChain& chain, std::ostream& os);
PosteriorChain load_chain_csv(std::istream& is);

} // namespace adsel
