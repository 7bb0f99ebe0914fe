#include "adsel/mala.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace adsel {

double PosteriorChain::acceptance_rate() const {
    if (accept_flags.empty()) return 0.0;
    double k = 0;
    for (auto f : accept_flags) k += f;
    return k / static_cast<double>(accept_flags.size());
}

std::vector<double> PosteriorChain::column(std::size_t j) const {
    std::vector<double> out(iterations());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = draws[i * dim + j];
    return out;
}

namespace {

// log q(to | from) for the Gaussian MALA proposal, up to the constant that
// cancels in the ratio.
double log_proposal(std::span<const double> to, std::span<const double> from,
                    std::span<const double> grad_from, double step) {
    const double half = 0.5 * step * step;
    double ss = 0.0;
    for (std::size_t j = 0; j < to.size(); ++j) {
        const double diff = to[j] - from[j] - half * grad_from[j];
        ss += diff * diff;
    }
    return -ss / (2.0 * step * step);
}

} // namespace

MalaStepResult mala_step_with_noise(std::span<double> state, double& log_post,
                                    std::span<double> grad, double step, const Target& target,
                                    std::span<const double> noise, double accept_uniform) {
    const std::size_t dim = state.size();
    const double half = 0.5 * step * step;

    std::vector<double> proposal(dim);
    for (std::size_t j = 0; j < dim; ++j) {
        proposal[j] = state[j] + half * grad[j] + step * noise[j];
    }

    std::vector<double> prop_grad(dim, 0.0);
    const double prop_log_post = target.value_and_gradient(proposal, prop_grad);
    if (!std::isfinite(prop_log_post)) {
        return {false, 0.0};
    }

    const double log_ratio = prop_log_post - log_post +
                             log_proposal(state, proposal, prop_grad, step) -
                             log_proposal(proposal, state, grad, step);
    const double accept_prob = std::min(1.0, std::exp(log_ratio));
    if (accept_uniform <= accept_prob) {
        std::copy(proposal.begin(), proposal.end(), state.begin());
        std::copy(prop_grad.begin(), prop_grad.end(), grad.begin());
        log_post = prop_log_post;
        return {true, accept_prob};
    }
    return {false, accept_prob};
}

MalaStepResult mala_step(std::span<double> state, double& log_post, std::span<double> grad,
                         double step, const Target& target, Rng& rng) {
    std::vector<double> noise(state.size());
    for (double& n : noise) n = rng.next_normal();
    const double u = rng.next_uniform();
    return mala_step_with_noise(state, log_post, grad, step, target, noise, u);
}

PosteriorChain run_chain(const Target& target, std::span<const double> init,
                         const MalaConfig& config) {
    const std::size_t dim = target.dim();
    if (init.size() != dim) {
        throw std::invalid_argument("run_chain: init dimension mismatch");
    }
    if (config.adapt_until > config.iterations) {
        throw std::invalid_argument("run_chain: adapt_until exceeds iterations");
    }
    if (!(config.initial_step > 0.0)) {
        throw std::invalid_argument("run_chain: initial_step must be positive");
    }
    if (!(config.burn_in_fraction >= 0.0 && config.burn_in_fraction < 1.0)) {
        throw std::invalid_argument("run_chain: burn_in_fraction must be in [0,1)");
    }

    std::vector<double> state(init.begin(), init.end());
    std::vector<double> grad(dim, 0.0);
    double log_post = target.value_and_gradient(state, grad);
    if (!std::isfinite(log_post)) {
        throw std::invalid_argument("run_chain: initial state has non-finite log posterior");
    }

    Rng rng(derive_stream(config.seed, "mala"));
    PosteriorChain chain;
    chain.dim = dim;
    chain.draws.reserve(config.iterations * dim);
    chain.accept_flags.reserve(config.iterations);
    chain.step_sizes.reserve(config.iterations);
    chain.log_posteriors.reserve(config.iterations);

    double log_step = std::log(config.initial_step);
    std::size_t accepted_in_head = 0;

    for (std::size_t t = 1; t <= config.iterations; ++t) {
        const double step = std::exp(log_step);
        const MalaStepResult res = mala_step(state, log_post, grad, step, target, rng);

        chain.draws.insert(chain.draws.end(), state.begin(), state.end());
        chain.accept_flags.push_back(res.accepted ? 1 : 0);
        chain.step_sizes.push_back(step);
        chain.log_posteriors.push_back(log_post);

        if (t <= config.adapt_until) {
            log_step += std::pow(static_cast<double>(t), -0.6) *
                        (res.accept_prob - config.target_accept);
        }

        if (t <= 200) {
            accepted_in_head += res.accepted ? 1 : 0;
            if (t == 200 && config.iterations >= 200 && accepted_in_head <= 1) {
                throw std::runtime_error(
                    "run_chain: >99% of the first 200 proposals rejected; "
                    "step size too large or posterior pathological");
            }
        }
    }
    return chain;
}

void dump_chain_csv(const PosteriorChain& chain, std::ostream& os) {
    os << "iteration,accept,step,log_posterior";
    for (std::size_t j = 0; j < chain.dim; ++j) {
        os << ',';
        if (j < chain.parameter_names.size()) {
            os << chain.parameter_names[j];
        } else {
            os << "p" << j;
        }
    }
    os << '\n';
    char buf[32];
    for (std::size_t i = 0; i < chain.iterations(); ++i) {
        os << i << ',' << static_cast<int>(chain.accept_flags[i]);
        std::snprintf(buf, sizeof buf, "%.17g", chain.step_sizes[i]);
        os << ',' << buf;
        std::snprintf(buf, sizeof buf, "%.17g", chain.log_posteriors[i]);
        os << ',' << buf;
        const auto row = chain.row(i);
        for (double v : row) {
            std::snprintf(buf, sizeof buf, "%.17g", v);
            os << ',' << buf;
        }
        os << '\n';
    }
}

PosteriorChain load_chain_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) {
        throw std::runtime_error("load_chain_csv: empty input");
    }
    std::vector<std::string> header;
    {
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) header.push_back(field);
    }
    if (header.size() < 5 || header[0] != "iteration" || header[1] != "accept" ||
        header[2] != "step" || header[3] != "log_posterior") {
        throw std::runtime_error("load_chain_csv: unexpected header");
    }

    PosteriorChain chain;
    chain.dim = header.size() - 4;
    chain.parameter_names.assign(header.begin() + 4, header.end());

    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<double> vals;
        vals.reserve(header.size());
        while (std::getline(ss, field, ',')) vals.push_back(std::stod(field));
        if (vals.size() != header.size()) {
            throw std::runtime_error("load_chain_csv: ragged row");
        }
        chain.accept_flags.push_back(vals[1] != 0.0 ? 1 : 0);
        chain.step_sizes.push_back(vals[2]);
        chain.log_posteriors.push_back(vals[3]);
        chain.draws.insert(chain.draws.end(), vals.begin() + 4, vals.end());
    }
    return chain;
}

} // namespace adsel
