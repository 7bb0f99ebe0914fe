#pragma once

#include <cstdint>
#include <string_view>

#include "adsel/normal.hpp"

namespace adsel {

namespace detail {
inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}
} // namespace detail

/// SplitMix64 generator. Small state, sequential or counter-derived; every
/// draw path in the project flows through this so runs are reproducible
/// bit-for-bit across platforms (no std::*_distribution involved).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64() {
        state_ += 0x9E3779B97F4A7C15ull;
        return detail::mix64(state_);
    }

    /// Uniform draw strictly inside (0,1).
    double next_uniform() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53 + 0x1.0p-54;
    }

    /// Standard normal via inverse-CDF sampling (one uniform per draw).
    double next_normal() {
        return norm_ppf(next_uniform());
    }

private:
    std::uint64_t state_;
};

/// Derive an independent substream seed from (seed, stream index).
inline std::uint64_t derive_stream(std::uint64_t seed, std::uint64_t stream) {
    return detail::mix64(seed ^ detail::mix64(stream + 0x9E3779B97F4A7C15ull));
}

/// Named substream (FNV-1a over the name folded into the seed).
inline std::uint64_t derive_stream(std::uint64_t seed, std::string_view name) {
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (char c : name) {
        h = (h ^ static_cast<unsigned char>(c)) * 0x100000001B3ull;
    }
    return derive_stream(seed, h);
}

} // namespace adsel
