#pragma once

#include <span>
#include <vector>

#include "adsel/types.hpp"

namespace adsel {

/// Cells below this are floored before taking logs; their gradient
/// contribution is zeroed (exact-zero cells arise from negative-theta
/// bracket clamping).
inline constexpr double kCellFloor = 1e-300;

/// Records per reduction chunk. Chunk-internal sums are sequential and
/// chunk results are combined in index order, so totals do not depend on
/// the number of worker threads.
inline constexpr std::size_t kReductionChunk = 4096;

LinearIndices linear_indices(std::span<const double> x1, std::span<const double> x2,
                             std::span<const double> z, const ParameterSet& params);
LinearIndices linear_indices(const ImpressionRecord& rec, const ParameterSet& params);

CellProbabilities cell_probabilities(std::span<const double> x1, std::span<const double> x2,
                                     std::span<const double> z, const ParameterSet& params);
CellProbabilities cell_probabilities(const ImpressionRecord& rec, const ParameterSet& params);

double log_likelihood(const Dataset& data, const ParameterSet& params, int n_threads = 1);

std::vector<double> log_likelihood_gradient(const Dataset& data, const ParameterSet& params,
                                            int n_threads = 1);

struct LogLikEval {
    double value;
    std::vector<double> gradient; // flat ParameterSet layout
};

/// Value and analytic gradient in one pass over the data.
LogLikEval log_likelihood_with_gradient(const Dataset& data, const ParameterSet& params,
                                        int n_threads = 1);

} // namespace adsel
