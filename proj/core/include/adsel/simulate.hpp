#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "adsel/rng.hpp"
#include "adsel/types.hpp"

namespace adsel {

/// Categorical covariate block; level 0 is the reference and produces no
/// column, levels 1..L-1 expand to indicator columns "<name>_<level>".
struct CategoricalBlock {
    std::string name;
    std::vector<double> level_probs; // must sum to 1
};

struct ContinuousBlock {
    enum class Kind { Uniform, Normal };
    std::string name;
    Kind kind = Kind::Uniform;
    double a = 0.0; // lower bound / mean
    double b = 1.0; // upper bound / sd
};

/// Synthetic covariate design plus the role assignment of generated
/// columns. x1/x2/z columns are referenced by generated-column name; the
/// intercept (x1, x2) and treatment baseline (z) are implicit.
struct CovariateGenSpec {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<CategoricalBlock> categoricals;
    std::vector<ContinuousBlock> continuous;
    std::vector<std::string> x1_columns;
    std::vector<std::string> x2_columns;
    std::vector<std::string> z_columns;
    std::string instrument_column;

    std::vector<std::string> column_names() const;
};

struct Clayton3Sample {
    double u1, u2, u3;
};

/// Trivariate Clayton draw by conditional inversion. theta in (-1/2, inf);
/// |theta| below the independence epsilon returns the raw uniforms.
Clayton3Sample sample_clayton3(double theta, Rng& rng);

/// Copula draw pushed through the logistic quantile.
std::array<double, 3> sample_error_triple(double theta, Rng& rng);

/// Simulated columns as they would appear in a CSV, before role assembly.
struct SimulatedTable {
    std::vector<std::string> names;
    std::vector<double> values; // n x names.size(), row-major
    std::vector<std::uint8_t> d, y_tau, y;
    std::size_t n = 0;
};

/// Draw covariates and copula-coupled logistic errors, then push them
/// through the three-equation model. Deterministic per seed; each record
/// uses its own counter-derived substream.
SimulatedTable simulate_table(const ParameterSet& params, const CovariateGenSpec& spec);

/// simulate_table + role assembly into a fit-ready Dataset.
Dataset simulate_dataset(const ParameterSet& params, const CovariateGenSpec& spec);

/// Assemble the role matrices from simulated columns (intercept/baseline
/// prepended, columns referenced by name).
Dataset assemble_simulated(const SimulatedTable& table, const CovariateGenSpec& spec);

} // namespace adsel
