#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "adsel/dataset_io.hpp"
#include "adsel/mala.hpp"
#include "adsel/prior.hpp"
#include "adsel/simulate.hpp"
#include "adsel/types.hpp"

namespace adsel {

/// Flat key/value configuration with [section] headers, '#' comments, and
/// repeatable keys (categorical/continuous blocks). Grammar documented in
/// the README.
class ConfigFile {
public:
    static ConfigFile parse(const std::filesystem::path& path);
    static ConfigFile parse_string(const std::string& text);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key, double fallback) const;
    std::uint64_t get_u64(const std::string& section, const std::string& key,
                          std::uint64_t fallback) const;
    std::vector<std::string> get_list(const std::string& section, const std::string& key) const;
    std::vector<double> get_double_list(const std::string& section, const std::string& key) const;
    /// All values for a repeatable key, in file order.
    std::vector<std::string> get_all(const std::string& section, const std::string& key) const;

private:
    // (section, key, value) triples in file order
    std::vector<std::array<std::string, 3>> entries_;
};

/// Everything a pipeline run needs; sections [data], [prior], [mala],
/// [simulate], [report].
struct RunConfig {
    ModelSpec model;
    std::filesystem::path data_path;
    PriorSpec prior;
    MalaConfig mala;
    CovariateGenSpec covgen;
    ParameterSet true_params; // simulate mode
    bool has_true_params = false;
    double price_per_install = 0.52;
    int threads = 1;
    std::string language_column; // optional LATE grouping column
    std::filesystem::path out_dir = ".";
    std::string format = "json"; // json | csv

    static RunConfig load(const std::filesystem::path& path);
    static RunConfig from_config(const ConfigFile& cfg);
};

} // namespace adsel
