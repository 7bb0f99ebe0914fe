#include "adsel/config.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace adsel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string field;
    while (std::getline(ss, field, sep)) out.push_back(trim(field));
    return out;
}

} // namespace

ConfigFile ConfigFile::parse_string(const std::string& text) {
    ConfigFile cfg;
    std::stringstream ss(text);
    std::string line;
    std::string section;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::runtime_error("config line " + std::to_string(lineno) +
                                         ": unterminated section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        }
        cfg.entries_.push_back({section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))});
    }
    return cfg;
}

ConfigFile ConfigFile::parse(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("config: cannot open " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    for (const auto& e : entries_) {
        if (e[0] == section && e[1] == key) return true;
    }
    return false;
}

std::string ConfigFile::get(const std::string& section, const std::string& key) const {
    for (const auto& e : entries_) {
        if (e[0] == section && e[1] == key) return e[2];
    }
    throw std::runtime_error("config: missing required key " + section + "." + key);
}

std::string ConfigFile::get_or(const std::string& section, const std::string& key,
                               const std::string& fallback) const {
    return has(section, key) ? get(section, key) : fallback;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    try {
        return std::stod(v);
    } catch (const std::exception&) {
        throw std::runtime_error("config: " + section + "." + key + " is not a number: " + v);
    }
}

std::uint64_t ConfigFile::get_u64(const std::string& section, const std::string& key,
                                  std::uint64_t fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key);
    try {
        return std::stoull(v);
    } catch (const std::exception&) {
        throw std::runtime_error("config: " + section + "." + key + " is not an integer: " + v);
    }
}

std::vector<std::string> ConfigFile::get_list(const std::string& section,
                                              const std::string& key) const {
    if (!has(section, key)) return {};
    std::vector<std::string> out;
    for (auto& item : split(get(section, key), ',')) {
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<double> ConfigFile::get_double_list(const std::string& section,
                                                const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : get_list(section, key)) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw std::runtime_error("config: " + section + "." + key +
                                     " has a non-numeric entry: " + item);
        }
    }
    return out;
}

std::vector<std::string> ConfigFile::get_all(const std::string& section,
                                             const std::string& key) const {
    std::vector<std::string> out;
    for (const auto& e : entries_) {
        if (e[0] == section && e[1] == key) out.push_back(e[2]);
    }
    return out;
}

RunConfig RunConfig::from_config(const ConfigFile& cfg) {
    RunConfig rc;

    rc.data_path = cfg.get_or("data", "path", "");
    rc.model.treatment_column = cfg.get_or("data", "treatment", "d");
    rc.model.intermediate_column = cfg.get_or("data", "intermediate", "ytau");
    rc.model.final_column = cfg.get_or("data", "final", "y");
    rc.model.x1_columns = cfg.get_list("data", "x1");
    rc.model.x2_columns = cfg.get_list("data", "x2");
    rc.model.z_columns = cfg.get_list("data", "z");
    rc.model.instrument_column = cfg.get_or("data", "instrument", "");
    rc.model.drop_columns = cfg.get_list("data", "drop");
    rc.language_column = cfg.get_or("data", "language_column", "");
    for (const auto& item : cfg.get_all("data", "categorical")) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw std::runtime_error("config: data.categorical expects column:reference, got " +
                                     item);
        }
        rc.model.categorical[parts[0]] = parts[1];
    }

    rc.prior.default_sd = cfg.get_double("prior", "default_sd", 100.0);
    rc.prior.w1_mean = cfg.get_double("prior", "w1_mean", 0.5);
    rc.prior.w1_sd = cfg.get_double("prior", "w1_sd", 0.5);
    rc.prior.delta = cfg.get_double("prior", "delta", 0.25);

    rc.mala.iterations = static_cast<std::size_t>(cfg.get_u64("mala", "iterations", 5000));
    rc.mala.initial_step = cfg.get_double("mala", "initial_step", 0.1);
    rc.mala.target_accept = cfg.get_double("mala", "target_accept", 0.574);
    rc.mala.adapt_until = static_cast<std::size_t>(
        cfg.get_u64("mala", "adapt_until", rc.mala.iterations / 2));
    rc.mala.seed = cfg.get_u64("mala", "seed", 1);
    rc.mala.burn_in_fraction = cfg.get_double("mala", "burn_in_fraction", 0.5);

    rc.price_per_install = cfg.get_double("report", "price_per_install", 0.52);
    rc.format = cfg.get_or("report", "format", "json");
    rc.threads = static_cast<int>(cfg.get_u64("run", "threads", 1));

    // [simulate]: covariate blocks, role assignment, true parameters
    rc.covgen.n = static_cast<std::size_t>(cfg.get_u64("simulate", "n", 0));
    rc.covgen.seed = cfg.get_u64("simulate", "seed", rc.mala.seed);
    for (const auto& item : cfg.get_all("simulate", "categorical")) {
        const auto parts = split(item, ':');
        if (parts.size() != 2) {
            throw std::runtime_error("config: simulate.categorical expects name:p0,p1,..., got " +
                                     item);
        }
        CategoricalBlock block;
        block.name = parts[0];
        for (const auto& p : split(parts[1], ',')) block.level_probs.push_back(std::stod(p));
        rc.covgen.categoricals.push_back(std::move(block));
    }
    for (const auto& item : cfg.get_all("simulate", "continuous")) {
        const auto parts = split(item, ':');
        if (parts.size() != 4 || (parts[1] != "uniform" && parts[1] != "normal")) {
            throw std::runtime_error(
                "config: simulate.continuous expects name:uniform|normal:a:b, got " + item);
        }
        ContinuousBlock block;
        block.name = parts[0];
        block.kind = parts[1] == "uniform" ? ContinuousBlock::Kind::Uniform
                                           : ContinuousBlock::Kind::Normal;
        block.a = std::stod(parts[2]);
        block.b = std::stod(parts[3]);
        rc.covgen.continuous.push_back(std::move(block));
    }
    rc.covgen.x1_columns = cfg.get_list("simulate", "x1");
    rc.covgen.x2_columns = cfg.get_list("simulate", "x2");
    rc.covgen.z_columns = cfg.get_list("simulate", "z");
    rc.covgen.instrument_column = cfg.get_or("simulate", "instrument", "");

    if (cfg.has("simulate", "gamma")) {
        rc.true_params.gamma = cfg.get_double_list("simulate", "gamma");
        rc.true_params.alpha1 = cfg.get_double_list("simulate", "alpha1");
        rc.true_params.beta = cfg.get_double_list("simulate", "beta");
        rc.true_params.alpha2 = cfg.get_double("simulate", "alpha2", 0.0);
        rc.true_params.w1 = cfg.get_double("simulate", "w1", 0.5);
        rc.true_params.w2 = cfg.get_double("simulate", "w2", 0.0);
        if (cfg.has("simulate", "theta_tilde")) {
            rc.true_params.theta_tilde = cfg.get_double("simulate", "theta_tilde", 0.0);
        } else {
            // theta given in copula space: map onto the right branch
            const double theta = cfg.get_double("simulate", "theta", 0.0);
            if (theta <= -1.0) {
                throw std::runtime_error("config: simulate.theta must exceed -1");
            }
            rc.true_params.theta_tilde = std::sqrt(theta + 1.0) - 1.0;
        }
        rc.has_true_params = true;
    }

    return rc;
}

RunConfig RunConfig::load(const std::filesystem::path& path) {
    return from_config(ConfigFile::parse(path));
}

} // namespace adsel
