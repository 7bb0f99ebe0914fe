#include "adsel/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace adsel {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(trim(field));
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& s, double& out) {
    if (s.empty()) return false;
    errno = 0;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return errno == 0 && end == s.c_str() + s.size() && std::isfinite(out);
}

// -1: not numeric-binary, else 0/1. Throws via caller on numeric non-binary.
int parse_binary(const std::string& s, bool& numeric) {
    double v;
    numeric = parse_double(s, v);
    if (!numeric) return -1;
    if (v == 0.0) return 0;
    if (v == 1.0) return 1;
    return -1;
}

} // namespace

namespace {

// ModelSpec invariant: expanded role matrices must be full rank. Mirrors
// the fitters' rank errors but catches collinearity at ingestion, naming
// the redundant columns so the user can extend drop_columns.
void check_role_rank(const char* role, const std::vector<std::string>& names,
                     const std::vector<double>& values, std::size_t rows, std::size_t cols) {
    if (rows <= cols) return; // too little data to judge; the fitters enforce n > k
    Eigen::MatrixXd m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
                values[i * cols + j];
        }
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(m);
    qr.setThreshold(1e-10);
    if (qr.rank() == m.cols()) return;
    const auto& perm = qr.colsPermutation().indices();
    std::string msg = std::string("assemble_dataset: ") + role +
                      " design matrix is rank deficient; offending columns:";
    for (Eigen::Index k = qr.rank(); k < m.cols(); ++k) {
        msg += ' ' + names[static_cast<std::size_t>(perm[k])];
    }
    throw std::runtime_error(msg);
}

} // namespace

std::size_t IngestionReport::rows_dropped() const {
    std::size_t total = 0;
    for (const auto& [reason, count] : dropped_by_reason) total += count;
    return total;
}

std::size_t ColumnTable::column_index(const std::string& name) const {
    const auto it = std::find(names.begin(), names.end(), name);
    if (it == names.end()) {
        throw std::invalid_argument("ColumnTable: unknown column '" + name + "'");
    }
    return static_cast<std::size_t>(it - names.begin());
}

ParsedDataset parse_dataset(const std::filesystem::path& path, const ModelSpec& spec) {
    std::ifstream in(path);
    if (!in) {
        throw std::runtime_error("parse_dataset: cannot open " + path.string());
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("parse_dataset: empty file " + path.string());
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::vector<std::string> header = split_csv_line(line);

    auto col_of = [&](const std::string& name) {
        const auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw std::runtime_error("parse_dataset: missing column '" + name + "'");
        }
        return static_cast<std::size_t>(it - header.begin());
    };

    const std::size_t c_d = col_of(spec.treatment_column);
    const std::size_t c_ytau = col_of(spec.intermediate_column);
    const std::size_t c_y = col_of(spec.final_column);

    // required covariate columns: union of roles minus drops
    std::set<std::string> dropped(spec.drop_columns.begin(), spec.drop_columns.end());
    for (const auto& role : {spec.x1_columns, spec.x2_columns, spec.z_columns}) {
        for (const auto& name : role) {
            if (dropped.count(name)) {
                throw std::runtime_error("parse_dataset: dropped column '" + name +
                                         "' referenced in a role");
            }
        }
    }
    std::vector<std::string> needed;
    {
        std::set<std::string> seen;
        for (const auto& role : {spec.x1_columns, spec.x2_columns, spec.z_columns}) {
            for (const auto& name : role) {
                if (seen.insert(name).second) needed.push_back(name);
            }
        }
        if (!spec.instrument_column.empty() && !seen.count(spec.instrument_column)) {
            throw std::runtime_error("parse_dataset: instrument column '" +
                                     spec.instrument_column + "' not used by any role");
        }
    }
    std::vector<std::size_t> needed_idx;
    for (const auto& name : needed) needed_idx.push_back(col_of(name));

    const std::vector<bool> is_cat = [&] {
        std::vector<bool> flags(needed.size(), false);
        for (std::size_t j = 0; j < needed.size(); ++j) {
            flags[j] = spec.categorical.count(needed[j]) > 0;
        }
        return flags;
    }();

    // first pass rows are buffered as strings per needed column so
    // categorical levels can be collected before expansion
    IngestionReport report;
    std::vector<std::uint8_t> d, ytau, y;
    std::vector<std::string> raw; // rows_kept x needed.size()

    auto drop = [&](const char* reason) { report.dropped_by_reason[reason] += 1; };

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++report.rows_in;
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            drop("wrong_column_count");
            continue;
        }
        bool numeric = false;
        const int vd = parse_binary(fields[c_d], numeric);
        if (vd < 0) {
            if (numeric) {
                throw std::runtime_error("parse_dataset: treatment column '" +
                                         spec.treatment_column + "' is not binary-valued");
            }
            drop("missing_field");
            continue;
        }
        const int vytau = parse_binary(fields[c_ytau], numeric);
        if (vytau < 0) {
            if (numeric) {
                throw std::runtime_error("parse_dataset: intermediate column '" +
                                         spec.intermediate_column + "' is not binary-valued");
            }
            drop("missing_field");
            continue;
        }
        const int vy = parse_binary(fields[c_y], numeric);
        if (vy < 0) {
            if (numeric) {
                throw std::runtime_error("parse_dataset: final column '" + spec.final_column +
                                         "' is not binary-valued");
            }
            drop("missing_field");
            continue;
        }
        if (vy > vytau) {
            drop("y_exceeds_ytau");
            continue;
        }
        bool ok = true;
        std::vector<std::string> row(needed.size());
        for (std::size_t j = 0; j < needed.size(); ++j) {
            const std::string& f = fields[needed_idx[j]];
            if (f.empty()) {
                ok = false;
                break;
            }
            if (!is_cat[j]) {
                double v;
                if (!parse_double(f, v)) {
                    ok = false;
                    break;
                }
            }
            row[j] = f;
        }
        if (!ok) {
            drop("missing_field");
            continue;
        }
        d.push_back(static_cast<std::uint8_t>(vd));
        ytau.push_back(static_cast<std::uint8_t>(vytau));
        y.push_back(static_cast<std::uint8_t>(vy));
        raw.insert(raw.end(), row.begin(), row.end());
        ++report.rows_kept;
    }

    if (report.rows_kept == 0) {
        throw std::runtime_error("parse_dataset: empty result after ingestion");
    }

    // expansion: categorical columns become one indicator per non-reference
    // level (levels sorted lexicographically for determinism)
    ColumnTable table;
    table.n = report.rows_kept;
    table.d = std::move(d);
    table.y_tau = std::move(ytau);
    table.y = std::move(y);

    struct Expansion {
        std::size_t source;
        bool categorical;
        std::vector<std::string> levels; // non-reference, sorted
    };
    std::vector<Expansion> plan;
    for (std::size_t j = 0; j < needed.size(); ++j) {
        Expansion e{j, is_cat[j], {}};
        if (is_cat[j]) {
            std::set<std::string> levels;
            for (std::size_t i = 0; i < table.n; ++i) levels.insert(raw[i * needed.size() + j]);
            const std::string& ref = spec.categorical.at(needed[j]);
            if (!levels.count(ref)) {
                throw std::runtime_error("parse_dataset: reference level '" + ref +
                                         "' absent from column '" + needed[j] + "'");
            }
            levels.erase(ref);
            e.levels.assign(levels.begin(), levels.end());
            for (const auto& lvl : e.levels) table.names.push_back(needed[j] + "=" + lvl);
        } else {
            table.names.push_back(needed[j]);
        }
        plan.push_back(std::move(e));
    }
    const std::size_t m = table.names.size();
    table.values.assign(table.n * m, 0.0);
    for (std::size_t i = 0; i < table.n; ++i) {
        std::size_t out = 0;
        for (const auto& e : plan) {
            const std::string& f = raw[i * needed.size() + e.source];
            if (e.categorical) {
                for (const auto& lvl : e.levels) {
                    table.values[i * m + out++] = (f == lvl) ? 1.0 : 0.0;
                }
            } else {
                double v;
                parse_double(f, v);
                table.values[i * m + out++] = v;
            }
        }
    }

    return assemble_dataset(std::move(table), spec, std::move(report));
}

ParsedDataset assemble_dataset(ColumnTable table, const ModelSpec& spec, IngestionReport report) {
    // a role entry naming a categorical column pulls in all its indicators
    auto expand_role = [&](const std::vector<std::string>& role) {
        std::vector<std::string> out;
        for (const auto& name : role) {
            if (spec.categorical.count(name)) {
                const std::string prefix = name + "=";
                for (const auto& col : table.names) {
                    if (col.rfind(prefix, 0) == 0) out.push_back(col);
                }
            } else {
                out.push_back(name);
            }
        }
        return out;
    };

    const std::vector<std::string> x1_cols = expand_role(spec.x1_columns);
    const std::vector<std::string> x2_cols = expand_role(spec.x2_columns);
    const std::vector<std::string> z_cols = expand_role(spec.z_columns);

    auto with_lead = [](const char* lead, const std::vector<std::string>& cols) {
        std::vector<std::string> names{lead};
        names.insert(names.end(), cols.begin(), cols.end());
        return names;
    };

    ParsedDataset out;
    out.report = std::move(report);
    out.data = Dataset(with_lead("const", x1_cols), with_lead("const", x2_cols),
                       with_lead("base", z_cols));
    out.data.reserve(table.n);

    std::vector<std::size_t> x1_idx, x2_idx, z_idx;
    for (const auto& name : x1_cols) x1_idx.push_back(table.column_index(name));
    for (const auto& name : x2_cols) x2_idx.push_back(table.column_index(name));
    for (const auto& name : z_cols) z_idx.push_back(table.column_index(name));

    if (!spec.instrument_column.empty()) {
        const auto it = std::find(x2_cols.begin(), x2_cols.end(), spec.instrument_column);
        if (it == x2_cols.end() ||
            std::find(x1_cols.begin(), x1_cols.end(), spec.instrument_column) == x1_cols.end()) {
            throw std::runtime_error("assemble_dataset: instrument column '" +
                                     spec.instrument_column + "' must appear in x1 and x2");
        }
        out.instrument_index_in_x2 = static_cast<std::size_t>(it - x2_cols.begin()) + 1;
    }

    const std::size_t m = table.names.size();
    std::vector<double> x1(x1_idx.size() + 1), x2(x2_idx.size() + 1), z(z_idx.size() + 1);
    std::vector<double> x1_all, x2_all, z_all;
    x1_all.reserve(table.n * x1.size());
    x2_all.reserve(table.n * x2.size());
    z_all.reserve(table.n * z.size());
    x1[0] = x2[0] = z[0] = 1.0;
    for (std::size_t i = 0; i < table.n; ++i) {
        const double* row = table.values.data() + i * m;
        for (std::size_t j = 0; j < x1_idx.size(); ++j) x1[j + 1] = row[x1_idx[j]];
        for (std::size_t j = 0; j < x2_idx.size(); ++j) x2[j + 1] = row[x2_idx[j]];
        for (std::size_t j = 0; j < z_idx.size(); ++j) z[j + 1] = row[z_idx[j]];
        out.data.append_unchecked(table.d[i], table.y_tau[i], table.y[i], x1, x2, z);
        x1_all.insert(x1_all.end(), x1.begin(), x1.end());
        x2_all.insert(x2_all.end(), x2.begin(), x2.end());
        z_all.insert(z_all.end(), z.begin(), z.end());
    }
    check_role_rank("x1", out.data.x1_names(), x1_all, table.n, x1.size());
    check_role_rank("x2", out.data.x2_names(), x2_all, table.n, x2.size());
    check_role_rank("z", out.data.z_names(), z_all, table.n, z.size());
    out.table = std::move(table);
    return out;
}

void write_dataset_csv(const std::filesystem::path& path, const ColumnTable& table) {
    std::ofstream outf(path);
    if (!outf) {
        throw std::runtime_error("write_dataset_csv: cannot open " + path.string());
    }
    outf << "d,ytau,y";
    for (const auto& name : table.names) outf << ',' << name;
    outf << '\n';
    char buf[32];
    const std::size_t m = table.names.size();
    for (std::size_t i = 0; i < table.n; ++i) {
        outf << static_cast<int>(table.d[i]) << ',' << static_cast<int>(table.y_tau[i]) << ','
             << static_cast<int>(table.y[i]);
        for (std::size_t j = 0; j < m; ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", table.values[i * m + j]);
            outf << ',' << buf;
        }
        outf << '\n';
    }
}

} // namespace adsel
