#include "adsel/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

#include "adsel/normal.hpp"

namespace adsel {

double z_p_value(double coef, double se) {
    if (!(se > 0.0)) return coef == 0.0 ? 1.0 : 0.0;
    const double z = std::abs(coef / se);
    return 2.0 * (1.0 - norm_cdf(z));
}

std::string significance_stars(double coef, double se) {
    const double p = z_p_value(coef, se);
    if (p < 0.01) return "***";
    if (p < 0.05) return "**";
    if (p < 0.10) return "*";
    return "";
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

std::string ReportTable::to_csv() const {
    std::string out = "table," + title + "\n";
    out += "label,coefficient,se,stars\n";
    for (const auto& row : rows) {
        out += row.label + "," + format_value(row.coefficient) + ",";
        if (row.has_se) {
            out += format_value(row.se) + "," + significance_stars(row.coefficient, row.se);
        } else {
            out += ",";
        }
        out += "\n";
    }
    out += "n_used," + std::to_string(n_used) + "\n";
    for (const auto& [key, value] : notes) {
        out += key + "," + value + "\n";
    }
    return out;
}

std::string tables_to_json(const std::vector<ReportTable>& tables) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& table : tables) {
        nlohmann::ordered_json t;
        t["title"] = table.title;
        t["n_used"] = table.n_used;
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto& row : table.rows) {
            nlohmann::ordered_json r;
            r["label"] = row.label;
            r["coefficient"] = format_value(row.coefficient);
            if (row.has_se) {
                r["se"] = format_value(row.se);
                r["stars"] = significance_stars(row.coefficient, row.se);
            }
            rows.push_back(std::move(r));
        }
        t["rows"] = std::move(rows);
        for (const auto& [key, value] : table.notes) t[key] = value;
        doc.push_back(std::move(t));
    }
    return doc.dump(2) + "\n";
}

void emit_report(const std::vector<ReportTable>& tables, const std::filesystem::path& path,
                 const std::string& format) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("emit_report: cannot open " + path.string());
    }
    if (format == "json") {
        out << tables_to_json(tables);
    } else if (format == "csv") {
        for (const auto& table : tables) out << table.to_csv();
    } else {
        throw std::invalid_argument("emit_report: format must be json or csv");
    }
}

} // namespace adsel
