#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace adsel {

/// Two-sided normal p-value for z = coef/se.
double z_p_value(double coef, double se);

/// Significance stars: *** p<0.01, ** p<0.05, * p<0.10.
std::string significance_stars(double coef, double se);

/// Fixed 6-significant-digit formatting used for every report value.
std::string format_value(double v);

struct TableRow {
    std::string label;
    double coefficient = 0.0;
    double se = 0.0;
    bool has_se = true;
};

/// Regression-style report table (coefficient, SE, stars per row).
struct ReportTable {
    std::string title;
    std::vector<TableRow> rows;
    std::vector<std::pair<std::string, std::string>> notes; // ordered key/value footer
    std::size_t n_used = 0;

    std::string to_csv() const;
};

/// Writes the table in the requested format ("json" or "csv"); emission is
/// deterministic field ordering, byte-identical for identical inputs.
void emit_report(const std::vector<ReportTable>& tables, const std::filesystem::path& path,
                 const std::string& format);

std::string tables_to_json(const std::vector<ReportTable>& tables);

} // namespace adsel
