#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "adsel/types.hpp"

namespace adsel {

/// Maps dataset columns onto model roles. The instrument must appear in
/// both x1 and x2; categorical columns are expanded to indicators with the
/// mapped reference level dropped; drop_columns are removed before any
/// role may reference them.
struct ModelSpec {
    std::string treatment_column;
    std::string intermediate_column;
    std::string final_column;
    std::vector<std::string> x1_columns;
    std::vector<std::string> x2_columns;
    std::vector<std::string> z_columns;
    std::string instrument_column;
    std::map<std::string, std::string> categorical; // column -> reference level
    std::vector<std::string> drop_columns;
};

struct IngestionReport {
    std::size_t rows_in = 0;
    std::size_t rows_kept = 0;
    std::map<std::string, std::size_t> dropped_by_reason;

    std::size_t rows_dropped() const;
};

/// Numeric column table after ingestion: categorical columns are already
/// expanded ("col=level" names), outcome/treatment columns pulled aside.
struct ColumnTable {
    std::vector<std::string> names;
    std::vector<double> values; // n x names.size(), row-major
    std::vector<std::uint8_t> d, y_tau, y;
    std::size_t n = 0;

    std::size_t column_index(const std::string& name) const;
};

struct ParsedDataset {
    Dataset data;
    IngestionReport report;
    ColumnTable table;
    std::size_t instrument_index_in_x2 = 0; // within the beta block (after the intercept)
};

/// Reads a comma-separated file with a header row. Rows with missing or
/// unparseable required fields are dropped and counted by reason, as are
/// rows violating y <= y_tau. Throws on missing columns, non-binary
/// treatment/outcome values, or an empty result.
ParsedDataset parse_dataset(const std::filesystem::path& path, const ModelSpec& spec);

/// Expansion + role assembly applied to an already-ingested table.
ParsedDataset assemble_dataset(ColumnTable table, const ModelSpec& spec,
                               IngestionReport report = {});

/// Writes d/y_tau/y plus the covariate columns, full-precision doubles
/// (round-trips exactly through parse_dataset).
void write_dataset_csv(const std::filesystem::path& path, const ColumnTable& table);

} // namespace adsel
