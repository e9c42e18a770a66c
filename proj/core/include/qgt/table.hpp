#pragma once

#include <map>
#include <string>
#include <vector>

namespace qgt {

/// Rectangular numeric table with named columns and a metadata block.
/// CSV: metadata as leading "# key: value" comment lines, RFC-4180 quoting,
/// shortest round-trip decimals, NaN as the literal "nan".
/// JSON: {"metadata": {...}, "columns": [...], "rows": [[...]]} with NaN as null.
struct ResultTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
    std::map<std::string, std::string> metadata;

    void validate() const;  // rectangular shape
};

std::string to_csv(const ResultTable& table);
std::string to_json(const ResultTable& table);

ResultTable table_from_json(const std::string& text);

/// Serialize to `path` in the requested format ("csv" or "json").
void emit(const ResultTable& table, const std::string& path, const std::string& format);

/// Shortest decimal that round-trips to the same double ("nan" for NaN).
std::string format_double(double value);

}  // namespace qgt
