#include "qgt/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace qgt {

void ResultTable::validate() const {
    for (const auto& row : rows) {
        if (row.size() != columns.size()) {
            throw std::invalid_argument("ResultTable: ragged row (expected " +
                                        std::to_string(columns.size()) + " fields, got " +
                                        std::to_string(row.size()) + ")");
        }
    }
}

std::string format_double(double value) {
    if (std::isnan(value)) return "nan";
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

namespace {

std::string csv_quote(const std::string& field) {
    if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
    std::string quoted = "\"";
    for (const char c : field) {
        if (c == '"') quoted += '"';
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

}  // namespace

std::string to_csv(const ResultTable& table) {
    table.validate();
    std::ostringstream out;
    for (const auto& [key, value] : table.metadata) {
        out << "# " << key << ": " << value << "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        if (c) out << ",";
        out << csv_quote(table.columns[c]);
    }
    out << "\n";
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out << ",";
            out << format_double(row[c]);
        }
        out << "\n";
    }
    return out.str();
}

std::string to_json(const ResultTable& table) {
    table.validate();
    nlohmann::json j;
    j["metadata"] = nlohmann::json::object();
    for (const auto& [key, value] : table.metadata) j["metadata"][key] = value;
    j["columns"] = table.columns;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json jrow = nlohmann::json::array();
        for (const double v : row) {
            if (std::isnan(v)) {
                jrow.push_back(nullptr);
            } else {
                jrow.push_back(v);
            }
        }
        j["rows"].push_back(std::move(jrow));
    }
    return j.dump(2) + "\n";
}

ResultTable table_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    ResultTable table;
    for (const auto& [key, value] : j.at("metadata").items()) {
        table.metadata[key] = value.get<std::string>();
    }
    table.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& jrow : j.at("rows")) {
        std::vector<double> row;
        row.reserve(jrow.size());
        for (const auto& v : jrow) {
            row.push_back(v.is_null() ? std::nan("") : v.get<double>());
        }
        table.rows.push_back(std::move(row));
    }
    table.validate();
    return table;
}

void emit(const ResultTable& table, const std::string& path, const std::string& format) {
    std::string text;
    if (format == "csv") {
        text = to_csv(table);
    } else if (format == "json") {
        text = to_json(table);
    } else {
        throw std::invalid_argument("emit: unknown format '" + format + "' (expected csv or json)");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("emit: cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw std::runtime_error("emit: write failed for '" + path + "'");
}

}  // namespace qgt
