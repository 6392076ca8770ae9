#ifndef RESLIM_TABLE_HPP
#define RESLIM_TABLE_HPP

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace reslim::io {

enum class Format { csv, json };

Format parse_format(const std::string& name); // "csv" | "json"
const char* extension(Format f);              // ".csv" | ".json"

/// Rectangular result table with typed cells. CSV and JSON renderings share
/// the same cells, so the two formats always carry identical data: a JSON
/// null becomes an empty CSV field, everything else is the JSON scalar
/// serialization (strings CSV-escaped as needed).
class Table {
public:
    using Cell = nlohmann::ordered_json;

    explicit Table(std::vector<std::string> columns);

    void add_row(std::vector<Cell> cells); // throws on column-count mismatch

    const std::vector<std::string>& columns() const { return columns_; }
    std::size_t n_rows() const { return rows_.size(); }

    void write(std::ostream& os, Format format) const;
    void write_csv(std::ostream& os) const;
    void write_json(std::ostream& os) const;

    /// Writes to `path_stem` + format extension; returns the full path.
    std::string write_file(const std::string& path_stem, Format format) const;

private:
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
};

std::string csv_escape(const std::string& field);

/// Shortest round-trip decimal form of x (what the JSON serializer emits).
std::string format_double(double x);

} // namespace reslim::io

#endif
