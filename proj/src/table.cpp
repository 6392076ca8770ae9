#include "reslim/table.hpp"
#include "reslim/errors.hpp"

#include <fstream>
#include <ostream>
#include <stdexcept>

namespace reslim::io {

Format parse_format(const std::string& name) {
    if (name == "csv") return Format::csv;
    if (name == "json") return Format::json;
    throw std::invalid_argument("unknown output format '" + name + "' (expected csv or json)");
}

const char* extension(Format f) {
    return f == Format::csv ? ".csv" : ".json";
}

Table::Table(std::vector<std::string> columns) : columns_(std::move(columns)) {
    if (columns_.empty()) throw std::invalid_argument("Table: at least one column required");
}

void Table::add_row(std::vector<Cell> cells) {
    if (cells.size() != columns_.size())
        throw std::invalid_argument("Table: row has " + std::to_string(cells.size()) +
                                    " cells, expected " + std::to_string(columns_.size()));
    rows_.push_back(std::move(cells));
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string format_double(double x) {
    return nlohmann::ordered_json(x).dump();
}

namespace {

std::string render_csv_cell(const Table::Cell& cell) {
    if (cell.is_null()) return "";
    if (cell.is_string()) return csv_escape(cell.get<std::string>());
    return cell.dump();
}

} // namespace

void Table::write_csv(std::ostream& os) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (i) os << ',';
        os << csv_escape(columns_[i]);
    }
    os << '\n';
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << ',';
            os << render_csv_cell(row[i]);
        }
        os << '\n';
    }
}

void Table::write_json(std::ostream& os) const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    os << arr.dump(2) << '\n';
}

void Table::write(std::ostream& os, Format format) const {
    format == Format::csv ? write_csv(os) : write_json(os);
}

std::string Table::write_file(const std::string& path_stem, Format format) const {
    const std::string path = path_stem + extension(format);
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open output file: " + path);
    write(os, format);
    if (!os) throw io_error("write failed: " + path);
    return path;
}

} // namespace reslim::io
