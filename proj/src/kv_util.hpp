#ifndef RESLIM_SRC_KV_UTIL_HPP
#define RESLIM_SRC_KV_UTIL_HPP

#include "reslim/errors.hpp"

#include <istream>
#include <string>
#include <vector>

// Line-oriented "key = value" config parsing shared by the params and
// exclusion-policy file formats. '#' starts a comment; blank lines ignored.
namespace reslim::detail {

struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

inline std::vector<KvEntry> parse_kv(std::istream& is, const std::string& source) {
    std::vector<KvEntry> entries;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string stripped = trim(line);
        if (stripped.empty()) continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw io_error(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        KvEntry e;
        e.key = trim(stripped.substr(0, eq));
        e.value = trim(stripped.substr(eq + 1));
        e.line = lineno;
        if (e.key.empty())
            throw io_error(source + ":" + std::to_string(lineno) + ": empty key");
        entries.push_back(std::move(e));
    }
    return entries;
}

inline double parse_double(const KvEntry& e, const std::string& source) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(e.value, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (pos != e.value.size() || e.value.empty())
        throw io_error(source + ":" + std::to_string(e.line) + ": '" + e.key +
                       "' is not a number: '" + e.value + "'");
    return v;
}

inline bool parse_bool(const KvEntry& e, const std::string& source) {
    if (e.value == "true") return true;
    if (e.value == "false") return false;
    throw io_error(source + ":" + std::to_string(e.line) + ": '" + e.key +
                   "' must be true or false, got '" + e.value + "'");
}

} // namespace reslim::detail

#endif
