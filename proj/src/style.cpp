#include "reslim/style.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace reslim::style {

namespace {

bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

bool is_identifier(std::string_view s) {
    if (s.empty() || !is_ident_start(s[0])) return false;
    for (char c : s)
        if (!is_ident_char(c)) return false;
    return true;
}

bool is_keyword(std::string_view s) {
    static const std::set<std::string_view> kw = {
        "False", "None",  "True",    "and",      "as",     "assert", "async",  "await",
        "break", "class", "continue", "def",     "del",    "elif",   "else",   "except",
        "finally", "for", "from",    "global",   "if",     "import", "in",     "is",
        "lambda", "nonlocal", "not", "or",       "pass",   "raise",  "return", "try",
        "while", "with",  "yield"};
    return kw.count(s) != 0;
}

std::string_view trim_view(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// One physical line after comment/string stripping. String literal contents
// are replaced by a single space so tokens cannot fuse across them.
struct ScannedLine {
    std::string code;
    bool has_comment = false;
    bool comment_only = false;
    bool blank = true;
    int indent = 0;
};

struct Scanner {
    // cross-line state: inside a triple-quoted string
    bool in_triple = false;
    char triple_quote = '"';

    ScannedLine scan(const std::string& raw) {
        ScannedLine out;
        std::size_t i = 0;
        while (i < raw.size()) {
            if (in_triple) {
                if (raw[i] == '\\' && i + 1 < raw.size()) {
                    i += 2;
                    continue;
                }
                if (raw[i] == triple_quote && raw.compare(i, 3, std::string(3, triple_quote)) == 0) {
                    in_triple = false;
                    i += 3;
                    continue;
                }
                ++i;
                continue;
            }
            const char c = raw[i];
            if (c == '#') {
                out.has_comment = true;
                break;
            }
            if (c == '\'' || c == '"') {
                out.code += ' ';
                if (raw.compare(i, 3, std::string(3, c)) == 0) {
                    in_triple = true;
                    triple_quote = c;
                    i += 3;
                    continue;
                }
                ++i;
                while (i < raw.size() && raw[i] != c) {
                    if (raw[i] == '\\' && i + 1 < raw.size()) ++i;
                    ++i;
                }
                if (i < raw.size()) ++i; // closing quote; unterminated ones end at the line
                continue;
            }
            out.code += c;
            ++i;
        }
        const std::string_view stripped = trim_view(out.code);
        out.blank = stripped.empty() && !out.has_comment;
        out.comment_only = stripped.empty() && out.has_comment;
        for (char c : raw) {
            if (c == ' ' || c == '\t') ++out.indent;
            else break;
        }
        return out;
    }
};

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty()) {
        if (cur.back() == '\r') cur.pop_back();
        lines.push_back(cur);
    }
    return lines;
}

// Split s at top-level occurrences of `sep` (depth-0 w.r.t. ()[]{}).
std::vector<std::string_view> split_top_level(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        else if (c == ')' || c == ']' || c == '}') --depth;
        else if (c == sep && depth == 0) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    parts.push_back(s.substr(start));
    return parts;
}

std::string_view strip_outer_parens(std::string_view s) {
    s = trim_view(s);
    while (s.size() >= 2 && s.front() == '(' && s.back() == ')') {
        int depth = 0;
        bool wraps = true;
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
            if (s[i] == '(') ++depth;
            else if (s[i] == ')') --depth;
            if (depth == 0) {
                wraps = false;
                break;
            }
        }
        if (!wraps) break;
        s = trim_view(s.substr(1, s.size() - 2));
    }
    return s;
}

// A bare assignable name: strips leading stars and a trailing annotation.
std::optional<std::string> target_name(std::string_view piece) {
    piece = strip_outer_parens(piece);
    while (!piece.empty() && piece.front() == '*') piece.remove_prefix(1);
    const auto parts = split_top_level(piece, ':');
    piece = trim_view(parts[0]);
    if (!is_identifier(piece) || is_keyword(piece)) return std::nullopt;
    return std::string(piece);
}

void add_occurrence(CodeUnit& unit, std::string name, IdentifierKind kind, int line) {
    unit.identifiers.push_back({std::move(name), kind, line});
}

// Assignment and loop targets of one code line.
void scan_targets(CodeUnit& unit, const std::string& code, int lineno) {
    // loop / comprehension targets: "for <targets> in ..."
    for (std::size_t pos = code.find("for"); pos != std::string::npos;
         pos = code.find("for", pos + 3)) {
        const bool word_start = pos == 0 || !is_ident_char(code[pos - 1]);
        const bool word_end = pos + 3 >= code.size() || !is_ident_char(code[pos + 3]);
        if (!word_start || !word_end) continue;
        std::size_t in_pos = std::string::npos;
        for (std::size_t q = code.find("in", pos + 3); q != std::string::npos;
             q = code.find("in", q + 2)) {
            if (!is_ident_char(code[q - 1]) && (q + 2 >= code.size() || !is_ident_char(code[q + 2]))) {
                in_pos = q;
                break;
            }
        }
        if (in_pos == std::string::npos) continue;
        const std::string_view targets(code.data() + pos + 3, in_pos - pos - 3);
        for (const auto piece : split_top_level(strip_outer_parens(targets), ','))
            if (auto name = target_name(piece))
                add_occurrence(unit, *name, IdentifierKind::variable, lineno);
    }

    // assignment targets: split at top-level '=' that is neither comparison,
    // walrus, nor part of an augmented operator; augmented targets count too
    std::vector<std::size_t> splits;
    bool augmented = false;
    std::size_t augmented_end = 0;
    int depth = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const char c = code[i];
        if (c == '(' || c == '[' || c == '{') ++depth;
        else if (c == ')' || c == ']' || c == '}') --depth;
        if (c != '=' || depth != 0) continue;
        if (i + 1 < code.size() && code[i + 1] == '=') {
            ++i; // '=='
            continue;
        }
        const char prev = i ? code[i - 1] : '\0';
        if (prev == '=' || prev == '<' || prev == '>' || prev == '!' || prev == ':') continue;
        if (prev == '+' || prev == '-' || prev == '*' || prev == '/' || prev == '%' ||
            prev == '&' || prev == '|' || prev == '^' || prev == '@') {
            if (splits.empty() && !augmented) {
                augmented = true;
                augmented_end = i - 1;
                if (augmented_end > 0 && (code[augmented_end - 1] == '*' || code[augmented_end - 1] == '/'))
                    --augmented_end; // '**=', '//='
            }
            continue;
        }
        if (!augmented) splits.push_back(i);
    }

    std::vector<std::string_view> target_lists;
    if (augmented) {
        target_lists.emplace_back(code.data(), augmented_end);
    } else if (!splits.empty()) {
        std::size_t start = 0;
        for (std::size_t s : splits) {
            target_lists.emplace_back(code.data() + start, s - start);
            start = s + 1;
        }
    }
    for (const auto list : target_lists)
        for (const auto piece : split_top_level(trim_view(list), ','))
            if (auto name = target_name(piece))
                add_occurrence(unit, *name, IdentifierKind::variable, lineno);
}

} // namespace

const char* to_string(IdentifierKind kind) {
    switch (kind) {
        case IdentifierKind::function: return "function";
        case IdentifierKind::parameter: return "parameter";
        case IdentifierKind::variable: return "variable";
    }
    return "?";
}

const char* StyleRule::name() const {
    switch (kind) {
        case Kind::camel_case: return "camel_case";
        case Kind::snake_case: return "snake_case";
        case Kind::length_limits: return "length_limits";
        case Kind::comment_every_line: return "comment_every_line";
    }
    return "?";
}

bool is_camel_case(std::string_view ident) {
    if (ident.empty()) return false;
    if (!std::islower(static_cast<unsigned char>(ident[0]))) return false;
    for (char c : ident)
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    return true;
}

bool is_snake_case(std::string_view ident) {
    if (ident.empty()) return false;
    if (!(std::islower(static_cast<unsigned char>(ident[0])) || ident[0] == '_')) return false;
    for (char c : ident)
        if (!(std::islower(static_cast<unsigned char>(c)) ||
              std::isdigit(static_cast<unsigned char>(c)) || c == '_'))
            return false;
    return true;
}

CodeUnit extract_code_unit(const std::string& text) {
    CodeUnit unit;
    unit.text = text;
    unit.lines = split_lines(text);

    Scanner scanner;
    std::vector<ScannedLine> scanned;
    scanned.reserve(unit.lines.size());
    for (const auto& line : unit.lines) scanned.push_back(scanner.scan(line));

    const int n = static_cast<int>(unit.lines.size());
    std::vector<bool> is_signature(static_cast<std::size_t>(n), false);

    for (int i = 0; i < n; ++i) {
        std::string_view stripped = trim_view(scanned[static_cast<std::size_t>(i)].code);
        if (stripped.rfind("async ", 0) == 0) stripped = trim_view(stripped.substr(6));
        if (!(stripped.rfind("def", 0) == 0 &&
              (stripped.size() == 3 || !is_ident_char(stripped[3]))))
            continue;

        FunctionSpan fn;
        fn.def_line = i + 1;

        // join continuation lines until the signature parens balance
        std::string sig(stripped);
        int sig_end = i;
        {
            auto depth_of = [](std::string_view s) {
                int d = 0;
                for (char c : s) {
                    if (c == '(' || c == '[' || c == '{') ++d;
                    else if (c == ')' || c == ']' || c == '}') --d;
                }
                return d;
            };
            int depth = depth_of(sig);
            while (depth > 0 && sig_end + 1 < n && sig_end - i < 20) {
                ++sig_end;
                const auto& cont = scanned[static_cast<std::size_t>(sig_end)].code;
                sig += ' ';
                sig += cont;
                depth += depth_of(cont);
            }
            for (int j = i; j <= sig_end; ++j) is_signature[static_cast<std::size_t>(j)] = true;
        }

        const auto open = sig.find('(');
        std::string_view name = trim_view(std::string_view(sig).substr(3, open == std::string::npos
                                                                              ? std::string::npos
                                                                              : open - 3));
        if (open == std::string::npos || !is_identifier(name)) {
            fn.parse_warning = true;
            if (is_identifier(name) && !is_keyword(name)) fn.name = std::string(name);
            unit.warnings.push_back("line " + std::to_string(fn.def_line) +
                                    ": unparseable function signature");
        } else {
            fn.name = std::string(name);
            // matching close paren
            int depth = 0;
            std::size_t close = std::string::npos;
            for (std::size_t p = open; p < sig.size(); ++p) {
                if (sig[p] == '(') ++depth;
                else if (sig[p] == ')' && --depth == 0) {
                    close = p;
                    break;
                }
            }
            if (close == std::string::npos) {
                fn.parse_warning = true;
                unit.warnings.push_back("line " + std::to_string(fn.def_line) +
                                        ": unbalanced parameter list");
            } else {
                const std::string_view params =
                    std::string_view(sig).substr(open + 1, close - open - 1);
                for (auto piece : split_top_level(params, ',')) {
                    piece = trim_view(piece);
                    if (piece.empty() || piece == "*" || piece == "/") continue;
                    while (!piece.empty() && piece.front() == '*') piece.remove_prefix(1);
                    piece = trim_view(split_top_level(piece, ':')[0]);
                    piece = trim_view(split_top_level(piece, '=')[0]);
                    if (is_identifier(piece) && !is_keyword(piece))
                        fn.parameters.emplace_back(piece);
                }
            }
        }

        // body: more-indented block below the signature; blank and
        // comment-only lines do not terminate it
        const int def_indent = scanned[static_cast<std::size_t>(i)].indent;
        int last_code = 0;
        int j = sig_end + 1;
        for (; j < n; ++j) {
            const auto& sl = scanned[static_cast<std::size_t>(j)];
            if (sl.blank || sl.comment_only) continue;
            if (sl.indent <= def_indent) break;
            last_code = j + 1;
        }
        if (last_code > 0) {
            fn.body_begin = sig_end + 2;
            fn.body_end = last_code;
        }

        if (!fn.name.empty())
            add_occurrence(unit, fn.name, IdentifierKind::function, fn.def_line);
        for (const auto& p : fn.parameters)
            add_occurrence(unit, p, IdentifierKind::parameter, fn.def_line);
        unit.functions.push_back(std::move(fn));
    }

    for (int i = 0; i < n; ++i) {
        const auto& sl = scanned[static_cast<std::size_t>(i)];
        if (sl.blank || sl.comment_only || is_signature[static_cast<std::size_t>(i)]) continue;
        scan_targets(unit, sl.code, i + 1);
    }

    return unit;
}

namespace {

RuleCheck finish(RuleCheck check) {
    std::sort(check.violation_lines.begin(), check.violation_lines.end());
    check.violation_lines.erase(
        std::unique(check.violation_lines.begin(), check.violation_lines.end()),
        check.violation_lines.end());
    return check;
}

RuleCheck check_naming(const CodeUnit& unit, bool camel) {
    RuleCheck check;
    std::set<std::pair<std::string, IdentifierKind>> seen;
    int ok = 0;
    for (const auto& occ : unit.identifiers) {
        if (!seen.insert({occ.name, occ.kind}).second) continue;
        ++check.n_checked;
        if (camel ? is_camel_case(occ.name) : is_snake_case(occ.name)) ++ok;
        else check.violation_lines.push_back(occ.line);
    }
    check.score = check.n_checked ? static_cast<double>(ok) / check.n_checked : 1.0;
    check.compliant = check.violation_lines.empty();
    return finish(check);
}

RuleCheck check_length(const CodeUnit& unit, const LengthLimits& limits) {
    RuleCheck check;
    int ok = 0;
    for (std::size_t i = 0; i < unit.lines.size(); ++i) {
        ++check.n_checked;
        if (static_cast<int>(unit.lines[i].size()) <= limits.max_line_chars) ++ok;
        else check.violation_lines.push_back(static_cast<int>(i) + 1);
    }
    for (const auto& fn : unit.functions) {
        ++check.n_checked;
        const int span = fn.body_end > 0 ? fn.body_end - fn.def_line + 1 : 1;
        if (span <= limits.max_fn_lines) ++ok;
        else check.violation_lines.push_back(fn.def_line);
    }
    check.score = check.n_checked ? static_cast<double>(ok) / check.n_checked : 1.0;
    check.compliant = check.violation_lines.empty();
    return finish(check);
}

RuleCheck check_comments(const CodeUnit& unit) {
    // re-scan to classify lines; cheap at sample sizes
    Scanner scanner;
    std::vector<ScannedLine> scanned;
    scanned.reserve(unit.lines.size());
    for (const auto& line : unit.lines) scanned.push_back(scanner.scan(line));

    std::set<int> body_lines;
    for (const auto& fn : unit.functions)
        for (int l = fn.body_begin; l > 0 && l <= fn.body_end; ++l) body_lines.insert(l);

    RuleCheck check;
    int ok = 0;
    for (int l : body_lines) {
        const auto& sl = scanned[static_cast<std::size_t>(l - 1)];
        if (sl.blank || sl.comment_only) continue;
        ++check.n_checked;
        const bool covered =
            sl.has_comment || (l >= 2 && scanned[static_cast<std::size_t>(l - 2)].comment_only);
        if (covered) ++ok;
        else check.violation_lines.push_back(l);
    }
    check.score = check.n_checked ? static_cast<double>(ok) / check.n_checked : 1.0;
    check.compliant = check.violation_lines.empty();
    return finish(check);
}

} // namespace

RuleCheck check_rule(const CodeUnit& unit, const StyleRule& rule) {
    if (rule.kind == StyleRule::Kind::length_limits &&
        (rule.limits.max_line_chars <= 0 || rule.limits.max_fn_lines <= 0))
        throw std::invalid_argument("check_rule: length limits must be positive");
    switch (rule.kind) {
        case StyleRule::Kind::camel_case: return check_naming(unit, true);
        case StyleRule::Kind::snake_case: return check_naming(unit, false);
        case StyleRule::Kind::length_limits: return check_length(unit, rule.limits);
        case StyleRule::Kind::comment_every_line: return check_comments(unit);
    }
    throw std::invalid_argument("check_rule: unknown rule");
}

StyleReport group_compare(const data::Corpus& corpus, const std::string& model_id,
                          const StyleRule& rule) {
    StyleReport report;
    report.rule = rule;

    int n_tp = 0, n_fp = 0;
    double tp_bool = 0, tp_frac = 0, fp_bool = 0, fp_frac = 0;
    for (const auto* rec : corpus.model_records(model_id)) {
        if (!rec->code || !rec->base_pass) continue;
        const CodeUnit unit = extract_code_unit(*rec->code);
        SampleCompliance sc;
        sc.task_id = rec->task_id;
        sc.sample_id = rec->sample_id;
        sc.is_false_positive = !rec->plus_pass;
        sc.check = check_rule(unit, rule);
        if (sc.is_false_positive) {
            ++n_fp;
            fp_bool += sc.check.compliant ? 1.0 : 0.0;
            fp_frac += sc.check.score;
        } else {
            ++n_tp;
            tp_bool += sc.check.compliant ? 1.0 : 0.0;
            tp_frac += sc.check.score;
        }
        report.samples.push_back(std::move(sc));
    }

    if (n_tp > 0) report.true_pos = GroupStats{n_tp, tp_bool / n_tp, tp_frac / n_tp};
    if (n_fp > 0) report.false_pos = GroupStats{n_fp, fp_bool / n_fp, fp_frac / n_fp};
    return report;
}

} // namespace reslim::style
