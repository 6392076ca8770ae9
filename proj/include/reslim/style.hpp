#ifndef RESLIM_STYLE_HPP
#define RESLIM_STYLE_HPP

#include "reslim/corpus.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reslim::style {

enum class IdentifierKind { function, parameter, variable };

const char* to_string(IdentifierKind kind);

struct IdentifierOccurrence {
    std::string name;
    IdentifierKind kind = IdentifierKind::variable;
    int line = 0; // 1-based
};

struct FunctionSpan {
    std::string name;
    std::vector<std::string> parameters;
    int def_line = 0;   // 1-based line of the `def`
    int body_begin = 0; // 1-based first body line, 0 when the body is empty
    int body_end = 0;   // 1-based last body line (inclusive)
    bool parse_warning = false;
};

/// Surface view of a Python-like code sample: functions found by their
/// definition keyword, parameters from the signature, variables from simple
/// assignment targets and loop targets. Comments and string literals are
/// excluded from identifier scanning.
struct CodeUnit {
    std::string text;
    std::vector<std::string> lines;
    std::vector<FunctionSpan> functions;
    std::vector<IdentifierOccurrence> identifiers;
    std::vector<std::string> warnings;
};

struct LengthLimits {
    int max_line_chars = 70;
    int max_fn_lines = 30;
};

struct StyleRule {
    enum class Kind { camel_case, snake_case, length_limits, comment_every_line };

    Kind kind = Kind::camel_case;
    LengthLimits limits{};

    static StyleRule camel() { return {Kind::camel_case, {}}; }
    static StyleRule snake() { return {Kind::snake_case, {}}; }
    static StyleRule length(LengthLimits lim = {}) { return {Kind::length_limits, lim}; }
    static StyleRule comments() { return {Kind::comment_every_line, {}}; }

    const char* name() const;
};

/// Outcome of one rule on one sample. `score` is the fraction of checked
/// items that comply (1 when there is nothing to check); boolean compliance
/// is score == 1.
struct RuleCheck {
    bool compliant = true;
    double score = 1.0;
    int n_checked = 0;
    std::vector<int> violation_lines; // 1-based, sorted, deduplicated
};

CodeUnit extract_code_unit(const std::string& text);
RuleCheck check_rule(const CodeUnit& unit, const StyleRule& rule);

/// First char lowercase alphabetic, no underscores; later capitals allowed.
bool is_camel_case(std::string_view ident);
/// Lowercase alphanumerics and underscores only, no capitals.
bool is_snake_case(std::string_view ident);

struct GroupStats {
    int n = 0;
    double mean_boolean = 0.0;    // fraction of fully compliant samples
    double mean_fractional = 0.0; // mean of per-sample fractional scores
};

struct SampleCompliance {
    std::string task_id;
    std::string sample_id;
    bool is_false_positive = false; // base_pass && !plus_pass
    RuleCheck check;
};

/// Rule compliance of the accepted (base-passing) samples of one model,
/// split into true-positive and false-positive groups. Samples without code
/// text are skipped; an empty group is reported as absent.
struct StyleReport {
    StyleRule rule;
    std::vector<SampleCompliance> samples;
    std::optional<GroupStats> true_pos;
    std::optional<GroupStats> false_pos;
};

StyleReport group_compare(const data::Corpus& corpus, const std::string& model_id,
                          const StyleRule& rule);

} // namespace reslim::style

#endif
