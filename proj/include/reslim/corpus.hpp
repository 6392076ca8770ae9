#ifndef RESLIM_CORPUS_HPP
#define RESLIM_CORPUS_HPP

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace reslim::data {

/// One recorded sample: did it pass the base unit tests (the verifier) and
/// the extended suite (ground truth)? Wire format is JSON Lines, one object
/// per record with exactly these fields; `code` is optional.
struct SampleOutcome {
    std::string model_id;
    std::string task_id;
    std::string sample_id;
    bool base_pass = false;
    bool plus_pass = false;
    std::optional<std::string> code;

    bool operator==(const SampleOutcome&) const = default;
};

struct TaskStats {
    std::string task_id;
    int n_samples = 0;
    int n_base_pass = 0;
    int n_true_pos = 0;  // base_pass && plus_pass
    int n_false_pos = 0; // base_pass && !plus_pass
    int n_plus_only = 0; // plus_pass && !base_pass (verifier false negative)

    int n_plus_pass() const { return n_true_pos + n_plus_only; }
    double plus_rate() const { return n_samples ? double(n_plus_pass()) / n_samples : 0.0; }
    double base_rate() const { return n_samples ? double(n_base_pass) / n_samples : 0.0; }
    /// Verifier precision among accepted samples; only meaningful when
    /// n_base_pass > 0.
    double precision() const { return double(n_true_pos) / n_base_pass; }
};

struct SampleFlags {
    bool base_pass = false;
    bool plus_pass = false;
};

/// Per-task sample flags in record order; the permutation simulator works on
/// these rather than on tallies.
struct TaskSamples {
    std::string task_id;
    std::vector<SampleFlags> samples;
};

TaskStats tally(const TaskSamples& task);

struct ExclusionPolicy {
    bool drop_plus_only_tasks = false;     // any sample passes plus but not base
    bool drop_universal_fp_tasks = false;  // pooled across models: every base-passer fails plus
    std::set<std::string> explicit_excluded_ids;
};

struct ExclusionReport {
    struct Entry {
        std::string task_id;
        std::string rule; // "explicit", "plus_only", "universal_fp"
    };
    std::vector<Entry> entries;
};

/// Immutable record collection with per-model task views. Models and tasks
/// iterate in sorted order; records within a task keep input order.
class Corpus {
public:
    Corpus() = default;
    explicit Corpus(std::vector<SampleOutcome> records, std::string source = "<memory>",
                    std::string policy_note = "");

    const std::vector<SampleOutcome>& records() const { return records_; }
    const std::string& source() const { return source_; }
    const std::string& policy_note() const { return policy_note_; }

    std::vector<std::string> models() const;
    std::vector<std::string> tasks() const; // union over models
    bool has_model(const std::string& model_id) const;

    std::vector<TaskStats> task_table(const std::string& model_id) const;
    std::vector<TaskSamples> task_samples(const std::string& model_id) const;
    std::vector<const SampleOutcome*> model_records(const std::string& model_id) const;

private:
    const std::map<std::string, std::vector<std::size_t>>& model_index(
        const std::string& model_id) const;

    std::vector<SampleOutcome> records_;
    std::string source_ = "<memory>";
    std::string policy_note_;
    std::map<std::string, std::map<std::string, std::vector<std::size_t>>> index_;
};

Corpus parse_corpus(std::istream& is, const std::string& source_name);
Corpus load_corpus(const std::string& path);
void write_corpus(const Corpus& corpus, std::ostream& os);
void save_corpus(const Corpus& corpus, const std::string& path);

std::pair<Corpus, ExclusionReport> apply_exclusions(const Corpus& corpus,
                                                    const ExclusionPolicy& policy);

/// Policy file: drop_plus_only_tasks / drop_universal_fp_tasks booleans plus
/// a comma-separated excluded_ids list, same key-value syntax as params files.
ExclusionPolicy load_exclusion_policy(const std::string& path);
ExclusionPolicy policy_from_kv(std::istream& is, const std::string& source_name);

void write_exclusion_csv(const ExclusionReport& report, std::ostream& os);

} // namespace reslim::data

#endif
