#include "reslim/corpus.hpp"
#include "reslim/errors.hpp"
#include "reslim/table.hpp"

#include "kv_util.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace reslim::data {

using nlohmann::ordered_json;

TaskStats tally(const TaskSamples& task) {
    TaskStats st;
    st.task_id = task.task_id;
    for (const auto& s : task.samples) {
        ++st.n_samples;
        if (s.base_pass) ++st.n_base_pass;
        if (s.base_pass && s.plus_pass) ++st.n_true_pos;
        if (s.base_pass && !s.plus_pass) ++st.n_false_pos;
        if (!s.base_pass && s.plus_pass) ++st.n_plus_only;
    }
    return st;
}

Corpus::Corpus(std::vector<SampleOutcome> records, std::string source, std::string policy_note)
    : records_(std::move(records)), source_(std::move(source)),
      policy_note_(std::move(policy_note)) {
    std::set<std::tuple<std::string, std::string, std::string>> keys;
    for (std::size_t i = 0; i < records_.size(); ++i) {
        const auto& r = records_[i];
        if (r.model_id.empty() || r.task_id.empty() || r.sample_id.empty())
            throw std::invalid_argument("Corpus: record " + std::to_string(i) +
                                        " has an empty id field");
        if (!keys.insert({r.model_id, r.task_id, r.sample_id}).second)
            throw std::invalid_argument("Corpus: duplicate record (" + r.model_id + ", " +
                                        r.task_id + ", " + r.sample_id + ")");
        index_[r.model_id][r.task_id].push_back(i);
    }
}

std::vector<std::string> Corpus::models() const {
    std::vector<std::string> out;
    out.reserve(index_.size());
    for (const auto& [model, _] : index_) out.push_back(model);
    return out;
}

std::vector<std::string> Corpus::tasks() const {
    std::set<std::string> ids;
    for (const auto& [_, by_task] : index_)
        for (const auto& [task, __] : by_task) ids.insert(task);
    return {ids.begin(), ids.end()};
}

bool Corpus::has_model(const std::string& model_id) const {
    return index_.count(model_id) != 0;
}

const std::map<std::string, std::vector<std::size_t>>& Corpus::model_index(
    const std::string& model_id) const {
    auto it = index_.find(model_id);
    if (it == index_.end())
        throw std::invalid_argument("unknown model '" + model_id + "' in corpus " + source_);
    return it->second;
}

std::vector<TaskStats> Corpus::task_table(const std::string& model_id) const {
    std::vector<TaskStats> out;
    for (const auto& ts : task_samples(model_id)) out.push_back(tally(ts));
    return out;
}

std::vector<TaskSamples> Corpus::task_samples(const std::string& model_id) const {
    std::vector<TaskSamples> out;
    for (const auto& [task_id, idxs] : model_index(model_id)) {
        TaskSamples ts{task_id, {}};
        ts.samples.reserve(idxs.size());
        for (std::size_t i : idxs)
            ts.samples.push_back({records_[i].base_pass, records_[i].plus_pass});
        out.push_back(std::move(ts));
    }
    return out;
}

std::vector<const SampleOutcome*> Corpus::model_records(const std::string& model_id) const {
    std::vector<const SampleOutcome*> out;
    for (const auto& [_, idxs] : model_index(model_id))
        for (std::size_t i : idxs) out.push_back(&records_[i]);
    return out;
}

namespace {

SampleOutcome record_from_json(const ordered_json& obj, const std::string& where) {
    if (!obj.is_object()) throw io_error(where + ": record is not a JSON object");

    static const char* known[] = {"model_id", "task_id", "sample_id",
                                  "base_pass", "plus_pass", "code"};
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok) throw io_error(where + ": unknown field '" + key + "'");
    }

    auto str_field = [&](const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) throw io_error(where + ": missing field '" + std::string(key) + "'");
        if (!it->is_string() || it->get<std::string>().empty())
            throw io_error(where + ": field '" + std::string(key) +
                           "' must be a nonempty string");
        return it->get<std::string>();
    };
    auto bool_field = [&](const char* key) {
        auto it = obj.find(key);
        if (it == obj.end()) throw io_error(where + ": missing field '" + std::string(key) + "'");
        if (!it->is_boolean())
            throw io_error(where + ": field '" + std::string(key) + "' must be a boolean");
        return it->get<bool>();
    };

    SampleOutcome rec;
    rec.model_id = str_field("model_id");
    rec.task_id = str_field("task_id");
    rec.sample_id = str_field("sample_id");
    rec.base_pass = bool_field("base_pass");
    rec.plus_pass = bool_field("plus_pass");
    if (auto it = obj.find("code"); it != obj.end()) {
        if (!it->is_string()) throw io_error(where + ": field 'code' must be a string");
        rec.code = it->get<std::string>();
    }
    return rec;
}

} // namespace

Corpus parse_corpus(std::istream& is, const std::string& source_name) {
    std::vector<SampleOutcome> records;
    std::set<std::tuple<std::string, std::string, std::string>> keys;
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (detail::trim(line).empty()) continue;
        const std::string where = source_name + ":" + std::to_string(lineno);
        ordered_json obj;
        try {
            obj = ordered_json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw io_error(where + ": malformed JSON: " + e.what());
        }
        SampleOutcome rec = record_from_json(obj, where);
        if (!keys.insert({rec.model_id, rec.task_id, rec.sample_id}).second)
            throw io_error(where + ": duplicate record (" + rec.model_id + ", " + rec.task_id +
                           ", " + rec.sample_id + ")");
        records.push_back(std::move(rec));
    }
    return Corpus(std::move(records), source_name);
}

Corpus load_corpus(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw io_error("cannot open corpus file: " + path);
    return parse_corpus(is, path);
}

void write_corpus(const Corpus& corpus, std::ostream& os) {
    for (const auto& r : corpus.records()) {
        ordered_json obj;
        obj["model_id"] = r.model_id;
        obj["task_id"] = r.task_id;
        obj["sample_id"] = r.sample_id;
        obj["base_pass"] = r.base_pass;
        obj["plus_pass"] = r.plus_pass;
        if (r.code) obj["code"] = *r.code;
        os << obj.dump() << '\n';
    }
}

void save_corpus(const Corpus& corpus, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open output file: " + path);
    write_corpus(corpus, os);
    if (!os) throw io_error("write failed: " + path);
}

std::pair<Corpus, ExclusionReport> apply_exclusions(const Corpus& corpus,
                                                    const ExclusionPolicy& policy) {
    // Pooled per-task aggregates across all models.
    struct Pooled {
        bool any_plus_only = false;
        long long n_base_pass = 0;
        long long n_true_pos = 0;
    };
    std::map<std::string, Pooled> pooled;
    for (const auto& r : corpus.records()) {
        auto& p = pooled[r.task_id];
        if (r.plus_pass && !r.base_pass) p.any_plus_only = true;
        if (r.base_pass) {
            ++p.n_base_pass;
            if (r.plus_pass) ++p.n_true_pos;
        }
    }

    ExclusionReport report;
    std::set<std::string> dropped;
    for (const auto& [task_id, p] : pooled) {
        if (policy.explicit_excluded_ids.count(task_id)) {
            report.entries.push_back({task_id, "explicit"});
            dropped.insert(task_id);
        }
        if (policy.drop_plus_only_tasks && p.any_plus_only) {
            report.entries.push_back({task_id, "plus_only"});
            dropped.insert(task_id);
        }
        if (policy.drop_universal_fp_tasks && p.n_base_pass > 0 && p.n_true_pos == 0) {
            report.entries.push_back({task_id, "universal_fp"});
            dropped.insert(task_id);
        }
    }

    std::vector<SampleOutcome> kept;
    kept.reserve(corpus.records().size());
    for (const auto& r : corpus.records())
        if (!dropped.count(r.task_id)) kept.push_back(r);

    std::string note = corpus.policy_note();
    if (!note.empty()) note += "; ";
    note += "exclusions applied (dropped " + std::to_string(dropped.size()) + " tasks)";
    return {Corpus(std::move(kept), corpus.source(), std::move(note)), std::move(report)};
}

ExclusionPolicy policy_from_kv(std::istream& is, const std::string& source_name) {
    ExclusionPolicy policy;
    for (const auto& e : detail::parse_kv(is, source_name)) {
        if (e.key == "drop_plus_only_tasks") {
            policy.drop_plus_only_tasks = detail::parse_bool(e, source_name);
        } else if (e.key == "drop_universal_fp_tasks") {
            policy.drop_universal_fp_tasks = detail::parse_bool(e, source_name);
        } else if (e.key == "excluded_ids") {
            std::stringstream ss(e.value);
            std::string id;
            while (std::getline(ss, id, ',')) {
                id = detail::trim(id);
                if (!id.empty()) policy.explicit_excluded_ids.insert(id);
            }
        } else {
            throw io_error(source_name + ":" + std::to_string(e.line) + ": unknown key '" +
                           e.key + "'");
        }
    }
    return policy;
}

ExclusionPolicy load_exclusion_policy(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open exclusion policy file: " + path);
    return policy_from_kv(is, path);
}

void write_exclusion_csv(const ExclusionReport& report, std::ostream& os) {
    io::Table table({"task_id", "rule"});
    for (const auto& e : report.entries) table.add_row({e.task_id, e.rule});
    table.write_csv(os);
}

} // namespace reslim::data
