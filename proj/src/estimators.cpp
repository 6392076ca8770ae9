#include "reslim/estimators.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace reslim::stats {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void require_counted(const std::vector<data::TaskStats>& table, const char* op) {
    require(!table.empty(), std::string(op) + ": empty task table");
    for (const auto& t : table)
        require(t.n_samples >= 1, std::string(op) + ": task '" + t.task_id + "' has no samples");
}

} // namespace

double pass_at_k(int n, int c, int k) {
    require(n >= 0 && c >= 0 && c <= n, "pass_at_k: need 0 <= c <= n");
    require(k >= 1 && k <= n, "pass_at_k: need 1 <= k <= n");
    if (c == 0) return 0.0;
    if (k > n - c) return 1.0;
    // 1 - C(n-c,k)/C(n,k) = 1 - prod_{j=0..k-1} (n-c-j)/(n-j)
    double miss = 1.0;
    for (int j = 0; j < k; ++j) miss *= static_cast<double>(n - c - j) / (n - j);
    return 1.0 - miss;
}

double single_sample_accuracy(const std::vector<data::TaskStats>& table) {
    require_counted(table, "single_sample_accuracy");
    double sum = 0.0;
    for (const auto& t : table) sum += t.plus_rate();
    return sum / static_cast<double>(table.size());
}

double pooled_single_sample_accuracy(const std::vector<data::TaskStats>& table) {
    require_counted(table, "pooled_single_sample_accuracy");
    long long plus = 0, total = 0;
    for (const auto& t : table) {
        plus += t.n_plus_pass();
        total += t.n_samples;
    }
    return static_cast<double>(plus) / static_cast<double>(total);
}

ConditionalAccuracy conditional_accuracy(const std::vector<data::TaskStats>& table,
                                         UnsolvedHandling handling) {
    require_counted(table, "conditional_accuracy");

    double sum_rate = 0.0;
    int n_solved = 0;
    for (const auto& t : table) {
        if (t.n_base_pass > 0) {
            sum_rate += t.precision();
            ++n_solved;
        }
    }
    const int n_total = static_cast<int>(table.size());

    ConditionalAccuracy out;
    out.n_tasks_used = n_solved;
    out.n_tasks_unsolved = n_total - n_solved;
    out.lower = sum_rate / n_total;
    out.upper = (sum_rate + out.n_tasks_unsolved) / n_total;
    switch (handling) {
        case UnsolvedHandling::exclude:
            if (n_solved == 0)
                throw std::runtime_error(
                    "conditional_accuracy: no task has a base-passing sample");
            out.point = sum_rate / n_solved;
            break;
        case UnsolvedHandling::as_zero: out.point = out.lower; break;
        case UnsolvedHandling::as_one: out.point = out.upper; break;
    }
    return out;
}

double pooled_conditional_accuracy(const std::vector<data::TaskStats>& table) {
    require_counted(table, "pooled_conditional_accuracy");
    long long tp = 0, base = 0;
    for (const auto& t : table) {
        tp += t.n_true_pos;
        base += t.n_base_pass;
    }
    if (base == 0)
        throw std::runtime_error("pooled_conditional_accuracy: no base-passing samples");
    return static_cast<double>(tp) / static_cast<double>(base);
}

std::vector<data::TaskStats> precision_filter(const std::vector<data::TaskStats>& table,
                                              double threshold) {
    require(threshold >= 0.0 && threshold <= 1.0, "precision_filter: threshold must be in [0,1]");
    std::vector<data::TaskStats> out;
    for (const auto& t : table)
        if (t.n_base_pass > 0 && t.precision() < threshold) out.push_back(t);
    return out;
}

DifficultyHistogram difficulty_histogram(const std::vector<data::TaskStats>& table, int n_bins,
                                         DifficultySource source) {
    require(n_bins >= 1, "difficulty_histogram: n_bins must be >= 1");

    DifficultyHistogram hist;
    hist.edges.resize(static_cast<std::size_t>(n_bins) + 1);
    for (int i = 0; i <= n_bins; ++i)
        hist.edges[static_cast<std::size_t>(i)] = static_cast<double>(i) / n_bins;
    hist.counts.assign(static_cast<std::size_t>(n_bins), 0);

    for (const auto& t : table) {
        const double rate = source == DifficultySource::plus ? t.plus_rate() : t.base_rate();
        int bin = static_cast<int>(rate * n_bins);
        if (bin >= n_bins) bin = n_bins - 1; // rate == 1 lands in the top bin
        ++hist.counts[static_cast<std::size_t>(bin)];
    }
    return hist;
}

bool dominance_check(double strong_pass1, const ConditionalAccuracy& weak_conditional) {
    require(strong_pass1 >= 0.0 && strong_pass1 <= 1.0,
            "dominance_check: strong_pass1 must be in [0,1]");
    require(weak_conditional.upper >= 0.0 && weak_conditional.upper <= 1.0,
            "dominance_check: weak upper bound must be in [0,1]");
    return strong_pass1 > weak_conditional.upper;
}

model::ModelParams fit_model_params(const std::vector<data::TaskStats>& table,
                                    double easy_threshold) {
    require_counted(table, "fit_model_params");
    require(easy_threshold >= 0.0 && easy_threshold <= 1.0,
            "fit_model_params: easy_threshold must be in [0,1]");

    double sum_easy = 0.0, sum_hard = 0.0;
    int n_easy = 0, n_hard = 0;
    long long fp = 0, incorrect = 0;
    for (const auto& t : table) {
        const double rate = t.plus_rate();
        if (rate >= easy_threshold) {
            sum_easy += rate;
            ++n_easy;
        } else {
            sum_hard += rate;
            ++n_hard;
        }
        fp += t.n_false_pos;
        incorrect += t.n_samples - t.n_plus_pass();
    }

    if (n_easy == 0)
        throw std::runtime_error("fit_model_params: no easy tasks (plus-pass rate >= " +
                                 std::to_string(easy_threshold) + ")");
    if (n_hard == 0)
        throw std::runtime_error("fit_model_params: no hard tasks (plus-pass rate < " +
                                 std::to_string(easy_threshold) + ")");
    if (incorrect == 0)
        throw std::runtime_error(
            "fit_model_params: no incorrect samples, soundness is undefined");

    model::ModelParams p;
    p.mix.p_easy = static_cast<double>(n_easy) / static_cast<double>(table.size());
    p.mix.p_hard = 1.0 - p.mix.p_easy;
    p.mix.r_easy = sum_easy / n_easy;
    p.mix.r_hard = sum_hard / n_hard;
    p.verifier.completeness = 1.0;
    p.verifier.soundness = 1.0 - static_cast<double>(fp) / static_cast<double>(incorrect);
    p.values = model::ValueParams{}; // v_tp = 1, v_fp = -1, c_attempt = 0
    p.validate();
    return p;
}

} // namespace reslim::stats
