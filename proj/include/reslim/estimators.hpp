#ifndef RESLIM_ESTIMATORS_HPP
#define RESLIM_ESTIMATORS_HPP

#include "reslim/corpus.hpp"
#include "reslim/model.hpp"

#include <vector>

namespace reslim::stats {

/// Infinite-budget conditional accuracy with bounds for tasks that never
/// produced a base-passing sample: lower counts them as 0, upper as 1.
struct ConditionalAccuracy {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    int n_tasks_used = 0;     // tasks with at least one base-passing sample
    int n_tasks_unsolved = 0; // tasks with none
};

/// How the point estimate treats unsolved tasks. The bounds are always the
/// as_zero / as_one means regardless of this choice.
enum class UnsolvedHandling { exclude, as_zero, as_one };

enum class DifficultySource { plus, base };

struct DifficultyHistogram {
    std::vector<double> edges; // n_bins + 1 equal-width edges on [0,1]
    std::vector<int> counts;   // counts sum to the number of tasks
};

/// P(a uniformly random size-k subset of n samples contains >= 1 of the c
/// correct ones) = 1 - C(n-c,k)/C(n,k), evaluated as a stable product.
double pass_at_k(int n, int c, int k);

/// Mean over tasks of the per-task extended-suite pass rate.
double single_sample_accuracy(const std::vector<data::TaskStats>& table);

/// Sample-pooled variant (sensitivity check, not the default aggregation).
double pooled_single_sample_accuracy(const std::vector<data::TaskStats>& table);

ConditionalAccuracy conditional_accuracy(const std::vector<data::TaskStats>& table,
                                         UnsolvedHandling handling = UnsolvedHandling::exclude);

/// Sample-pooled conditional accuracy over solved tasks.
double pooled_conditional_accuracy(const std::vector<data::TaskStats>& table);

/// Tasks whose verifier precision (n_true_pos / n_base_pass) is strictly
/// below the threshold; unsolved tasks are not included.
std::vector<data::TaskStats> precision_filter(const std::vector<data::TaskStats>& table,
                                              double threshold);

DifficultyHistogram difficulty_histogram(const std::vector<data::TaskStats>& table, int n_bins,
                                         DifficultySource source = DifficultySource::plus);

/// True iff the strong model's single-sample accuracy exceeds even the
/// optimistic bound of the weak model's conditional accuracy, i.e. no amount
/// of weak-model resampling can close the gap.
bool dominance_check(double strong_pass1, const ConditionalAccuracy& weak_conditional);

/// Fits the analytic two-type model from per-task tallies: tasks at or above
/// the easy_threshold plus-pass rate form the easy group, completeness is
/// fixed at 1, and soundness is pooled over all incorrect samples.
model::ModelParams fit_model_params(const std::vector<data::TaskStats>& table,
                                    double easy_threshold = 0.5);

} // namespace reslim::stats

#endif
