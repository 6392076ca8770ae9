#ifndef RESLIM_RESAMPLING_HPP
#define RESLIM_RESAMPLING_HPP

#include "reslim/corpus.hpp"
#include "reslim/model.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace reslim::resample {

/// Cost of shipping a false positive, per unit of true-positive benefit.
struct CostBenefit {
    double ratio = 0.0;

    void validate() const;
};

struct SimConfig {
    int k_max = 1;
    int n_runs = 1;
    std::uint64_t master_seed = 0;
    std::vector<CostBenefit> ratios;

    void validate() const;
};

struct McRewardCurve {
    model::RewardCurve curve;
    std::vector<double> se; // per-K standard error across runs; se[0] == 0
};

enum class FprMode { conditional, marginal };

struct FprBin {
    int lo = 1; // attempt index range, inclusive
    int hi = 1;
    long long n_acceptances = 0;
    long long n_false_pos = 0;
    std::optional<double> rate; // absent in conditional mode when no acceptances
};

struct FprCurve {
    std::vector<FprBin> bins;
    FprMode mode = FprMode::conditional;
};

/// Attempt-index bins of doubling width: [1], [2,3], [4,7], ... truncated to
/// partition [1, k_max].
std::vector<FprBin> make_bins(int k_max);

/// Permutation Monte Carlo over recorded samples: each run re-permutes every
/// task's fixed sample set (seeded per (master_seed, run, task)), the first
/// base-passing sample within the first K is the returned answer, a TP is
/// worth +1 and an FP -ratio. The curve is the mean over tasks then runs.
/// Bit-identical output for a fixed master_seed.
McRewardCurve mc_reward_curve(const std::vector<data::TaskSamples>& tasks, const SimConfig& cfg,
                              CostBenefit ratio);

/// Closed-form expectation of the same permutation process. For a task with
/// n samples of which b pass the base tests (t TP, f FP), the first
/// base-passer of a uniform permutation is uniform over the b, so
/// E[reward at K] = P(hit within K) * (t - ratio * f) / b with
/// P(hit within K) = 1 - C(n-b,K)/C(n,K).
model::RewardCurve exact_reward_curve(const std::vector<data::TaskSamples>& tasks, int k_max,
                                      CostBenefit ratio);

/// False-positive rate per attempt bin over all (run, task) episodes.
/// conditional: FP acceptances / acceptances in the bin (absent when none);
/// marginal: FP acceptances in the bin / total episodes.
FprCurve fpr_curve(const std::vector<data::TaskSamples>& tasks, const SimConfig& cfg,
                   FprMode mode = FprMode::conditional);

/// Smallest K maximizing the curve, counting K = 0 (reward 0) as a candidate.
int optimal_k_empirical(const model::RewardCurve& curve);

} // namespace reslim::resample

#endif
