#include "reslim/resampling.hpp"
#include "reslim/estimators.hpp"
#include "reslim/rng.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace reslim::resample {

namespace {

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void check_tasks(const std::vector<data::TaskSamples>& tasks, int k_max, const char* op) {
    require(!tasks.empty(), std::string(op) + ": no tasks");
    require(k_max >= 1, std::string(op) + ": k_max must be >= 1");
    for (const auto& t : tasks)
        if (static_cast<int>(t.samples.size()) < k_max)
            throw std::invalid_argument(std::string(op) + ": k_max=" + std::to_string(k_max) +
                                        " exceeds the " + std::to_string(t.samples.size()) +
                                        " samples of task '" + t.task_id + "'");
}

// 1-based position of the first base-passing sample in a fresh permutation,
// 0 if none; `is_tp` reports whether that sample also passes the plus suite.
int first_acceptance(const data::TaskSamples& task, Rng& rng, std::vector<int>& perm,
                     bool& is_tp) {
    const int n = static_cast<int>(task.samples.size());
    perm.resize(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    rng.shuffle(perm);
    for (int i = 0; i < n; ++i) {
        const auto& s = task.samples[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
        if (s.base_pass) {
            is_tp = s.plus_pass;
            return i + 1;
        }
    }
    return 0;
}

Rng task_rng(const SimConfig& cfg, int run, const std::string& task_id) {
    return Rng(derive_seed(cfg.master_seed, static_cast<std::uint64_t>(run),
                           hash_str(task_id.data(), task_id.size())));
}

} // namespace

void CostBenefit::validate() const {
    require(std::isfinite(ratio) && ratio >= 0.0, "CostBenefit: ratio must be >= 0");
}

void SimConfig::validate() const {
    require(k_max >= 1, "SimConfig: k_max must be >= 1");
    require(n_runs >= 1, "SimConfig: n_runs must be >= 1");
    for (const auto& r : ratios) r.validate();
}

std::vector<FprBin> make_bins(int k_max) {
    require(k_max >= 1, "make_bins: k_max must be >= 1");
    std::vector<FprBin> bins;
    int lo = 1;
    int width = 1;
    while (lo <= k_max) {
        FprBin b;
        b.lo = lo;
        b.hi = std::min(k_max, lo + width - 1);
        bins.push_back(b);
        lo = b.hi + 1;
        width *= 2;
    }
    return bins;
}

McRewardCurve mc_reward_curve(const std::vector<data::TaskSamples>& tasks, const SimConfig& cfg,
                              CostBenefit ratio) {
    cfg.validate();
    ratio.validate();
    check_tasks(tasks, cfg.k_max, "mc_reward_curve");

    const std::size_t n_k = static_cast<std::size_t>(cfg.k_max) + 1;
    std::vector<double> sum(n_k, 0.0), sum_sq(n_k, 0.0);
    std::vector<double> run_curve(n_k);
    std::vector<int> perm;

    for (int run = 0; run < cfg.n_runs; ++run) {
        std::fill(run_curve.begin(), run_curve.end(), 0.0);
        for (const auto& task : tasks) {
            Rng rng = task_rng(cfg, run, task.task_id);
            bool is_tp = false;
            const int pos = first_acceptance(task, rng, perm, is_tp);
            if (pos >= 1 && pos <= cfg.k_max) {
                const double value = is_tp ? 1.0 : -ratio.ratio;
                run_curve[static_cast<std::size_t>(pos)] += value; // prefix-summed below
            }
        }
        double acc = 0.0;
        for (std::size_t k = 1; k < n_k; ++k) {
            acc += run_curve[k];
            const double mean_over_tasks = acc / static_cast<double>(tasks.size());
            sum[k] += mean_over_tasks;
            sum_sq[k] += mean_over_tasks * mean_over_tasks;
        }
    }

    McRewardCurve out;
    out.curve.rewards.assign(n_k, 0.0);
    out.se.assign(n_k, 0.0);
    const double runs = static_cast<double>(cfg.n_runs);
    for (std::size_t k = 1; k < n_k; ++k) {
        const double mean = sum[k] / runs;
        out.curve.rewards[k] = mean;
        if (cfg.n_runs > 1) {
            double var = (sum_sq[k] - runs * mean * mean) / (runs - 1.0);
            var = std::max(var, 0.0);
            out.se[k] = std::sqrt(var / runs);
        }
    }
    out.curve.k_opt = model::optimal_k(out.curve.rewards);
    out.curve.provenance = "mc";
    return out;
}

model::RewardCurve exact_reward_curve(const std::vector<data::TaskSamples>& tasks, int k_max,
                                      CostBenefit ratio) {
    ratio.validate();
    check_tasks(tasks, k_max, "exact_reward_curve");

    model::RewardCurve curve;
    curve.rewards.assign(static_cast<std::size_t>(k_max) + 1, 0.0);
    for (const auto& task : tasks) {
        const data::TaskStats st = data::tally(task);
        if (st.n_base_pass == 0) continue;
        const double value_given_hit =
            (st.n_true_pos - ratio.ratio * st.n_false_pos) / static_cast<double>(st.n_base_pass);
        for (int k = 1; k <= k_max; ++k) {
            const double hit = stats::pass_at_k(st.n_samples, st.n_base_pass, k);
            curve.rewards[static_cast<std::size_t>(k)] += hit * value_given_hit;
        }
    }
    for (auto& r : curve.rewards) r /= static_cast<double>(tasks.size());
    curve.rewards[0] = 0.0;
    curve.k_opt = model::optimal_k(curve.rewards);
    curve.provenance = "exact";
    return curve;
}

FprCurve fpr_curve(const std::vector<data::TaskSamples>& tasks, const SimConfig& cfg,
                   FprMode mode) {
    cfg.validate();
    check_tasks(tasks, cfg.k_max, "fpr_curve");

    FprCurve out;
    out.mode = mode;
    out.bins = make_bins(cfg.k_max);

    std::vector<std::size_t> bin_of(static_cast<std::size_t>(cfg.k_max) + 1, 0);
    for (std::size_t bi = 0; bi < out.bins.size(); ++bi)
        for (int k = out.bins[bi].lo; k <= out.bins[bi].hi; ++k)
            bin_of[static_cast<std::size_t>(k)] = bi;

    std::vector<int> perm;
    for (int run = 0; run < cfg.n_runs; ++run) {
        for (const auto& task : tasks) {
            Rng rng = task_rng(cfg, run, task.task_id);
            bool is_tp = false;
            const int pos = first_acceptance(task, rng, perm, is_tp);
            if (pos >= 1 && pos <= cfg.k_max) {
                auto& bin = out.bins[bin_of[static_cast<std::size_t>(pos)]];
                ++bin.n_acceptances;
                if (!is_tp) ++bin.n_false_pos;
            }
        }
    }

    const double episodes = static_cast<double>(cfg.n_runs) * static_cast<double>(tasks.size());
    for (auto& bin : out.bins) {
        if (mode == FprMode::marginal) {
            bin.rate = static_cast<double>(bin.n_false_pos) / episodes;
        } else if (bin.n_acceptances > 0) {
            bin.rate = static_cast<double>(bin.n_false_pos) /
                       static_cast<double>(bin.n_acceptances);
        }
    }
    return out;
}

int optimal_k_empirical(const model::RewardCurve& curve) {
    return model::optimal_k(curve.rewards);
}

} // namespace reslim::resample
