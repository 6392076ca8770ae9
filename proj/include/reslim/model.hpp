#ifndef RESLIM_MODEL_HPP
#define RESLIM_MODEL_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace reslim::model {

/// Two-type task mix: a task is "easy" with prior p_easy and the generator
/// produces a correct solution at rate r_easy on it (r_hard on hard tasks).
struct TaskMix {
    double p_easy = 0.5;
    double p_hard = 0.5;
    double r_easy = 1.0;
    double r_hard = 0.0;

    void validate() const; // throws std::invalid_argument
};

/// Verifier quality. completeness = P(accept | correct),
/// soundness = P(reject | incorrect).
struct VerifierParams {
    double completeness = 1.0;
    double soundness = 1.0;

    void validate() const;
};

/// Utilities attached to outcomes. v_fp is the value of shipping an accepted
/// false positive (normally <= 0), c_attempt the compute cost per attempt.
struct ValueParams {
    double v_tp = 1.0;
    double v_fp = -1.0;
    double c_attempt = 0.0;

    void validate() const;
};

struct ModelParams {
    TaskMix mix;
    VerifierParams verifier;
    ValueParams values;

    void validate() const;
};

/// Posterior task-type belief held just before attempt k, i.e. after
/// observing k-1 rejections. At k = 1 the posteriors equal the priors.
struct BeliefState {
    int attempt_index = 1;
    double p_easy_posterior = 0.0;
    double p_hard_posterior = 0.0;
};

/// Belief-weighted outcome probabilities for attempt k, conditional on the
/// previous k-1 attempts having been rejected.
struct AttemptProbabilities {
    int attempt_index = 1;
    double p_tp = 0.0;
    double p_fp = 0.0;
    double p_reject = 0.0;
};

/// The per-attempt expected value multiplies the outcome value by a survival
/// bracket. `as_written` weights the per-type survival terms by the attempt-k
/// posteriors; `survival_consistent` uses the marginal probability that the
/// first k-1 attempts were all rejected (which is what a generative run of
/// the process actually produces). The two coincide at k = 1 and whenever
/// both task types share the same rejection probability.
enum class EvMode { as_written, survival_consistent };

const char* to_string(EvMode mode);

struct RewardCurve {
    std::vector<double> rewards; // indexed by K = 0..k_max, rewards[0] == 0
    int k_opt = 0;               // smallest maximizing K; K = 0 always competes
    std::string provenance;      // e.g. "analytic/as-written", "mc", "exact"
};

/// Probability that the verifier rejects one sample drawn at correctness
/// rate r: (1 - completeness) * r + soundness * (1 - r).
double rejection_probability(double r, const VerifierParams& v);

BeliefState posterior_beliefs(const ModelParams& params, int k);

AttemptProbabilities attempt_probabilities(const ModelParams& params, int k);

double expected_value_at(const ModelParams& params, int k, EvMode mode);

RewardCurve cumulative_reward(const ModelParams& params, int k_max, EvMode mode);

/// k_opt grid over models x cost-benefit ratios. Entry [m][r] is the k_opt of
/// cumulative_reward for models[m] with v_fp replaced by -ratios[r] * v_tp.
std::vector<std::vector<int>> sweep_heatmap(const std::vector<ModelParams>& models,
                                            const std::vector<double>& ratios,
                                            int k_max, EvMode mode);

struct GenerativeSummary {
    long long trials = 0;
    double mean_reward = 0.0;
    double se_reward = 0.0; // standard error of mean_reward
    long long n_tp = 0;
    long long n_fp = 0;
    long long n_none = 0;
};

/// Monte Carlo run of the generator-verifier process itself: draw a task type
/// from the priors, then sample attempts until the first acceptance or the
/// budget runs out. Serves as the independent cross-check for the analytic
/// expected-value path. Deterministic for a fixed seed; trials are organised
/// in fixed-size blocks each seeded from (seed, block), so the aggregate does
/// not depend on execution order.
GenerativeSummary simulate_generative(const ModelParams& params, int k_budget,
                                      long long trials, std::uint64_t seed);

/// Smallest index maximizing rewards; rewards[0] (the "do not attempt"
/// option) always competes.
int optimal_k(const std::vector<double>& rewards);

} // namespace reslim::model

#endif
