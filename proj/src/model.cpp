#include "reslim/model.hpp"
#include "reslim/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace reslim::model {

namespace {

bool is_probability(double x) { return x >= 0.0 && x <= 1.0; }

void require(bool ok, const std::string& msg) {
    if (!ok) throw std::invalid_argument(msg);
}

// x^n for integer n >= 0 by binary exponentiation; avoids libm pow so the
// k = 1 and equal-beta special cases stay exact.
double pow_int(double x, int n) {
    double r = 1.0;
    double b = x;
    while (n > 0) {
        if (n & 1) r *= b;
        b *= b;
        n >>= 1;
    }
    return r;
}

struct AttemptState {
    double post_easy = 0.0;
    double post_hard = 0.0;
    double surv_marginal = 0.0;   // beta_e^{k-1} p_e + beta_h^{k-1} p_h
    double surv_as_written = 0.0; // beta_e^{k-1} post_e + beta_h^{k-1} post_h
};

// Posterior and survival terms at attempt k. Powers are taken relative to
// max(beta_e, beta_h) so the posterior never hits 0/0 from underflow; only a
// process that genuinely cannot reach attempt k (survival identically zero)
// is reported as degenerate.
AttemptState attempt_state(const ModelParams& p, int k) {
    const double be = rejection_probability(p.mix.r_easy, p.verifier);
    const double bh = rejection_probability(p.mix.r_hard, p.verifier);

    AttemptState st;
    if (k == 1) {
        st.post_easy = p.mix.p_easy;
        st.post_hard = p.mix.p_hard;
        st.surv_marginal = 1.0;
        st.surv_as_written = 1.0;
        return st;
    }

    const double bmax = std::max(be, bh);
    if (bmax == 0.0)
        throw std::runtime_error("posterior_beliefs: both rejection probabilities are zero; "
                                 "the process cannot reach attempt " + std::to_string(k));

    const double we = p.mix.p_easy * pow_int(be / bmax, k - 1);
    const double wh = p.mix.p_hard * pow_int(bh / bmax, k - 1);
    const double z = we + wh;
    if (z == 0.0)
        throw std::runtime_error("posterior_beliefs: survival probability is zero at attempt " +
                                 std::to_string(k));

    st.post_easy = we / z;
    st.post_hard = wh / z;
    const double scale = pow_int(bmax, k - 1); // may underflow to 0 for large k; harmless
    st.surv_marginal = scale * z;
    if (be == bh) {
        st.surv_as_written = st.surv_marginal;
    } else {
        st.surv_as_written =
            scale * (pow_int(be / bmax, k - 1) * st.post_easy + pow_int(bh / bmax, k - 1) * st.post_hard);
    }
    return st;
}

} // namespace

void TaskMix::validate() const {
    require(is_probability(p_easy) && is_probability(p_hard),
            "TaskMix: priors must be probabilities in [0,1]");
    require(std::abs(p_easy + p_hard - 1.0) <= 1e-9, "TaskMix: p_easy + p_hard must equal 1");
    require(is_probability(r_easy) && is_probability(r_hard),
            "TaskMix: solution rates must be probabilities in [0,1]");
    require(r_easy >= r_hard, "TaskMix: r_easy must be >= r_hard");
}

void VerifierParams::validate() const {
    require(is_probability(completeness), "VerifierParams: completeness must be in [0,1]");
    require(is_probability(soundness), "VerifierParams: soundness must be in [0,1]");
}

void ValueParams::validate() const {
    require(std::isfinite(v_tp) && v_tp > 0.0, "ValueParams: v_tp must be > 0");
    require(std::isfinite(v_fp), "ValueParams: v_fp must be finite");
    require(std::isfinite(c_attempt) && c_attempt >= 0.0, "ValueParams: c_attempt must be >= 0");
}

void ModelParams::validate() const {
    mix.validate();
    verifier.validate();
    values.validate();
}

const char* to_string(EvMode mode) {
    return mode == EvMode::as_written ? "as-written" : "survival-consistent";
}

double rejection_probability(double r, const VerifierParams& v) {
    require(is_probability(r), "rejection_probability: r must be in [0,1]");
    v.validate();
    return (1.0 - v.completeness) * r + v.soundness * (1.0 - r);
}

BeliefState posterior_beliefs(const ModelParams& params, int k) {
    params.validate();
    require(k >= 1, "posterior_beliefs: k must be >= 1");
    const AttemptState st = attempt_state(params, k);
    return BeliefState{k, st.post_easy, st.post_hard};
}

AttemptProbabilities attempt_probabilities(const ModelParams& params, int k) {
    params.validate();
    require(k >= 1, "attempt_probabilities: k must be >= 1");
    const AttemptState st = attempt_state(params, k);

    const auto& m = params.mix;
    const auto& v = params.verifier;
    const double tp_easy = v.completeness * m.r_easy;
    const double tp_hard = v.completeness * m.r_hard;
    const double fp_easy = (1.0 - m.r_easy) * (1.0 - v.soundness);
    const double fp_hard = (1.0 - m.r_hard) * (1.0 - v.soundness);
    const double rej_easy = rejection_probability(m.r_easy, v);
    const double rej_hard = rejection_probability(m.r_hard, v);

    AttemptProbabilities ap;
    ap.attempt_index = k;
    ap.p_tp = st.post_easy * tp_easy + st.post_hard * tp_hard;
    ap.p_fp = st.post_easy * fp_easy + st.post_hard * fp_hard;
    ap.p_reject = st.post_easy * rej_easy + st.post_hard * rej_hard;
    return ap;
}

double expected_value_at(const ModelParams& params, int k, EvMode mode) {
    params.validate();
    require(k >= 1, "expected_value_at: k must be >= 1");
    const AttemptState st = attempt_state(params, k);

    const auto& m = params.mix;
    const auto& v = params.verifier;
    const double p_tp = st.post_easy * v.completeness * m.r_easy +
                        st.post_hard * v.completeness * m.r_hard;
    const double p_fp = st.post_easy * (1.0 - m.r_easy) * (1.0 - v.soundness) +
                        st.post_hard * (1.0 - m.r_hard) * (1.0 - v.soundness);

    const double survival = mode == EvMode::as_written ? st.surv_as_written : st.surv_marginal;
    const auto& val = params.values;
    return (val.v_tp * p_tp + val.v_fp * p_fp - val.c_attempt) * survival;
}

RewardCurve cumulative_reward(const ModelParams& params, int k_max, EvMode mode) {
    params.validate();
    require(k_max >= 0, "cumulative_reward: k_max must be >= 0");

    RewardCurve curve;
    curve.rewards.resize(static_cast<std::size_t>(k_max) + 1, 0.0);
    double total = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        total += expected_value_at(params, k, mode);
        curve.rewards[static_cast<std::size_t>(k)] = total;
    }
    curve.k_opt = optimal_k(curve.rewards);
    curve.provenance = std::string("analytic/") + to_string(mode);
    return curve;
}

std::vector<std::vector<int>> sweep_heatmap(const std::vector<ModelParams>& models,
                                            const std::vector<double>& ratios,
                                            int k_max, EvMode mode) {
    require(!models.empty(), "sweep_heatmap: models must be nonempty");
    require(!ratios.empty(), "sweep_heatmap: ratios must be nonempty");
    for (double ratio : ratios)
        require(std::isfinite(ratio) && ratio >= 0.0, "sweep_heatmap: ratios must be >= 0");

    std::vector<std::vector<int>> grid(models.size(), std::vector<int>(ratios.size(), 0));
    for (std::size_t mi = 0; mi < models.size(); ++mi) {
        for (std::size_t ri = 0; ri < ratios.size(); ++ri) {
            ModelParams p = models[mi];
            p.values.v_fp = -ratios[ri] * p.values.v_tp;
            grid[mi][ri] = cumulative_reward(p, k_max, mode).k_opt;
        }
    }
    return grid;
}

GenerativeSummary simulate_generative(const ModelParams& params, int k_budget,
                                      long long trials, std::uint64_t seed) {
    params.validate();
    require(k_budget >= 0, "simulate_generative: k_budget must be >= 0");
    require(trials >= 1, "simulate_generative: trials must be >= 1");

    const auto& m = params.mix;
    const auto& v = params.verifier;
    const auto& val = params.values;
    const double accept_incorrect = 1.0 - v.soundness;

    // Blocks are independent streams; merging per-block partial sums in block
    // order keeps the aggregate identical however the blocks are scheduled.
    constexpr long long kBlock = 1 << 16;
    double sum = 0.0;
    double sum_sq = 0.0;
    GenerativeSummary out;
    out.trials = trials;

    for (long long block = 0, done = 0; done < trials; ++block) {
        Rng rng(derive_seed(seed, static_cast<std::uint64_t>(block)));
        const long long end = std::min(trials, done + kBlock);
        double block_sum = 0.0;
        double block_sum_sq = 0.0;
        for (; done < end; ++done) {
            const double r = rng.bernoulli(m.p_easy) ? m.r_easy : m.r_hard;
            double reward = 0.0;
            int attempts = 0;
            bool accepted = false;
            bool correct = false;
            for (int k = 1; k <= k_budget; ++k) {
                ++attempts;
                correct = rng.bernoulli(r);
                accepted = correct ? rng.bernoulli(v.completeness) : rng.bernoulli(accept_incorrect);
                if (accepted) break;
            }
            if (accepted) {
                reward = correct ? val.v_tp : val.v_fp;
                ++(correct ? out.n_tp : out.n_fp);
            } else {
                ++out.n_none;
            }
            reward -= val.c_attempt * attempts;
            block_sum += reward;
            block_sum_sq += reward * reward;
        }
        sum += block_sum;
        sum_sq += block_sum_sq;
    }

    out.mean_reward = sum / static_cast<double>(trials);
    if (trials > 1) {
        const double n = static_cast<double>(trials);
        double var = (sum_sq - n * out.mean_reward * out.mean_reward) / (n - 1.0);
        var = std::max(var, 0.0);
        out.se_reward = std::sqrt(var / n);
    }
    return out;
}

int optimal_k(const std::vector<double>& rewards) {
    require(!rewards.empty(), "optimal_k: empty reward curve");
    std::size_t best = 0;
    for (std::size_t k = 1; k < rewards.size(); ++k)
        if (rewards[k] > rewards[best]) best = k;
    return static_cast<int>(best);
}

} // namespace reslim::model
