// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Criteria with runtime budgets measure and enforce them.

#include "reslim/corpus.hpp"
#include "reslim/estimators.hpp"
#include "reslim/model.hpp"
#include "reslim/model_io.hpp"
#include "reslim/resampling.hpp"
#include "reslim/rng.hpp"
#include "reslim/style.hpp"
#include "reslim/synth.hpp"

#include "humaneval83_listing.hpp"
#include "naming_cases.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace reslim;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int idx, const char* name, bool ok, double seconds, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", idx, name, seconds,
                detail.empty() ? "" : " - ", detail.c_str());
    std::fflush(stdout);
    if (!ok) ++g_failures;
}

template <typename Fn>
void run_criterion(int idx, const char* name, double budget_seconds, Fn&& fn) {
    std::string detail;
    bool ok = false;
    const auto start = Clock::now();
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        ok = false;
        detail = std::string("exception: ") + e.what();
    }
    const double elapsed = std::chrono::duration<double>(Clock::now() - start).count();
    if (ok && budget_seconds > 0 && elapsed > budget_seconds) {
        ok = false;
        detail = "runtime budget exceeded (" + std::to_string(budget_seconds) + "s)";
    }
    report(idx, name, ok, elapsed, detail);
}

model::ModelParams table_params(double v_fp = -1.0) {
    model::ModelParams p;
    p.mix = {0.58, 0.42, 0.87, 0.13};
    p.verifier = {1.0, 0.75};
    p.values = {1.0, v_fp, 0.0};
    return p;
}

model::ModelParams random_params(Rng& rng, bool with_cost) {
    model::ModelParams p;
    p.mix.p_easy = 0.1 + 0.8 * rng.next_double();
    p.mix.p_hard = 1.0 - p.mix.p_easy;
    p.mix.r_easy = 0.5 + 0.45 * rng.next_double();
    p.mix.r_hard = 0.05 + (p.mix.r_easy - 0.05) * rng.next_double();
    p.verifier.completeness = 0.7 + 0.3 * rng.next_double();
    p.verifier.soundness = 0.3 + 0.65 * rng.next_double();
    p.values.v_tp = 1.0;
    p.values.v_fp = -2.0 * rng.next_double();
    p.values.c_attempt = with_cost ? 0.05 : 0.0;
    return p;
}

double pass_at_k_bruteforce(int n, int c, int k) {
    long long hit = 0, total = 0;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        if (std::popcount(mask) != k) continue;
        ++total;
        if (c > 0 && (mask & ((1u << c) - 1)) != 0) ++hit;
    }
    return static_cast<double>(hit) / static_cast<double>(total);
}

std::vector<double> enumerate_rewards(const data::TaskSamples& task, int k_max, double ratio) {
    const int n = static_cast<int>(task.samples.size());
    std::vector<int> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> total(static_cast<std::size_t>(k_max) + 1, 0.0);
    long long n_perms = 0;
    do {
        ++n_perms;
        for (int i = 0; i < n; ++i) {
            const auto& s =
                task.samples[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];
            if (s.base_pass) {
                const double value = s.plus_pass ? 1.0 : -ratio;
                for (int k = i + 1; k <= k_max; ++k) total[static_cast<std::size_t>(k)] += value;
                break;
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    for (auto& v : total) v /= static_cast<double>(n_perms);
    return total;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(RESLIM_BIN) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    if (status == -1) return -1;
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 1. Table-parameter reproduction: K_opt <= 3 for v_fp in {-0.7, -1, -2},
//    K_opt = 0 at v_fp = -10, as-written mode, exact integers.
bool criterion1(std::string& detail) {
    std::ostringstream oss;
    bool ok = true;
    for (double v_fp : {-0.7, -1.0, -2.0}) {
        const auto curve =
            model::cumulative_reward(table_params(v_fp), 64, model::EvMode::as_written);
        oss << "k_opt(" << v_fp << ")=" << curve.k_opt << " ";
        ok = ok && curve.k_opt >= 1 && curve.k_opt <= 3;
    }
    const auto harsh =
        model::cumulative_reward(table_params(-10.0), 64, model::EvMode::as_written);
    oss << "k_opt(-10)=" << harsh.k_opt;
    ok = ok && harsh.k_opt == 0;
    detail = oss.str();
    return ok;
}

// 2. Survival-consistent cumulative reward vs the generative simulator at
//    1e6 trials, 20 seeded draws, every K <= 16, within 3 standard errors.
bool criterion2(std::string& detail) {
    Rng rng(0xACCE97);
    double worst = 0.0;
    for (int draw = 0; draw < 20; ++draw) {
        const auto p = random_params(rng, draw % 4 == 0);
        const auto curve = model::cumulative_reward(p, 16, model::EvMode::survival_consistent);
        for (int k = 1; k <= 16; ++k) {
            const auto sim = model::simulate_generative(
                p, k, 1000000,
                derive_seed(9001, static_cast<std::uint64_t>(draw),
                            static_cast<std::uint64_t>(k)));
            const double err =
                std::abs(sim.mean_reward - curve.rewards[static_cast<std::size_t>(k)]);
            const double tol = 3.0 * sim.se_reward + 1e-9;
            worst = std::max(worst, err / tol);
            if (err > tol) {
                detail = "draw " + std::to_string(draw) + " K=" + std::to_string(k) +
                         " err=" + std::to_string(err) + " > 3se=" + std::to_string(tol);
                return false;
            }
        }
    }
    detail = "20 draws x 16 budgets, worst |err|/3se = " + std::to_string(worst);
    return true;
}

// 3. Permutation MC at 1000 runs vs the closed form on 20 seeded corpora,
//    and the closed form vs full n! enumeration for every shape up to n = 6.
bool criterion3(std::string& detail) {
    for (int n = 1; n <= 6; ++n) {
        for (int b = 0; b <= n; ++b) {
            for (int t = 0; t <= b; ++t) {
                data::TaskSamples task{"x", {}};
                for (int i = 0; i < t; ++i) task.samples.push_back({true, true});
                for (int i = 0; i < b - t; ++i) task.samples.push_back({true, false});
                for (int i = 0; i < n - b; ++i) task.samples.push_back({false, false});
                const auto oracle = enumerate_rewards(task, n, 2.0);
                const auto exact = resample::exact_reward_curve({task}, n, {2.0});
                for (int k = 0; k <= n; ++k) {
                    if (std::abs(exact.rewards[static_cast<std::size_t>(k)] -
                                 oracle[static_cast<std::size_t>(k)]) > 1e-12) {
                        detail = "enumeration mismatch at n=" + std::to_string(n) +
                                 " b=" + std::to_string(b) + " t=" + std::to_string(t);
                        return false;
                    }
                }
            }
        }
    }

    Rng rng(0xC0FFEE);
    const double ratio_pool[] = {0.0, 1.0, 2.0, 4.0, 8.0};
    double worst = 0.0;
    for (int corpus_i = 0; corpus_i < 20; ++corpus_i) {
        const int n_tasks = 10 + static_cast<int>(rng.next_below(41));   // <= 50
        const int n_samples = 10 + static_cast<int>(rng.next_below(41)); // <= 50
        std::vector<data::TaskSamples> tasks;
        for (int t = 0; t < n_tasks; ++t) {
            data::TaskSamples task{"t" + std::to_string(t), {}};
            const double p_base = rng.next_double();
            const double p_tp = rng.next_double();
            for (int s = 0; s < n_samples; ++s) {
                const bool base = rng.bernoulli(p_base);
                task.samples.push_back({base, base && rng.bernoulli(p_tp)});
            }
            tasks.push_back(std::move(task));
        }
        resample::SimConfig cfg;
        cfg.k_max = n_samples;
        cfg.n_runs = 1000;
        cfg.master_seed = derive_seed(7777, static_cast<std::uint64_t>(corpus_i));
        const resample::CostBenefit ratio{ratio_pool[corpus_i % 5]};
        const auto mc = resample::mc_reward_curve(tasks, cfg, ratio);
        const auto exact = resample::exact_reward_curve(tasks, cfg.k_max, ratio);
        for (int k = 1; k <= cfg.k_max; ++k) {
            const auto ku = static_cast<std::size_t>(k);
            const double err = std::abs(mc.curve.rewards[ku] - exact.rewards[ku]);
            const double tol = 3.0 * mc.se[ku] + 1e-9;
            worst = std::max(worst, err / tol);
            if (err > tol) {
                detail = "corpus " + std::to_string(corpus_i) + " K=" + std::to_string(k) +
                         " err=" + std::to_string(err) + " > 3se=" + std::to_string(tol);
                return false;
            }
        }
    }
    detail = "all shapes n<=6 exact; 20 corpora, worst |err|/3se = " + std::to_string(worst);
    return true;
}

// 4. pass_at_k equals subset enumeration everywhere up to n = 8; conditional
//    accuracy ordering holds on 1000 random tables.
bool criterion4(std::string& detail) {
    for (int n = 1; n <= 8; ++n)
        for (int c = 0; c <= n; ++c)
            for (int k = 1; k <= n; ++k)
                if (std::abs(stats::pass_at_k(n, c, k) - pass_at_k_bruteforce(n, c, k)) >
                    1e-12) {
                    detail = "pass_at_k mismatch at n=" + std::to_string(n) +
                             " c=" + std::to_string(c) + " k=" + std::to_string(k);
                    return false;
                }

    Rng rng(4004);
    for (int rep = 0; rep < 1000; ++rep) {
        std::vector<data::TaskStats> table;
        const int n_tasks = 1 + static_cast<int>(rng.next_below(15));
        bool any_solved = false;
        for (int t = 0; t < n_tasks; ++t) {
            data::TaskStats st;
            st.task_id = "t" + std::to_string(t);
            st.n_samples = 1 + static_cast<int>(rng.next_below(30));
            st.n_base_pass = static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(st.n_samples) + 1));
            st.n_true_pos = static_cast<int>(rng.next_below(
                static_cast<std::uint64_t>(st.n_base_pass) + 1));
            st.n_false_pos = st.n_base_pass - st.n_true_pos;
            any_solved = any_solved || st.n_base_pass > 0;
            table.push_back(st);
        }
        for (auto handling : {stats::UnsolvedHandling::exclude, stats::UnsolvedHandling::as_zero,
                              stats::UnsolvedHandling::as_one}) {
            if (!any_solved && handling == stats::UnsolvedHandling::exclude) continue;
            const auto cond = stats::conditional_accuracy(table, handling);
            if (!(cond.lower <= cond.point + 1e-12 && cond.point <= cond.upper + 1e-12)) {
                detail = "ordering violated at rep " + std::to_string(rep);
                return false;
            }
        }
    }
    detail = "576 pass_at_k cells, 1000 ordering cases";
    return true;
}

// 5. synth -> fit round trip through the CLI binary recovers p_easy, r_easy,
//    r_hard and soundness within +-0.03 at 200 tasks x 500 samples.
bool criterion5(std::string& detail) {
    const fs::path dir = fs::temp_directory_path() / "reslim_acceptance_fit";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const auto params_file = dir / "params.toml";
    model::save_params(table_params(), params_file.string());

    if (run_cli("synth --params " + params_file.string() + " --out " +
                (dir / "c.jsonl").string() +
                " --tasks 200 --samples-per-task 500 --model-id m --seed 3") != 0) {
        detail = "synth invocation failed";
        return false;
    }
    if (run_cli("fit --corpus " + (dir / "c.jsonl").string() + " --out " +
                (dir / "fit").string()) != 0) {
        detail = "fit invocation failed";
        return false;
    }
    const auto fitted = model::load_params((dir / "fit" / "fit_m.toml").string());
    fs::remove_all(dir);

    std::ostringstream oss;
    oss << "p_easy=" << fitted.mix.p_easy << " r_easy=" << fitted.mix.r_easy
        << " r_hard=" << fitted.mix.r_hard << " soundness=" << fitted.verifier.soundness;
    detail = oss.str();
    return std::abs(fitted.mix.p_easy - 0.58) <= 0.03 &&
           std::abs(fitted.mix.r_easy - 0.87) <= 0.03 &&
           std::abs(fitted.mix.r_hard - 0.13) <= 0.03 &&
           std::abs(fitted.verifier.soundness - 0.75) <= 0.03;
}

// 6. Monotonicity properties: ratio-0 curves in both engines, pass_at_k in k,
//    hard-task posterior when rejections favor hard.
bool criterion6(std::string& detail) {
    Rng rng(606060);
    for (int rep = 0; rep < 25; ++rep) {
        std::vector<data::TaskSamples> tasks;
        const int n_samples = 6 + static_cast<int>(rng.next_below(10));
        for (int t = 0; t < 5; ++t) {
            data::TaskSamples task{"t" + std::to_string(t), {}};
            const double p_base = rng.next_double();
            const double p_tp = rng.next_double();
            for (int s = 0; s < n_samples; ++s) {
                const bool base = rng.bernoulli(p_base);
                task.samples.push_back({base, base && rng.bernoulli(p_tp)});
            }
            tasks.push_back(std::move(task));
        }
        resample::SimConfig cfg;
        cfg.k_max = n_samples;
        cfg.n_runs = 80;
        cfg.master_seed = static_cast<std::uint64_t>(rep);
        const auto mc = resample::mc_reward_curve(tasks, cfg, {0.0});
        const auto exact = resample::exact_reward_curve(tasks, cfg.k_max, {0.0});
        for (std::size_t k = 1; k < mc.curve.rewards.size(); ++k) {
            if (mc.curve.rewards[k] < mc.curve.rewards[k - 1] - 1e-15 ||
                exact.rewards[k] < exact.rewards[k - 1] - 1e-15) {
                detail = "ratio-0 curve decreased at rep " + std::to_string(rep);
                return false;
            }
        }
    }

    for (int n = 1; n <= 10; ++n)
        for (int c = 0; c <= n; ++c) {
            double prev = 0.0;
            for (int k = 1; k <= n; ++k) {
                const double p = stats::pass_at_k(n, c, k);
                if (p < prev - 1e-15) {
                    detail = "pass_at_k decreased in k";
                    return false;
                }
                prev = p;
            }
        }

    for (int rep = 0; rep < 200; ++rep) {
        const auto p = random_params(rng, false);
        const double b_easy = model::rejection_probability(p.mix.r_easy, p.verifier);
        const double b_hard = model::rejection_probability(p.mix.r_hard, p.verifier);
        if (b_hard <= b_easy) continue;
        double prev = 0.0;
        for (int k = 1; k <= 30; ++k) {
            const auto belief = model::posterior_beliefs(p, k);
            if (belief.p_hard_posterior < prev - 1e-12) {
                detail = "hard-task posterior decreased";
                return false;
            }
            prev = belief.p_hard_posterior;
        }
    }
    detail = "ratio-0 curves, pass_at_k, posterior drift";
    return true;
}

// 7. Style checks: the HumanEval/83 listing is flagged non-camelCase via
//    str_num, and the labeled identifier table matches exactly.
bool criterion7(std::string& detail) {
    const auto unit = style::extract_code_unit(kCountNumbersListing);
    const auto check = style::check_rule(unit, style::StyleRule::camel());
    if (check.compliant) {
        detail = "listing not flagged";
        return false;
    }
    bool saw_str_num = false;
    for (const auto& occ : unit.identifiers)
        saw_str_num = saw_str_num ||
                      (occ.name == "str_num" && occ.kind == style::IdentifierKind::variable &&
                       !style::is_camel_case(occ.name));
    if (!saw_str_num) {
        detail = "str_num not identified as the violating variable";
        return false;
    }

    int n_cases = 0;
    for (const auto& c : kNamingCases) {
        ++n_cases;
        if (style::is_camel_case(c.ident) != c.camel_ok ||
            style::is_snake_case(c.ident) != c.snake_ok) {
            detail = std::string("label mismatch for '") + c.ident + "'";
            return false;
        }
    }
    detail = "listing flagged at line " + std::to_string(check.violation_lines.at(0)) + ", " +
             std::to_string(n_cases) + " labeled identifiers";
    return n_cases >= 20;
}

// 8. The paper-scale empirical magnitudes need real LLM sample corpora; the
//    artifact ships the corpus format and a seeded generator so they can be
//    dropped in. Verified here: generate, persist, reload, estimate.
bool criterion8(std::string& detail) {
    const fs::path dir = fs::temp_directory_path() / "reslim_acceptance_dropin";
    fs::remove_all(dir);
    fs::create_directories(dir);

    synth::SynthConfig cfg;
    cfg.n_tasks = 30;
    cfg.samples_per_task = 20;
    cfg.seed = 8;
    const auto corpus = synth::make_corpus(table_params(), cfg);
    const auto path = (dir / "c.jsonl").string();
    data::save_corpus(corpus, path);
    const auto reloaded = data::load_corpus(path);
    fs::remove_all(dir);

    if (!(reloaded.records() == corpus.records())) {
        detail = "persisted corpus did not reload identically";
        return false;
    }
    const auto table = reloaded.task_table("synthetic");
    const double pass1 = stats::single_sample_accuracy(table);
    const auto cond = stats::conditional_accuracy(table);
    std::ostringstream oss;
    oss << "model-specific magnitudes need real sample corpora; drop-in path verified "
        << "(pass1=" << pass1 << ", conditional=" << cond.point << ")";
    detail = oss.str();
    return pass1 > 0.0 && cond.point > 0.0;
}

} // namespace

int main() {
    run_criterion(1, "analytic reproduction of the table-parameter optima", 1.0, criterion1);
    run_criterion(2, "generative oracle matches survival-consistent rewards", 60.0, criterion2);
    run_criterion(3, "permutation MC matches the closed form and enumeration", 60.0, criterion3);
    run_criterion(4, "pass@k enumeration and conditional-accuracy ordering", 0.0, criterion4);
    run_criterion(5, "synth -> fit parameter recovery within +-0.03", 30.0, criterion5);
    run_criterion(6, "monotonicity property suite", 0.0, criterion6);
    run_criterion(7, "style convention checks", 0.0, criterion7);
    run_criterion(8, "desk-scale substitutes for corpus-bound results", 0.0, criterion8);

    if (g_failures) std::printf("%d criterion(s) FAILED\n", g_failures);
    else std::printf("all 8 criteria passed\n");
    return g_failures == 0 ? 0 : 1;
}
