#include "reslim/corpus.hpp"
#include "reslim/errors.hpp"
#include "reslim/estimators.hpp"
#include "reslim/model.hpp"
#include "reslim/model_io.hpp"
#include "reslim/resampling.hpp"
#include "reslim/style.hpp"
#include "reslim/synth.hpp"
#include "reslim/table.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace reslim;

namespace {

struct CommonOpts {
    std::string corpus_path;
    std::string out_dir;
    std::string exclusions_path;
    std::string format_name = "csv";
    std::uint64_t seed = 0;

    io::Format format() const { return io::parse_format(format_name); }
};

std::string out_stem(const CommonOpts& opts, const std::string& name) {
    fs::create_directories(opts.out_dir);
    return (fs::path(opts.out_dir) / name).string();
}

void report_written(const std::string& path) { std::cout << "wrote " << path << "\n"; }

void write_table(const io::Table& table, const CommonOpts& opts, const std::string& name) {
    report_written(table.write_file(out_stem(opts, name), opts.format()));
}

// Loads the corpus and applies the exclusion policy when one is configured;
// the exclusion report lands next to the other outputs.
data::Corpus load_input_corpus(const CommonOpts& opts) {
    data::Corpus corpus = data::load_corpus(opts.corpus_path);
    if (opts.exclusions_path.empty()) return corpus;

    const data::ExclusionPolicy policy = data::load_exclusion_policy(opts.exclusions_path);
    auto [filtered, report] = data::apply_exclusions(corpus, policy);
    const std::string path = out_stem(opts, "exclusions") + ".csv";
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open output file: " + path);
    data::write_exclusion_csv(report, os);
    report_written(path);
    return std::move(filtered);
}

model::EvMode parse_mode(const std::string& name) {
    if (name == "as-written") return model::EvMode::as_written;
    if (name == "consistent") return model::EvMode::survival_consistent;
    throw std::invalid_argument("unknown mode '" + name + "' (expected as-written or consistent)");
}

std::string sanitize_filename(const std::string& id) {
    std::string out;
    for (char c : id)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' || c == '_')
                   ? c
                   : '_';
    return out;
}

void cmd_analyze(const CommonOpts& opts, double precision_threshold, int bins,
                 const std::string& difficulty_source, const std::string& unsolved) {
    const data::Corpus corpus = load_input_corpus(opts);
    const auto source = difficulty_source == "base" ? stats::DifficultySource::base
                                                    : stats::DifficultySource::plus;
    stats::UnsolvedHandling handling = stats::UnsolvedHandling::exclude;
    if (unsolved == "zero") handling = stats::UnsolvedHandling::as_zero;
    else if (unsolved == "one") handling = stats::UnsolvedHandling::as_one;

    io::Table accuracy({"model_id", "single_sample_accuracy", "conditional_point",
                        "conditional_lower", "conditional_upper", "n_tasks_used",
                        "n_tasks_unsolved"});
    io::Table filtered_accuracy(accuracy.columns());
    io::Table difficulty({"model_id", "bin_lo", "bin_hi", "count"});
    io::Table dominance({"strong_model", "weak_model", "strong_pass1", "weak_upper", "dominates"});

    struct PerModel {
        std::string id;
        double pass1;
        stats::ConditionalAccuracy cond;
    };
    std::vector<PerModel> per_model;

    for (const auto& model_id : corpus.models()) {
        const auto table = corpus.task_table(model_id);
        const double pass1 = stats::single_sample_accuracy(table);
        const auto cond = stats::conditional_accuracy(table, handling);
        accuracy.add_row({model_id, pass1, cond.point, cond.lower, cond.upper, cond.n_tasks_used,
                          cond.n_tasks_unsolved});
        per_model.push_back({model_id, pass1, cond});

        const auto low_precision = stats::precision_filter(table, precision_threshold);
        if (!low_precision.empty()) {
            const double fp1 = stats::single_sample_accuracy(low_precision);
            const auto fcond = stats::conditional_accuracy(low_precision, handling);
            filtered_accuracy.add_row({model_id, fp1, fcond.point, fcond.lower, fcond.upper,
                                       fcond.n_tasks_used, fcond.n_tasks_unsolved});
        }

        const auto hist = stats::difficulty_histogram(table, bins, source);
        for (std::size_t b = 0; b + 1 < hist.edges.size(); ++b)
            difficulty.add_row({model_id, hist.edges[b], hist.edges[b + 1], hist.counts[b]});
    }

    for (const auto& strong : per_model)
        for (const auto& weak : per_model)
            dominance.add_row({strong.id, weak.id, strong.pass1, weak.cond.upper,
                               stats::dominance_check(strong.pass1, weak.cond)});

    write_table(accuracy, opts, "accuracy");
    write_table(filtered_accuracy, opts, "accuracy_filtered");
    write_table(difficulty, opts, "difficulty");
    write_table(dominance, opts, "dominance");
}

void cmd_simulate(const CommonOpts& opts, std::vector<double> ratios, int k_max, int n_runs,
                  const std::string& fpr_mode_name) {
    const data::Corpus corpus = load_input_corpus(opts);
    const auto fpr_mode = fpr_mode_name == "marginal" ? resample::FprMode::marginal
                                                      : resample::FprMode::conditional;

    resample::SimConfig cfg;
    cfg.k_max = k_max;
    cfg.n_runs = n_runs;
    cfg.master_seed = opts.seed;
    for (double r : ratios) cfg.ratios.push_back({r});
    cfg.validate();

    io::Table curves({"model_id", "K", "reward", "ratio", "engine"});
    io::Table fpr({"model_id", "bin_lo", "bin_hi", "rate", "n_acceptances"});
    io::Table kopt({"model_id", "ratio", "engine", "k_opt"});

    for (const auto& model_id : corpus.models()) {
        const auto tasks = corpus.task_samples(model_id);
        for (const auto& ratio : cfg.ratios) {
            const auto mc = resample::mc_reward_curve(tasks, cfg, ratio);
            const auto exact = resample::exact_reward_curve(tasks, cfg.k_max, ratio);
            for (std::size_t k = 0; k < mc.curve.rewards.size(); ++k) {
                curves.add_row({model_id, static_cast<long long>(k), mc.curve.rewards[k],
                                ratio.ratio, "mc"});
                curves.add_row({model_id, static_cast<long long>(k), exact.rewards[k],
                                ratio.ratio, "exact"});
            }
            kopt.add_row({model_id, ratio.ratio, "mc", resample::optimal_k_empirical(mc.curve)});
            kopt.add_row({model_id, ratio.ratio, "exact", exact.k_opt});
        }

        const auto curve = resample::fpr_curve(tasks, cfg, fpr_mode);
        for (const auto& bin : curve.bins)
            fpr.add_row({model_id, bin.lo, bin.hi,
                         bin.rate ? io::Table::Cell(*bin.rate) : io::Table::Cell(nullptr),
                         bin.n_acceptances});
    }

    write_table(curves, opts, "reward_curves");
    write_table(fpr, opts, "fpr");
    write_table(kopt, opts, "k_opt");
}

void cmd_model(const CommonOpts& opts, const std::string& params_path, int k_max,
               const std::string& mode_name, std::vector<double> ratios, long long mc_trials) {
    const model::ModelParams params = model::load_params(params_path);
    const model::EvMode mode = parse_mode(mode_name);

    io::Table traj({"k", "p_easy_posterior", "p_hard_posterior", "p_tp", "p_fp", "p_reject",
                    "ev"});
    for (int k = 1; k <= k_max; ++k) {
        const auto belief = model::posterior_beliefs(params, k);
        const auto ap = model::attempt_probabilities(params, k);
        traj.add_row({k, belief.p_easy_posterior, belief.p_hard_posterior, ap.p_tp, ap.p_fp,
                      ap.p_reject, model::expected_value_at(params, k, mode)});
    }
    write_table(traj, opts, "trajectories");

    if (ratios.empty()) {
        const auto curve = model::cumulative_reward(params, k_max, mode);
        io::Table table({"K", "reward", "is_opt"});
        for (std::size_t k = 0; k < curve.rewards.size(); ++k)
            table.add_row({static_cast<long long>(k), curve.rewards[k],
                           static_cast<int>(k) == curve.k_opt});
        write_table(table, opts, "reward");
    } else {
        io::Table table({"ratio", "K", "reward", "is_opt"});
        for (double ratio : ratios) {
            model::ModelParams p = params;
            p.values.v_fp = -ratio * p.values.v_tp;
            const auto curve = model::cumulative_reward(p, k_max, mode);
            for (std::size_t k = 0; k < curve.rewards.size(); ++k)
                table.add_row({ratio, static_cast<long long>(k), curve.rewards[k],
                               static_cast<int>(k) == curve.k_opt});
        }
        write_table(table, opts, "reward");
    }

    if (mc_trials > 0) {
        const auto sim = model::simulate_generative(params, k_max, mc_trials, opts.seed);
        const auto consistent =
            model::cumulative_reward(params, k_max, model::EvMode::survival_consistent);
        io::Table table({"trials", "mean_reward", "se_reward", "freq_tp", "freq_fp", "freq_none",
                         "analytic_consistent_reward"});
        const double n = static_cast<double>(sim.trials);
        table.add_row({sim.trials, sim.mean_reward, sim.se_reward, sim.n_tp / n, sim.n_fp / n,
                       sim.n_none / n, consistent.rewards.back()});
        write_table(table, opts, "mc_check");
    }
}

void cmd_sweep(const CommonOpts& opts, const std::vector<std::string>& params_files,
               std::vector<double> ratios, int k_max, const std::string& mode_name) {
    std::vector<model::ModelParams> models;
    for (const auto& path : params_files) models.push_back(model::load_params(path));

    const auto grid = model::sweep_heatmap(models, ratios, k_max, parse_mode(mode_name));

    io::Table table({"model", "ratio", "k_opt"});
    for (std::size_t m = 0; m < models.size(); ++m) {
        const std::string name = fs::path(params_files[m]).stem().string();
        for (std::size_t r = 0; r < ratios.size(); ++r)
            table.add_row({name, ratios[r], grid[m][r]});
    }
    write_table(table, opts, "sweep");
}

void cmd_fit(const CommonOpts& opts, double easy_threshold) {
    const data::Corpus corpus = load_input_corpus(opts);

    io::Table summary({"model_id", "p_easy", "r_easy", "r_hard", "completeness", "soundness"});
    for (const auto& model_id : corpus.models()) {
        const auto fitted = stats::fit_model_params(corpus.task_table(model_id), easy_threshold);
        const std::string path =
            out_stem(opts, "fit_" + sanitize_filename(model_id)) + ".toml";
        model::save_params(fitted, path);
        report_written(path);
        summary.add_row({model_id, fitted.mix.p_easy, fitted.mix.r_easy, fitted.mix.r_hard,
                         fitted.verifier.completeness, fitted.verifier.soundness});
    }
    write_table(summary, opts, "fit_summary");
}

void cmd_style(const CommonOpts& opts, const std::vector<std::string>& rule_names) {
    const data::Corpus corpus = load_input_corpus(opts);

    std::vector<style::StyleRule> rules;
    for (const auto& name : rule_names) {
        if (name == "camel") rules.push_back(style::StyleRule::camel());
        else if (name == "snake") rules.push_back(style::StyleRule::snake());
        else if (name == "length") rules.push_back(style::StyleRule::length());
        else if (name == "comments") rules.push_back(style::StyleRule::comments());
        else throw std::invalid_argument("unknown style rule '" + name + "'");
    }

    io::Table report({"model_id", "rule", "group", "mean_compliance", "n"});
    io::Table detail({"model_id", "task_id", "sample_id", "rule", "group", "compliant", "score",
                      "violation_lines"});
    for (const auto& model_id : corpus.models()) {
        for (const auto& rule : rules) {
            const auto rep = style::group_compare(corpus, model_id, rule);
            if (rep.true_pos)
                report.add_row({model_id, rule.name(), "tp", rep.true_pos->mean_boolean,
                                rep.true_pos->n});
            if (rep.false_pos)
                report.add_row({model_id, rule.name(), "fp", rep.false_pos->mean_boolean,
                                rep.false_pos->n});
            for (const auto& sample : rep.samples) {
                std::string lines;
                for (int l : sample.check.violation_lines) {
                    if (!lines.empty()) lines += ';';
                    lines += std::to_string(l);
                }
                detail.add_row({model_id, sample.task_id, sample.sample_id, rule.name(),
                                sample.is_false_positive ? "fp" : "tp", sample.check.compliant,
                                sample.check.score, lines});
            }
        }
    }
    write_table(report, opts, "style_report");
    write_table(detail, opts, "style_detail");
}

void cmd_synth(const CommonOpts& opts, const std::string& params_path,
               const std::string& out_file, int n_tasks, int samples_per_task,
               const std::string& model_id, bool with_code, double camel_rate_tp,
               double camel_rate_fp) {
    const model::ModelParams params = model::load_params(params_path);
    synth::SynthConfig cfg;
    cfg.n_tasks = n_tasks;
    cfg.samples_per_task = samples_per_task;
    cfg.model_id = model_id;
    cfg.seed = opts.seed;
    cfg.with_code = with_code;
    cfg.camel_rate_tp = camel_rate_tp;
    cfg.camel_rate_fp = camel_rate_fp;

    const data::Corpus corpus = synth::make_corpus(params, cfg);
    if (const auto parent = fs::path(out_file).parent_path(); !parent.empty())
        fs::create_directories(parent);
    data::save_corpus(corpus, out_file);
    report_written(out_file);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Analytics for resampling against imperfect verifiers: analytic model, "
                 "recorded-outcome estimators, permutation simulation, style checks"};
    app.require_subcommand(1);

    CommonOpts opts;

    auto add_common_out = [&](CLI::App* cmd) {
        cmd->add_option("--out", opts.out_dir, "output directory")->required();
        cmd->add_option("--format", opts.format_name, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}))
            ->capture_default_str();
    };
    auto add_corpus = [&](CLI::App* cmd) {
        cmd->add_option("--corpus", opts.corpus_path, "JSON Lines corpus path")->required();
        cmd->add_option("--exclusions", opts.exclusions_path, "exclusion policy file");
    };

    // analyze
    double precision_threshold = 0.9;
    int bins = 10;
    std::string difficulty_source = "plus";
    std::string unsolved = "exclude";
    auto* analyze = app.add_subcommand("analyze", "accuracy, bounds, histograms, dominance");
    add_corpus(analyze);
    add_common_out(analyze);
    analyze->add_option("--precision-threshold", precision_threshold,
                        "verifier-precision cutoff for the filtered variant")
        ->capture_default_str();
    analyze->add_option("--bins", bins, "difficulty histogram bins")->capture_default_str();
    analyze->add_option("--difficulty-source", difficulty_source, "plus or base pass rates")
        ->check(CLI::IsMember({"plus", "base"}))
        ->capture_default_str();
    analyze->add_option("--unsolved", unsolved, "point-estimate handling of unsolved tasks")
        ->check(CLI::IsMember({"exclude", "zero", "one"}))
        ->capture_default_str();
    analyze->callback(
        [&] { cmd_analyze(opts, precision_threshold, bins, difficulty_source, unsolved); });

    // simulate
    std::vector<double> sim_ratios{0, 1, 2, 4, 8};
    int sim_k_max = 10;
    int sim_runs = 1000;
    std::string fpr_mode = "conditional";
    auto* simulate = app.add_subcommand("simulate", "permutation Monte Carlo over a corpus");
    add_corpus(simulate);
    add_common_out(simulate);
    simulate->add_option("--seed", opts.seed, "master seed")->capture_default_str();
    simulate->add_option("--ratios", sim_ratios, "cost-benefit ratios")->capture_default_str();
    simulate->add_option("--k-max", sim_k_max, "maximum attempt budget")->capture_default_str();
    simulate->add_option("--runs", sim_runs, "permutation repetitions")->capture_default_str();
    simulate->add_option("--fpr-mode", fpr_mode, "conditional or marginal FPR")
        ->check(CLI::IsMember({"conditional", "marginal"}))
        ->capture_default_str();
    simulate->callback([&] { cmd_simulate(opts, sim_ratios, sim_k_max, sim_runs, fpr_mode); });

    // model
    std::string params_path;
    int model_k_max = 10;
    std::string mode_name = "as-written";
    std::vector<double> model_ratios;
    long long mc_trials = 0;
    auto* model_cmd = app.add_subcommand("model", "analytic expected-value trajectories");
    model_cmd->add_option("--params", params_path, "model parameter file")->required();
    add_common_out(model_cmd);
    model_cmd->add_option("--k-max", model_k_max, "maximum attempt budget")
        ->capture_default_str();
    model_cmd->add_option("--mode", mode_name, "as-written or consistent")
        ->check(CLI::IsMember({"as-written", "consistent"}))
        ->capture_default_str();
    model_cmd->add_option("--ratios", model_ratios,
                          "cost-benefit ratios (overrides the file's v_fp)");
    model_cmd->add_option("--mc-trials", mc_trials, "generative cross-check trials (0 = off)")
        ->capture_default_str();
    model_cmd->add_option("--seed", opts.seed, "cross-check seed")->capture_default_str();
    model_cmd->callback(
        [&] { cmd_model(opts, params_path, model_k_max, mode_name, model_ratios, mc_trials); });

    // sweep
    std::vector<std::string> sweep_params;
    std::vector<double> sweep_ratios;
    int sweep_k_max = 10;
    std::string sweep_mode = "as-written";
    auto* sweep = app.add_subcommand("sweep", "k_opt heatmap over models x ratios");
    sweep->add_option("--params", sweep_params, "model parameter files")->required();
    sweep->add_option("--ratios", sweep_ratios, "cost-benefit ratios")->required();
    sweep->add_option("--k-max", sweep_k_max, "maximum attempt budget")->capture_default_str();
    sweep->add_option("--mode", sweep_mode, "as-written or consistent")
        ->check(CLI::IsMember({"as-written", "consistent"}))
        ->capture_default_str();
    add_common_out(sweep);
    sweep->callback([&] { cmd_sweep(opts, sweep_params, sweep_ratios, sweep_k_max, sweep_mode); });

    // fit
    double easy_threshold = 0.5;
    auto* fit = app.add_subcommand("fit", "fit analytic model parameters from a corpus");
    add_corpus(fit);
    add_common_out(fit);
    fit->add_option("--easy-threshold", easy_threshold, "plus-pass rate separating easy tasks")
        ->capture_default_str();
    fit->callback([&] { cmd_fit(opts, easy_threshold); });

    // style
    std::vector<std::string> rule_names{"camel", "snake", "length", "comments"};
    auto* style_cmd = app.add_subcommand("style", "readability compliance, FP vs TP");
    add_corpus(style_cmd);
    add_common_out(style_cmd);
    style_cmd->add_option("--rules", rule_names, "subset of camel, snake, length, comments")
        ->capture_default_str();
    style_cmd->callback([&] { cmd_style(opts, rule_names); });

    // synth
    std::string synth_params, synth_out, synth_model_id = "synthetic";
    int synth_tasks = 100, synth_samples = 200;
    bool with_code = false;
    double camel_rate_tp = 0.9, camel_rate_fp = 0.3;
    auto* synth_cmd = app.add_subcommand("synth", "generate a seeded synthetic corpus");
    synth_cmd->add_option("--params", synth_params, "model parameter file")->required();
    synth_cmd->add_option("--out", synth_out, "output corpus path (JSON Lines)")->required();
    synth_cmd->add_option("--tasks", synth_tasks, "number of tasks")->capture_default_str();
    synth_cmd->add_option("--samples-per-task", synth_samples, "samples per task")
        ->capture_default_str();
    synth_cmd->add_option("--model-id", synth_model_id, "model id for the records")
        ->capture_default_str();
    synth_cmd->add_option("--seed", opts.seed, "generator seed")->capture_default_str();
    synth_cmd->add_flag("--with-code", with_code, "attach planted-compliance code snippets");
    synth_cmd->add_option("--camel-rate-tp", camel_rate_tp, "planted TP compliance rate")
        ->capture_default_str();
    synth_cmd->add_option("--camel-rate-fp", camel_rate_fp, "planted non-TP compliance rate")
        ->capture_default_str();
    synth_cmd->callback([&] {
        cmd_synth(opts, synth_params, synth_out, synth_tasks, synth_samples, synth_model_id,
                  with_code, camel_rate_tp, camel_rate_fp);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
