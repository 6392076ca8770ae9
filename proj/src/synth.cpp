#include "reslim/synth.hpp"
#include "reslim/rng.hpp"

#include <cstdio>
#include <stdexcept>

namespace reslim::synth {

namespace {

const char* kCamelSnippet =
    "def solveTask(values):\n"
    "    resultValue = 0\n"
    "    for item in values:\n"
    "        resultValue += item\n"
    "    return resultValue\n";

const char* kSnakeSnippet =
    "def solveTask(values):\n"
    "    result_value = 0\n"
    "    for item in values:\n"
    "        result_value += item\n"
    "    return result_value\n";

std::string padded(const char* prefix, int i, int width) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%s%0*d", prefix, width, i);
    return buf;
}

} // namespace

void SynthConfig::validate() const {
    if (n_tasks < 1) throw std::invalid_argument("SynthConfig: n_tasks must be >= 1");
    if (samples_per_task < 1)
        throw std::invalid_argument("SynthConfig: samples_per_task must be >= 1");
    if (model_id.empty()) throw std::invalid_argument("SynthConfig: model_id must be nonempty");
    if (!(camel_rate_tp >= 0 && camel_rate_tp <= 1 && camel_rate_fp >= 0 && camel_rate_fp <= 1))
        throw std::invalid_argument("SynthConfig: planted compliance rates must be in [0,1]");
}

data::Corpus make_corpus(const model::ModelParams& params, const SynthConfig& cfg) {
    params.validate();
    cfg.validate();

    std::vector<data::SampleOutcome> records;
    records.reserve(static_cast<std::size_t>(cfg.n_tasks) * cfg.samples_per_task);

    for (int t = 0; t < cfg.n_tasks; ++t) {
        // per-task stream keyed by (seed, t): stable under n_tasks changes
        Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(t)));
        const bool easy = rng.bernoulli(params.mix.p_easy);
        const double r = easy ? params.mix.r_easy : params.mix.r_hard;
        const std::string task_id = padded("task", t, 4);

        for (int s = 0; s < cfg.samples_per_task; ++s) {
            data::SampleOutcome rec;
            rec.model_id = cfg.model_id;
            rec.task_id = task_id;
            rec.sample_id = padded("s", s, 4);
            const bool correct = rng.bernoulli(r);
            rec.plus_pass = correct;
            rec.base_pass = correct ? rng.bernoulli(params.verifier.completeness)
                                    : rng.bernoulli(1.0 - params.verifier.soundness);
            if (cfg.with_code) {
                const bool is_tp = rec.base_pass && rec.plus_pass;
                const double p_camel = is_tp ? cfg.camel_rate_tp : cfg.camel_rate_fp;
                rec.code = rng.bernoulli(p_camel) ? kCamelSnippet : kSnakeSnippet;
            }
            records.push_back(std::move(rec));
        }
    }
    return data::Corpus(std::move(records), "<synthetic>", "");
}

} // namespace reslim::synth
