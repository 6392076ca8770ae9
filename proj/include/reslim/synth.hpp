#ifndef RESLIM_SYNTH_HPP
#define RESLIM_SYNTH_HPP

#include "reslim/corpus.hpp"
#include "reslim/model.hpp"

#include <cstdint>
#include <string>

namespace reslim::synth {

/// Seeded corpus generator driven by the analytic model: each task draws its
/// type from the priors, each sample draws correctness at the type's rate and
/// a verifier verdict (completeness / soundness). plus_pass records ground
/// truth, base_pass the verifier. Optionally attaches small code snippets
/// with planted camelCase compliance rates per group for style tests.
struct SynthConfig {
    int n_tasks = 1;
    int samples_per_task = 1;
    std::string model_id = "synthetic";
    std::uint64_t seed = 0;
    bool with_code = false;
    double camel_rate_tp = 0.9; // P(snippet is camelCase-compliant) for TP samples
    double camel_rate_fp = 0.3; // and for everything else

    void validate() const;
};

data::Corpus make_corpus(const model::ModelParams& params, const SynthConfig& cfg);

} // namespace reslim::synth

#endif
