#include "reslim/model_io.hpp"
#include "reslim/errors.hpp"
#include "reslim/table.hpp"

#include "kv_util.hpp"

#include <fstream>
#include <map>
#include <ostream>

namespace reslim::model {

ModelParams params_from_kv(std::istream& is, const std::string& source_name) {
    std::map<std::string, detail::KvEntry> seen;
    for (auto& e : detail::parse_kv(is, source_name)) {
        if (!seen.emplace(e.key, e).second)
            throw io_error(source_name + ":" + std::to_string(e.line) + ": duplicate key '" +
                           e.key + "'");
    }

    static const char* known[] = {"p_easy", "r_easy",    "r_hard", "completeness",
                                  "soundness", "v_tp",   "v_fp",   "c_attempt"};
    for (const auto& [key, entry] : seen) {
        bool ok = false;
        for (const char* k : known) ok = ok || key == k;
        if (!ok)
            throw io_error(source_name + ":" + std::to_string(entry.line) + ": unknown key '" +
                           key + "'");
    }

    auto required = [&](const char* key) {
        auto it = seen.find(key);
        if (it == seen.end())
            throw io_error(source_name + ": missing required key '" + std::string(key) + "'");
        return detail::parse_double(it->second, source_name);
    };
    auto optional_or = [&](const char* key, double fallback) {
        auto it = seen.find(key);
        return it == seen.end() ? fallback : detail::parse_double(it->second, source_name);
    };

    ModelParams p;
    p.mix.p_easy = required("p_easy");
    p.mix.p_hard = 1.0 - p.mix.p_easy;
    p.mix.r_easy = required("r_easy");
    p.mix.r_hard = required("r_hard");
    p.verifier.completeness = required("completeness");
    p.verifier.soundness = required("soundness");
    p.values.v_tp = optional_or("v_tp", 1.0);
    p.values.v_fp = optional_or("v_fp", -1.0);
    p.values.c_attempt = optional_or("c_attempt", 0.0);

    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw io_error(source_name + ": invalid parameters: " + e.what());
    }
    return p;
}

ModelParams load_params(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw io_error("cannot open params file: " + path);
    return params_from_kv(is, path);
}

void params_to_kv(const ModelParams& params, std::ostream& os) {
    params.validate();
    os << "p_easy = " << io::format_double(params.mix.p_easy) << '\n'
       << "r_easy = " << io::format_double(params.mix.r_easy) << '\n'
       << "r_hard = " << io::format_double(params.mix.r_hard) << '\n'
       << "completeness = " << io::format_double(params.verifier.completeness) << '\n'
       << "soundness = " << io::format_double(params.verifier.soundness) << '\n'
       << "v_tp = " << io::format_double(params.values.v_tp) << '\n'
       << "v_fp = " << io::format_double(params.values.v_fp) << '\n'
       << "c_attempt = " << io::format_double(params.values.c_attempt) << '\n';
}

void save_params(const ModelParams& params, const std::string& path) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open output file: " + path);
    params_to_kv(params, os);
    if (!os) throw io_error("write failed: " + path);
}

void write_reward_curve_csv(const RewardCurve& curve, std::ostream& os) {
    io::Table table({"K", "reward", "is_opt"});
    for (std::size_t k = 0; k < curve.rewards.size(); ++k)
        table.add_row({static_cast<long long>(k), curve.rewards[k],
                       static_cast<int>(k) == curve.k_opt});
    table.write_csv(os);
}

} // namespace reslim::model
