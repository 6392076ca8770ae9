#ifndef RESLIM_MODEL_IO_HPP
#define RESLIM_MODEL_IO_HPP

#include "reslim/model.hpp"

#include <iosfwd>
#include <string>

namespace reslim::model {

/// Plain-text parameter files, one "key = value" per line, '#' comments.
/// Keys: p_easy, r_easy, r_hard, completeness, soundness, v_tp, v_fp,
/// c_attempt. p_hard is derived as 1 - p_easy. The value keys are optional
/// and default to v_tp = 1, v_fp = -1, c_attempt = 0.
ModelParams params_from_kv(std::istream& is, const std::string& source_name);
ModelParams load_params(const std::string& path);

void params_to_kv(const ModelParams& params, std::ostream& os);
void save_params(const ModelParams& params, const std::string& path);

/// Reward curve as CSV with columns K, reward, is_opt.
void write_reward_curve_csv(const RewardCurve& curve, std::ostream& os);

} // namespace reslim::model

#endif
