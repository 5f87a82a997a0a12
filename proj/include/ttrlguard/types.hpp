#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "ttrlguard/errors.hpp"

namespace ttrlguard {

/// Discrete answer identity: an index into a problem's answer support.
/// The integer ordering doubles as the deterministic tie-break order.
using AnswerId = std::int32_t;

/// One step's sampled answers for one problem, as vote counts.
struct RolloutBatch {
  std::string problem_id;
  std::map<AnswerId, int> counts;  // answer -> non-negative vote count
  int k = 0;                       // samples in the batch; counts sum to k

  /// Throws MalformedBatchError unless counts are non-empty, non-negative,
  /// and sum to k >= 1.
  void validate() const {
    if (k <= 0) throw MalformedBatchError("rollout batch: k must be >= 1");
    if (counts.empty()) throw MalformedBatchError("rollout batch: empty counts");
    long long total = 0;
    for (const auto& [answer, count] : counts) {
      if (answer < 0) throw MalformedBatchError("rollout batch: negative answer id");
      if (count < 0) throw MalformedBatchError("rollout batch: negative count");
      total += count;
    }
    if (total != k)
      throw MalformedBatchError("rollout batch: counts sum to " + std::to_string(total) +
                                ", expected k = " + std::to_string(k));
  }
};

/// All guard thresholds and coefficients, plus the rollout sizes.
/// Defaults are the recommended operating point.
struct GuardConfig {
  double lambda1 = 0.5;   // FR down-weighting strength in alpha
  double lambda2 = 0.3;   // trigger penalty strength in gamma/delta
  double tau_fr = 0.3;    // flip-rate threshold
  double tau_mr = 0.6;    // match-rate threshold for C1/C2
  double w_min = 0.1;     // reward-weight floor
  double beta_max = 0.3;  // cap on the minority-mixing coefficient
  int minority_threshold_divisor = 4;  // minority needs >= floor(k / divisor) votes
  double epsilon = 0.1;   // minority reward magnitude
  int t_steady = 3;       // consecutive calm steps before minority protection exits
  int window = 5;         // history window W for FR, MR-bar, and risk checks
  double theta_mr = 0.5;  // mean-MR threshold for the high-risk flag
  double p_skip = 0.7;    // skip probability for high-risk problems
  double max_skip_fraction = 0.25;  // at most floor(0.25 * N) skips per step
  int k_samples = 32;     // update-batch size (downsampled from the votes)
  int k_votes = 64;       // vote-batch size for monitoring statistics

  void validate() const {
    auto in_unit = [](double v) { return v >= 0.0 && v <= 1.0; };
    if (!in_unit(lambda1) || !in_unit(lambda2))
      throw ConfigError("guard config: lambda1/lambda2 must lie in [0,1]");
    if (!in_unit(tau_fr) || !in_unit(tau_mr) || !in_unit(theta_mr))
      throw ConfigError("guard config: thresholds must lie in [0,1]");
    if (!in_unit(w_min) || !in_unit(beta_max) || !in_unit(epsilon))
      throw ConfigError("guard config: w_min/beta_max/epsilon must lie in [0,1]");
    if (!in_unit(p_skip) || !in_unit(max_skip_fraction))
      throw ConfigError("guard config: probabilities must lie in [0,1]");
    if (minority_threshold_divisor < 1)
      throw ConfigError("guard config: minority_threshold_divisor must be >= 1");
    if (t_steady < 1) throw ConfigError("guard config: t_steady must be >= 1");
    if (window < 1) throw ConfigError("guard config: window must be >= 1");
    if (k_samples < 1 || k_votes < 1)
      throw ConfigError("guard config: k_samples and k_votes must be >= 1");
    if (k_samples > k_votes)
      throw ConfigError("guard config: k_samples cannot exceed k_votes");
  }
};

/// Per-problem monitoring record. Everything here is computable without
/// ground-truth labels.
struct ProblemState {
  std::vector<AnswerId> pseudo_history;  // majority-vote label per step
  std::vector<double> mr_history;        // match rate per step, in [0,1]
  double fr = 0.0;                       // windowed flip rate, in [0,1]
  bool had_comp = false;                 // latched: FR ever exceeded tau_fr
  double mr_bar = 0.0;                   // mean MR over the last window steps
  int steady_below_count = 0;            // consecutive steps with fr <= tau_fr
  bool mps_deactivated = false;          // latched: minority protection retired
  int delta_trigger_count = 0;           // times the delta penalty was applied

  void validate() const {
    if (pseudo_history.size() != mr_history.size())
      throw ContractError("problem state: pseudo/mr history length mismatch");
    if (fr < 0.0 || fr > 1.0 || mr_bar < 0.0 || mr_bar > 1.0)
      throw ContractError("problem state: fr/mr_bar outside [0,1]");
    for (double mr : mr_history)
      if (mr < 0.0 || mr > 1.0) throw ContractError("problem state: mr outside [0,1]");
    if (steady_below_count < 0 || delta_trigger_count < 0)
      throw ContractError("problem state: negative counter");
  }
};

}  // namespace ttrlguard
