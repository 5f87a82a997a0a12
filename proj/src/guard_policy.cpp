#include "ttrlguard/guard_policy.hpp"

#include <algorithm>
#include <cmath>

#include "ttrlguard/state_monitor.hpp"

namespace ttrlguard {

FrsWeight frs_weight(ProblemState& state, double mr, const GuardConfig& config) {
  FrsWeight out;
  out.alpha = 1.0 - config.lambda1 * state.fr;
  out.c1 = mr > config.tau_mr && state.fr > config.tau_fr;
  // c2 targets problems that never saw competition yet sit on a confident
  // consensus. Its penalty is applied at most window times per problem.
  const bool c2_condition = !state.had_comp &&
                            state.pseudo_history.size() >= static_cast<std::size_t>(config.window) &&
                            state.mr_bar > config.tau_mr;
  out.c2 = c2_condition && state.delta_trigger_count < config.window;
  out.gamma = out.c1 ? 1.0 - config.lambda2 : 1.0;
  out.delta = out.c2 ? 1.0 - config.lambda2 / 2.0 : 1.0;
  out.weight = std::max(config.w_min, out.alpha * out.gamma * out.delta);
  if (out.c2) ++state.delta_trigger_count;
  return out;
}

std::set<AnswerId> minority_set(const RolloutBatch& batch, AnswerId pseudo_label,
                                const GuardConfig& config) {
  batch.validate();
  if (!batch.counts.contains(pseudo_label))
    throw ContractError("minority_set: pseudo-label absent from counts");
  const int threshold = batch.k / config.minority_threshold_divisor;
  std::set<AnswerId> minority;
  for (const auto& [answer, count] : batch.counts)
    if (answer != pseudo_label && count >= threshold) minority.insert(answer);
  return minority;
}

double mps_coefficient(const ProblemState& state, const GuardConfig& config) {
  if (state.mps_deactivated || state.fr <= config.tau_fr) return 0.0;
  return config.beta_max * state.fr;
}

bool rcsu_high_risk(const ProblemState& state, const GuardConfig& config) {
  return state.had_comp &&
         state.pseudo_history.size() >= static_cast<std::size_t>(config.window) &&
         state.mr_bar > config.theta_mr;
}

StepPlan build_step_plan(std::vector<ProblemState>& states,
                         const std::vector<RolloutBatch>& batches,
                         const GuardConfig& config, Rng& rng) {
  if (states.size() != batches.size())
    throw ContractError("build_step_plan: states/batches size mismatch");
  const std::size_t n = states.size();
  if (n == 0) throw ContractError("build_step_plan: empty problem set");

  StepPlan plan;
  plan.entries.resize(n);

  for (std::size_t i = 0; i < n; ++i) {
    auto& entry = plan.entries[i];
    if (rcsu_high_risk(states[i], config))
      entry.path = PathKind::HighRisk;
    else if (states[i].fr > config.tau_fr)
      entry.path = PathKind::AtRisk;
    else
      entry.path = PathKind::Stable;
  }

  // Independent skip draws in problem order, then a uniform down-select if
  // the step cap is exceeded.
  std::vector<std::size_t> skip_candidates;
  for (std::size_t i = 0; i < n; ++i)
    if (plan.entries[i].path == PathKind::HighRisk && rng.bernoulli(config.p_skip))
      skip_candidates.push_back(i);

  const std::size_t cap =
      static_cast<std::size_t>(std::floor(config.max_skip_fraction * static_cast<double>(n)));
  if (skip_candidates.size() > cap) {
    rng.shuffle(skip_candidates);
    skip_candidates.resize(cap);
    std::sort(skip_candidates.begin(), skip_candidates.end());
  }
  for (std::size_t i : skip_candidates) plan.entries[i].skipped = true;

  for (std::size_t i = 0; i < n; ++i) {
    auto& entry = plan.entries[i];
    const double mr = states[i].mr_history.empty() ? 0.0 : states[i].mr_history.back();
    entry.frs = frs_weight(states[i], mr, config);
    entry.beta = mps_coefficient(states[i], config);
    if (states[i].fr > config.tau_fr) {
      const AnswerId pseudo = states[i].pseudo_history.back();
      entry.minority_set = minority_set(batches[i], pseudo, config);
    }
  }
  return plan;
}

}  // namespace ttrlguard
