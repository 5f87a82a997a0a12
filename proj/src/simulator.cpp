#include "ttrlguard/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ttrlguard {

std::vector<double> softmax(std::span<const double> logits) {
  std::vector<double> out(logits.size());
  const double peak = *std::max_element(logits.begin(), logits.end());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - peak);
    total += out[i];
  }
  for (double& v : out) v /= total;
  return out;
}

namespace {

struct Band {
  double lo, hi;  // per-problem target success probability draw range
};

Band regime_band(Regime regime) {
  // Per-problem targets spread wider than the regime's mean band so that the
  // tails (near-hopeless and near-solved problems) exist inside a moderate
  // population; the mean stays well inside the required band.
  switch (regime) {
    case Regime::ModerateMismatch: return {0.10, 0.90};
    case Regime::NearZero: return {0.01, 0.09};
    case Regime::NearPerfect: return {0.91, 0.99};
  }
  throw ConfigError("unknown regime");
}

struct MeanBand {
  double lo, hi;
};

MeanBand regime_mean_band(Regime regime) {
  switch (regime) {
    case Regime::ModerateMismatch: return {0.30, 0.70};
    case Regime::NearZero: return {0.0, 0.10};
    case Regime::NearPerfect: return {0.90, 1.0};
  }
  throw ConfigError("unknown regime");
}

}  // namespace

std::pair<std::vector<SyntheticProblem>, PolicyState> generate_scenario(const ScenarioSpec& spec,
                                                                        Rng& rng) {
  if (spec.n_problems < 1) throw ConfigError("scenario: n_problems must be >= 1");
  if (spec.support_size < 2) throw ConfigError("scenario: support_size must be >= 2");
  if (!std::isfinite(spec.distractor_strength))
    throw ConfigError("scenario: distractor_strength must be finite");

  const Band band = regime_band(spec.regime);
  const MeanBand mean_band = regime_mean_band(spec.regime);
  const int s = spec.support_size;

  // Redraw the whole set if the realized mean falls outside the regime band;
  // only small populations ever need a second attempt.
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<SyntheticProblem> problems;
    problems.reserve(static_cast<std::size_t>(spec.n_problems));
    PolicyState policy;
    policy.logits.reserve(static_cast<std::size_t>(spec.n_problems));
    double mean_p = 0.0;

    for (int i = 0; i < spec.n_problems; ++i) {
      SyntheticProblem problem;
      problem.problem_id = "p" + std::to_string(i);
      problem.support_size = s;
      problem.ground_truth = static_cast<AnswerId>(rng.next_int(s));
      int distractor = rng.next_int(s - 1);
      if (distractor >= problem.ground_truth) ++distractor;
      problem.distractor = static_cast<AnswerId>(distractor);

      const double target_p = rng.uniform(band.lo, band.hi);
      const double distractor_logit = spec.distractor_strength + rng.uniform(-0.25, 0.25);

      // Non-truth answers carry mass exp(d) + (s - 2); solve the truth logit
      // so softmax puts exactly target_p on the ground truth.
      const double wrong_mass = std::exp(distractor_logit) + static_cast<double>(s - 2);
      const double truth_logit = std::log(target_p / (1.0 - target_p)) + std::log(wrong_mass);
      if (!std::isfinite(truth_logit))
        throw ConfigError("scenario: infeasible regime band for distractor_strength " +
                          std::to_string(spec.distractor_strength));

      problem.initial_logits.assign(static_cast<std::size_t>(s), 0.0);
      problem.initial_logits[static_cast<std::size_t>(problem.distractor)] = distractor_logit;
      problem.initial_logits[static_cast<std::size_t>(problem.ground_truth)] = truth_logit;

      mean_p += target_p;
      policy.logits.push_back(problem.initial_logits);
      problems.push_back(std::move(problem));
    }

    mean_p /= static_cast<double>(spec.n_problems);
    if (mean_p >= mean_band.lo && mean_p <= mean_band.hi)
      return {std::move(problems), std::move(policy)};
  }
  throw ConfigError("scenario: could not realize the regime's mean pass@1 band");
}

RolloutBatch sample_rollouts(const PolicyState& policy,
                             const std::vector<SyntheticProblem>& problems,
                             std::size_t problem_index, int k, Rng& rng) {
  if (k < 1) throw ContractError("sample_rollouts: k must be >= 1");
  const auto probs = softmax(policy.logits.at(problem_index));
  RolloutBatch batch;
  batch.problem_id = problems.at(problem_index).problem_id;
  batch.k = k;
  for (int draw = 0; draw < k; ++draw)
    ++batch.counts[static_cast<AnswerId>(rng.categorical(probs))];
  return batch;
}

void apply_surrogate_update(PolicyState& policy, std::size_t problem_index,
                            const RolloutBatch& update_batch, const PlanEntry& entry,
                            AnswerId pseudo_label, const GuardConfig& config) {
  if (entry.skipped) return;
  update_batch.validate();
  auto& logits = policy.logits.at(problem_index);

  const double w = entry.frs.weight;
  const double beta = entry.beta;
  const double k = static_cast<double>(update_batch.k);

  double mean_mv = 0.0;
  double mean_min = 0.0;
  for (const auto& [answer, count] : update_batch.counts) {
    if (answer == pseudo_label) mean_mv += w * count;
    if (entry.minority_set.contains(answer)) mean_min += config.epsilon * count;
  }
  mean_mv /= k;
  mean_min /= k;

  for (const auto& [answer, count] : update_batch.counts) {
    if (count == 0) continue;
    if (static_cast<std::size_t>(answer) >= logits.size())
      throw ContractError("surrogate update: answer outside the problem support");
    const double reward_mv = answer == pseudo_label ? w : 0.0;
    const double reward_min = entry.minority_set.contains(answer) ? config.epsilon : 0.0;
    const double advantage =
        (1.0 - beta) * (reward_mv - mean_mv) + beta * (reward_min - mean_min);
    logits[static_cast<std::size_t>(answer)] +=
        policy.learning_rate * static_cast<double>(count) * advantage;
  }
}

double expected_pass_at_1(const PolicyState& policy, const SyntheticProblem& problem,
                          std::size_t problem_index) {
  const auto probs = softmax(policy.logits.at(problem_index));
  return probs.at(static_cast<std::size_t>(problem.ground_truth));
}

double empirical_pass_at_1(const PolicyState& policy, const SyntheticProblem& problem,
                           std::size_t problem_index, int n_samples, Rng& rng) {
  if (n_samples < 1) throw ContractError("empirical_pass_at_1: n_samples must be >= 1");
  const auto probs = softmax(policy.logits.at(problem_index));
  int hits = 0;
  for (int i = 0; i < n_samples; ++i)
    if (rng.categorical(probs) == problem.ground_truth) ++hits;
  return static_cast<double>(hits) / static_cast<double>(n_samples);
}

}  // namespace ttrlguard
