#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ttrlguard/guard_policy.hpp"
#include "ttrlguard/rng.hpp"
#include "ttrlguard/types.hpp"

namespace ttrlguard {

/// A synthetic problem: a small answer support with one ground truth and one
/// designated strong distractor.
struct SyntheticProblem {
  std::string problem_id;
  int support_size = 0;
  AnswerId ground_truth = 0;
  AnswerId distractor = 0;
  std::vector<double> initial_logits;
};

/// Per-problem categorical policies over the answer supports.
struct PolicyState {
  std::vector<std::vector<double>> logits;  // one vector per problem
  double learning_rate = 0.02;
};

enum class Regime { ModerateMismatch, NearZero, NearPerfect };

/// Scenario construction knobs. The regime fixes the band the mean initial
/// success probability must land in: [0.3, 0.7], below 0.1, or above 0.9.
struct ScenarioSpec {
  Regime regime = Regime::ModerateMismatch;
  int n_problems = 200;
  int support_size = 4;
  double distractor_strength = 2.0;  // logit advantage of the distractor over
                                     // the remaining wrong answers
  std::uint64_t seed = 1;
};

/// Numerically safe softmax; outputs sum to 1.
std::vector<double> softmax(std::span<const double> logits);

/// Builds n_problems synthetic problems and the matching initial policy.
/// Each problem draws a target success probability from the regime band and
/// solves for a truth logit that realizes it exactly, with the distractor
/// holding most of the remaining mass. Throws ConfigError when the spec
/// cannot realize the band.
std::pair<std::vector<SyntheticProblem>, PolicyState> generate_scenario(const ScenarioSpec& spec,
                                                                        Rng& rng);

/// k categorical draws from the problem's current softmax distribution,
/// returned as vote counts.
RolloutBatch sample_rollouts(const PolicyState& policy, const std::vector<SyntheticProblem>& problems,
                             std::size_t problem_index, int k, Rng& rng);

/// Group-relative surrogate update on one problem's logits.
/// Majority reward w * 1[a == pseudo_label] and minority reward
/// epsilon * 1[a in minority_set] are mean-centered separately over the k
/// samples; each answer's logit moves by learning_rate * count * mixed
/// advantage. Skipped plan entries leave the policy untouched.
void apply_surrogate_update(PolicyState& policy, std::size_t problem_index,
                            const RolloutBatch& update_batch, const PlanEntry& entry,
                            AnswerId pseudo_label, const GuardConfig& config);

/// Exact probability that a single sample hits the ground truth.
double expected_pass_at_1(const PolicyState& policy, const SyntheticProblem& problem,
                          std::size_t problem_index);

/// Empirical pass@1 estimate from n_samples draws (the evaluation protocol
/// uses 4). Converges to expected_pass_at_1 in the mean.
double empirical_pass_at_1(const PolicyState& policy, const SyntheticProblem& problem,
                           std::size_t problem_index, int n_samples, Rng& rng);

}  // namespace ttrlguard
