#pragma once

#include <map>
#include <span>
#include <string>
#include <utility>

#include "ttrlguard/types.hpp"

namespace ttrlguard {

/// Majority-vote pseudo-label and its match rate (leading count / k).
/// Ties break toward the smallest answer id so repeated runs agree.
std::pair<AnswerId, double> majority_vote(const RolloutBatch& batch);

/// Fraction of the last min(t, window) label transitions that flipped,
/// where t is the number of transitions the history provides.
/// Histories with fewer than two entries have no transitions and score 0.
double windowed_flip_rate(std::span<const AnswerId> pseudo_history, int window);

/// Folds one vote batch into the per-problem state: appends the pseudo-label
/// and match rate, refreshes fr and mr_bar, advances the steady counter, and
/// latches had_comp / mps_deactivated. Latches never clear once set.
ProblemState update_problem_state(const ProblemState& state, const RolloutBatch& batch,
                                  const GuardConfig& config);

/// Fraction of problems whose label differs between two consecutive steps.
/// Both maps must cover the same problem set.
double batch_flip_rate(const std::map<std::string, AnswerId>& previous_labels,
                       const std::map<std::string, AnswerId>& current_labels);

}  // namespace ttrlguard
