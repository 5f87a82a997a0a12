#pragma once

#include <set>
#include <vector>

#include "ttrlguard/rng.hpp"
#include "ttrlguard/types.hpp"

namespace ttrlguard {

/// Decomposed reward weight w = max(w_min, alpha * gamma * delta).
struct FrsWeight {
  double alpha = 1.0;   // 1 - lambda1 * fr
  double gamma = 1.0;   // 1 - lambda2 when c1 fired, else 1
  double delta = 1.0;   // 1 - lambda2/2 when c2 fired, else 1
  bool c1 = false;      // high confidence while unstable
  bool c2 = false;      // never-challenged consensus penalty (cap-limited)
  double weight = 1.0;
};

enum class PathKind { Stable, AtRisk, HighRisk };

/// The router's directives for one problem at one step.
struct PlanEntry {
  PathKind path = PathKind::Stable;
  FrsWeight frs;
  std::set<AnswerId> minority_set;  // competitive non-majority answers
  double beta = 0.0;                // minority-mixing coefficient
  bool skipped = false;             // high-risk problems only
};

/// One step's directives for the whole problem set, index-aligned with the
/// states/batches handed to build_step_plan.
struct StepPlan {
  std::vector<PlanEntry> entries;
};

/// Reward weight for the current step. The state must already reflect this
/// step's vote batch. Applying the c2 penalty consumes one of the state's W
/// allowed applications, so the state is taken mutably.
FrsWeight frs_weight(ProblemState& state, double mr, const GuardConfig& config);

/// Answers other than the pseudo-label holding at least floor(k / divisor)
/// votes, k being this batch's size. Zero-count entries present in the map
/// participate, which matters only when the threshold itself is zero.
std::set<AnswerId> minority_set(const RolloutBatch& batch, AnswerId pseudo_label,
                                const GuardConfig& config);

/// Minority-mixing coefficient: beta_max * fr while flips persist, zero once
/// the flip rate settles or the steady-exit latch has fired.
double mps_coefficient(const ProblemState& state, const GuardConfig& config);

/// High-risk flag: the problem saw competition, has a full window of history,
/// and its mean match rate indicates a re-locked consensus.
bool rcsu_high_risk(const ProblemState& state, const GuardConfig& config);

/// Assembles the per-step plan: flags high-risk problems, draws their skips
/// (capped at floor(max_skip_fraction * N) via a uniform subset), and fills
/// in weight, minority set, and beta for every problem. Deterministic given
/// the rng seed; states pick up c2 bookkeeping.
StepPlan build_step_plan(std::vector<ProblemState>& states,
                         const std::vector<RolloutBatch>& batches,
                         const GuardConfig& config, Rng& rng);

}  // namespace ttrlguard
