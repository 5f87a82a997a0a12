#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ttrlguard/types.hpp"

namespace ttrlguard {

/// One (step, problem) log row; the unit of the JSONL trajectory format.
struct TrajectoryRecord {
  int step = 0;
  std::string problem_id;
  AnswerId pseudo_label = 0;
  double mr = 0.0;
  double fr = 0.0;
  bool had_comp = false;
  double weight = 1.0;
  double beta = 0.0;
  bool skipped = false;
  std::optional<double> la;  // absent when the producer had no ground truth
  std::map<AnswerId, int> vote_counts;
};

enum class FateCategory {
  StableAlwaysRight,
  Degraded,
  Learned,
  MarginalDegraded,
  MarginalStable,
  AlwaysWrong,
};

const char* fate_category_name(FateCategory category);

/// Classification of one problem's label-accuracy trajectory.
struct FateResult {
  FateCategory category = FateCategory::MarginalStable;
  bool fallback = false;  // no taxonomy row matched; binned as Marginal Stable
  double ila = 0.0;       // mean label accuracy over the first 3 checkpoints
  double fla = 0.0;       // mean over the last 5
};

/// Population fractions per fate category.
struct FateBreakdown {
  double stable_always_right = 0.0;
  double degraded = 0.0;
  double learned = 0.0;
  double marginal_degraded = 0.0;
  double marginal_stable = 0.0;
  double always_wrong = 0.0;
  double total_degraded = 0.0;        // degraded + marginal_degraded
  std::optional<double> ld_ratio;     // learned / degraded; absent when degraded = 0
  int fallback_count = 0;
};

/// Fraction of the batch matching the ground truth.
double label_accuracy(const RolloutBatch& batch, AnswerId ground_truth);

/// The fate taxonomy on precomputed (ILA, FLA). Rows are evaluated top-down
/// with strict inequalities; pairs no row matches fall back to Marginal
/// Stable with the fallback flag set:
///   Stable Always Right  ILA >= 0.7 and FLA >= 0.6
///   Degraded             ILA >= 0.5 and FLA < ILA - 0.2
///   Learned              ILA < 0.15 and FLA >= 0.5
///   Marginal Degraded    0.15 <= ILA < 0.7 and FLA < ILA - 0.15
///   Marginal Stable      0.15 <= ILA < 0.7 and FLA >= ILA - 0.15
///   Always Wrong         ILA < 0.15 and FLA < 0.5
FateResult categorize_ila_fla(double ila, double fla);

/// Classifies one problem from its per-checkpoint label-accuracy series.
/// Needs at least 8 checkpoints (3 initial + 5 final, non-overlapping).
FateResult categorize_problem(std::span<const double> la_series);

FateBreakdown fate_breakdown(std::span<const FateResult> results);

/// Fraction of a problem's records whose pseudo-label equals the truth.
double correct_vote_rate(std::span<const TrajectoryRecord> records, AnswerId ground_truth);

/// Scissor-effect statistics for one training phase.
struct PhaseScissorStats {
  bool present = false;            // false when the phase holds no records
  int record_count = 0;
  int wrong_label_records = 0;     // pseudo-label != truth
  int correct_majority_records = 0;
  std::optional<double> mean_wrong_mr;
  std::optional<double> mean_survival_space;  // mean (1 - mr_bar) on wrong-label records
  std::optional<double> window_width;  // wrong-label records with MR < 0.5, as a fraction
};

struct ScissorReport {
  PhaseScissorStats early;
  PhaseScissorStats late;
};

/// Phase cut points in normalized progress (step / last step).
struct PhaseBounds {
  double early_end = 1.0 / 3.0;
  double late_start = 2.0 / 3.0;
};

/// Computes the scissor statistics over per-problem record series. mr_bar is
/// rebuilt from each problem's MR series with the given window.
ScissorReport scissor_statistics(
    const std::map<std::string, std::vector<TrajectoryRecord>>& records_by_problem,
    const std::map<std::string, AnswerId>& ground_truth, int window,
    PhaseBounds bounds = {});

}  // namespace ttrlguard
