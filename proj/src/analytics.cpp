#include "ttrlguard/analytics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace ttrlguard {

const char* fate_category_name(FateCategory category) {
  switch (category) {
    case FateCategory::StableAlwaysRight: return "stable_always_right";
    case FateCategory::Degraded: return "degraded";
    case FateCategory::Learned: return "learned";
    case FateCategory::MarginalDegraded: return "marginal_degraded";
    case FateCategory::MarginalStable: return "marginal_stable";
    case FateCategory::AlwaysWrong: return "always_wrong";
  }
  return "unknown";
}

double label_accuracy(const RolloutBatch& batch, AnswerId ground_truth) {
  batch.validate();
  if (ground_truth < 0) throw ContractError("label_accuracy: invalid ground-truth id");
  auto it = batch.counts.find(ground_truth);
  const int hits = it == batch.counts.end() ? 0 : it->second;
  return static_cast<double>(hits) / static_cast<double>(batch.k);
}

FateResult categorize_ila_fla(double ila, double fla) {
  FateResult out;
  out.ila = ila;
  out.fla = fla;
  if (ila >= 0.7 && fla >= 0.6) {
    out.category = FateCategory::StableAlwaysRight;
  } else if (ila >= 0.5 && fla < ila - 0.2) {
    out.category = FateCategory::Degraded;
  } else if (ila < 0.15 && fla >= 0.5) {
    out.category = FateCategory::Learned;
  } else if (ila >= 0.15 && ila < 0.7 && fla < ila - 0.15) {
    out.category = FateCategory::MarginalDegraded;
  } else if (ila >= 0.15 && ila < 0.7 && fla >= ila - 0.15) {
    out.category = FateCategory::MarginalStable;
  } else if (ila < 0.15 && fla < 0.5) {
    out.category = FateCategory::AlwaysWrong;
  } else {
    // The taxonomy does not cover e.g. high ILA with a mild drop; bin those
    // as Marginal Stable but keep them countable.
    out.category = FateCategory::MarginalStable;
    out.fallback = true;
  }
  return out;
}

FateResult categorize_problem(std::span<const double> la_series) {
  if (la_series.size() < 8)
    throw InsufficientHistoryError("categorize_problem: need >= 8 checkpoints, have " +
                                   std::to_string(la_series.size()));
  const double ila = (la_series[0] + la_series[1] + la_series[2]) / 3.0;
  double fla = 0.0;
  for (std::size_t i = la_series.size() - 5; i < la_series.size(); ++i) fla += la_series[i];
  fla /= 5.0;
  return categorize_ila_fla(ila, fla);
}

FateBreakdown fate_breakdown(std::span<const FateResult> results) {
  if (results.empty()) throw ContractError("fate_breakdown: empty category list");
  FateBreakdown out;
  const double n = static_cast<double>(results.size());
  for (const FateResult& r : results) {
    switch (r.category) {
      case FateCategory::StableAlwaysRight: out.stable_always_right += 1; break;
      case FateCategory::Degraded: out.degraded += 1; break;
      case FateCategory::Learned: out.learned += 1; break;
      case FateCategory::MarginalDegraded: out.marginal_degraded += 1; break;
      case FateCategory::MarginalStable: out.marginal_stable += 1; break;
      case FateCategory::AlwaysWrong: out.always_wrong += 1; break;
    }
    if (r.fallback) ++out.fallback_count;
  }
  out.stable_always_right /= n;
  out.degraded /= n;
  out.learned /= n;
  out.marginal_degraded /= n;
  out.marginal_stable /= n;
  out.always_wrong /= n;
  out.total_degraded = out.degraded + out.marginal_degraded;
  if (out.degraded > 0.0) out.ld_ratio = out.learned / out.degraded;
  return out;
}

double correct_vote_rate(std::span<const TrajectoryRecord> records, AnswerId ground_truth) {
  if (records.empty()) throw ContractError("correct_vote_rate: no records");
  std::size_t wins = 0;
  for (const TrajectoryRecord& r : records)
    if (r.pseudo_label == ground_truth) ++wins;
  return static_cast<double>(wins) / static_cast<double>(records.size());
}

namespace {

struct PhaseAccumulator {
  int record_count = 0;
  int wrong_label_records = 0;
  int correct_majority_records = 0;
  double wrong_mr_sum = 0.0;
  double survival_sum = 0.0;
  int wrong_mr_below_half = 0;

  void add(const TrajectoryRecord& record, double mr_bar, bool correct) {
    ++record_count;
    if (correct) {
      ++correct_majority_records;
    } else {
      ++wrong_label_records;
      wrong_mr_sum += record.mr;
      survival_sum += 1.0 - mr_bar;
      if (record.mr < 0.5) ++wrong_mr_below_half;
    }
  }

  PhaseScissorStats finish() const {
    PhaseScissorStats out;
    out.present = record_count > 0;
    out.record_count = record_count;
    out.wrong_label_records = wrong_label_records;
    out.correct_majority_records = correct_majority_records;
    if (wrong_label_records > 0) {
      out.mean_wrong_mr = wrong_mr_sum / wrong_label_records;
      out.mean_survival_space = survival_sum / wrong_label_records;
      out.window_width = static_cast<double>(wrong_mr_below_half) / wrong_label_records;
    }
    return out;
  }
};

}  // namespace

ScissorReport scissor_statistics(
    const std::map<std::string, std::vector<TrajectoryRecord>>& records_by_problem,
    const std::map<std::string, AnswerId>& ground_truth, int window, PhaseBounds bounds) {
  if (window < 1) throw ContractError("scissor_statistics: window must be >= 1");
  PhaseAccumulator early;
  PhaseAccumulator late;

  for (const auto& [problem_id, records] : records_by_problem) {
    auto truth_it = ground_truth.find(problem_id);
    if (truth_it == ground_truth.end())
      throw ContractError("scissor_statistics: no ground truth for problem '" + problem_id + "'");
    if (records.empty()) continue;
    const AnswerId truth = truth_it->second;
    const int last_step = records.back().step;

    double mr_window_sum = 0.0;
    for (std::size_t i = 0; i < records.size(); ++i) {
      mr_window_sum += records[i].mr;
      if (i >= static_cast<std::size_t>(window)) mr_window_sum -= records[i - window].mr;
      const std::size_t span = std::min<std::size_t>(i + 1, static_cast<std::size_t>(window));
      const double mr_bar = mr_window_sum / static_cast<double>(span);

      const double progress =
          last_step == 0 ? 0.0 : static_cast<double>(records[i].step) / last_step;
      const bool correct = records[i].pseudo_label == truth;
      if (progress <= bounds.early_end) early.add(records[i], mr_bar, correct);
      if (progress >= bounds.late_start) late.add(records[i], mr_bar, correct);
    }
  }

  return {early.finish(), late.finish()};
}

}  // namespace ttrlguard
