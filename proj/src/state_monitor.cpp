#include "ttrlguard/state_monitor.hpp"

#include <algorithm>
#include <numeric>

namespace ttrlguard {

std::pair<AnswerId, double> majority_vote(const RolloutBatch& batch) {
  batch.validate();
  AnswerId best = -1;
  int best_count = -1;
  // counts is an ordered map, so the first maximum seen is the smallest id.
  for (const auto& [answer, count] : batch.counts) {
    if (count > best_count) {
      best = answer;
      best_count = count;
    }
  }
  return {best, static_cast<double>(best_count) / static_cast<double>(batch.k)};
}

double windowed_flip_rate(std::span<const AnswerId> pseudo_history, int window) {
  if (window < 1) throw ContractError("windowed_flip_rate: window must be >= 1");
  const auto len = pseudo_history.size();
  if (len < 2) return 0.0;
  const std::size_t transitions = len - 1;
  const std::size_t m = std::min<std::size_t>(transitions, static_cast<std::size_t>(window));
  std::size_t flips = 0;
  for (std::size_t i = len - m; i < len; ++i)
    if (pseudo_history[i] != pseudo_history[i - 1]) ++flips;
  return static_cast<double>(flips) / static_cast<double>(m);
}

ProblemState update_problem_state(const ProblemState& state, const RolloutBatch& batch,
                                  const GuardConfig& config) {
  state.validate();
  const auto [label, mr] = majority_vote(batch);

  ProblemState next = state;
  next.pseudo_history.push_back(label);
  next.mr_history.push_back(mr);

  next.fr = windowed_flip_rate(next.pseudo_history, config.window);
  if (next.fr > config.tau_fr) next.had_comp = true;  // latch, never cleared

  const std::size_t n = next.mr_history.size();
  const std::size_t m = std::min<std::size_t>(n, static_cast<std::size_t>(config.window));
  next.mr_bar = std::accumulate(next.mr_history.end() - static_cast<long>(m),
                                next.mr_history.end(), 0.0) /
                static_cast<double>(m);

  if (next.fr <= config.tau_fr) {
    next.steady_below_count = state.steady_below_count + 1;
    if (next.steady_below_count >= config.t_steady) next.mps_deactivated = true;
  } else {
    next.steady_below_count = 0;
  }
  return next;
}

double batch_flip_rate(const std::map<std::string, AnswerId>& previous_labels,
                       const std::map<std::string, AnswerId>& current_labels) {
  if (previous_labels.empty())
    throw ContractError("batch_flip_rate: empty label maps");
  if (previous_labels.size() != current_labels.size())
    throw ContractError("batch_flip_rate: label maps differ in size");
  std::size_t changed = 0;
  for (const auto& [problem, previous] : previous_labels) {
    auto it = current_labels.find(problem);
    if (it == current_labels.end())
      throw ContractError("batch_flip_rate: problem '" + problem +
                          "' missing from current labels");
    if (it->second != previous) ++changed;
  }
  return static_cast<double>(changed) / static_cast<double>(previous_labels.size());
}

}  // namespace ttrlguard
