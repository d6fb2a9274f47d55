#pragma once

// Waveform-task scoring. Targets are +1 (sine) / -1 (square).

#include <cstddef>
#include <span>

namespace stvo {

inline constexpr std::size_t kPeriodSamples = 8;

/// Percentage of samples whose sign(score) matches the target sign. A score of
/// exactly 0 counts as +1.
double score_tw(std::span<const double> scores, std::span<const double> targets);

/// Percentage of periods whose mean score (over groups of `group` samples) has
/// the sign of the period's target. Same tie-break as score_tw.
double score_wta(std::span<const double> scores, std::span<const double> targets,
                 std::size_t group = kPeriodSamples);

/// sqrt(mean((targets - predictions)^2)).
double rmse(std::span<const double> targets, std::span<const double> predictions);

/// RMSE of the per-period mean scores against the period targets.
double rmse_wta(std::span<const double> scores, std::span<const double> targets,
                std::size_t group = kPeriodSamples);

struct TaskMetrics {
  double acc_tw = 0.0;   // %
  double acc_wta = 0.0;  // %
  double rmse_tw = 0.0;
  double rmse_wta = 0.0;
};

TaskMetrics score_all(std::span<const double> scores, std::span<const double> targets,
                      std::size_t group = kPeriodSamples);

}  // namespace stvo
