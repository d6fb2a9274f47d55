#include "stvo/scoring.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

void check_lengths(std::size_t a, std::size_t b) {
  if (a != b) {
    throw DimensionError("length mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
  }
  if (a == 0) throw DimensionError("empty score vector");
}

bool positive(double x) { return x >= 0.0; }

std::vector<double> group_means(std::span<const double> v, std::size_t group) {
  if (group == 0 || v.size() % group != 0) {
    throw DimensionError("length " + std::to_string(v.size()) + " is not a multiple of " +
                         std::to_string(group));
  }
  std::vector<double> means(v.size() / group);
  for (std::size_t p = 0; p < means.size(); ++p) {
    double sum = 0.0;
    for (std::size_t k = 0; k < group; ++k) sum += v[p * group + k];
    means[p] = sum / static_cast<double>(group);
  }
  return means;
}

}  // namespace

double score_tw(std::span<const double> scores, std::span<const double> targets) {
  check_lengths(scores.size(), targets.size());
  std::size_t hits = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    hits += positive(scores[i]) == positive(targets[i]);
  }
  return 100.0 * static_cast<double>(hits) / static_cast<double>(scores.size());
}

double score_wta(std::span<const double> scores, std::span<const double> targets,
                 std::size_t group) {
  check_lengths(scores.size(), targets.size());
  const auto s = group_means(scores, group);
  const auto t = group_means(targets, group);
  return score_tw(s, t);
}

double rmse(std::span<const double> targets, std::span<const double> predictions) {
  check_lengths(targets.size(), predictions.size());
  double sum = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    const double d = targets[i] - predictions[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(targets.size()));
}

double rmse_wta(std::span<const double> scores, std::span<const double> targets,
                std::size_t group) {
  check_lengths(scores.size(), targets.size());
  const auto s = group_means(scores, group);
  const auto t = group_means(targets, group);
  return rmse(t, s);
}

TaskMetrics score_all(std::span<const double> scores, std::span<const double> targets,
                      std::size_t group) {
  return {score_tw(scores, targets), score_wta(scores, targets, group), rmse(targets, scores),
          rmse_wta(scores, targets, group)};
}

}  // namespace stvo
