#pragma once

// Sine / square waveform classification.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "stvo/dynamics.hpp"
#include "stvo/reservoir.hpp"
#include "stvo/scoring.hpp"
#include "stvo/signal.hpp"

namespace stvo {

struct WaveformDataset {
  std::vector<WaveformPeriod> train;  // strictly alternating, sine first
  std::vector<WaveformPeriod> test;   // same composition, shuffled
};

/// n_train and n_test must be even. The test order is a seeded permutation.
WaveformDataset make_waveform_dataset(std::size_t n_train, std::size_t n_test,
                                      std::uint64_t shuffle_seed);

/// Concatenated samples and per-sample targets of a list of periods.
std::vector<double> period_samples(const std::vector<WaveformPeriod>& periods);
std::vector<double> period_targets(const std::vector<WaveformPeriod>& periods);

struct WaveformTaskParams {
  OscillatorConfig oscillator{};
  double i_w_ma = 1.986;
  double delta_v_mv = 150.0;
  double noise_p2p_mv = 50.0;

  std::size_t n_nodes = 24;
  double dt_node_ns = 50.0;
  NodeModel model = NodeModel::Lotea;
  HpteaOrderPolynomial order{};
  MaskScheme mask_scheme = MaskScheme::BinaryPm1;
  double s_floor = kDefaultSFloor;
  double ridge = 0.0;

  std::size_t train_periods = 160;
  std::size_t test_periods = 160;
  // Reset the oscillator at the start of every period; otherwise each set is
  // one long sequence.
  bool reset_each_period = true;
  // Consecutive slots sharing one noise draw (1 = per slot, n_nodes = per sample).
  std::size_t noise_hold = 1;
  NegativeCurrentPolicy negative = NegativeCurrentPolicy::Clamp;

  // Mask, noise and shuffle generators are derived from this seed.
  std::uint64_t seed = 0;

  void validate() const;
};

struct WaveformSeeds {
  std::uint64_t mask = 0;
  std::uint64_t noise = 0;
  std::uint64_t shuffle = 0;
};

WaveformSeeds waveform_seeds(std::uint64_t seed);

struct WaveformResult {
  TaskMetrics train;
  TaskMetrics test;
};

WaveformResult run_waveform_task(const WaveformTaskParams& params);

}  // namespace stvo
