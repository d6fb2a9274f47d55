#pragma once

// Monte-Carlo parametric sweeps of the waveform task.

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "stvo/waveform_task.hpp"

namespace stvo {

enum class SweepVariable { WorkingCurrent, SnrDb };

const char* sweep_variable_name(SweepVariable v);
/// "iw" or "snr".
SweepVariable parse_sweep_variable(const std::string& name);

struct SweepSpec {
  SweepVariable variable = SweepVariable::SnrDb;
  // Unset bounds take the defaults: [1.001 I_cr1, I_w,max] mA for the working
  // current, [-20, 100] dB for the SNR.
  std::optional<double> lo;
  std::optional<double> hi;
  std::size_t points = 61;
  std::size_t repetitions = 200;
  // Fixed parameters. For an SNR sweep the noise amplitude is derived from the
  // SNR at base.i_w_ma; base.seed is the root of every run seed.
  WaveformTaskParams base{};
  unsigned threads = 0;

  void validate() const;
};

/// Default point counts: 60 for the working current, 61 for the SNR.
std::size_t default_points(SweepVariable v);

/// Resolved [lo, hi] for the spec.
std::pair<double, double> sweep_range(const SweepSpec& spec);
/// `points` evenly spaced values over sweep_range (one point: lo).
std::vector<double> sweep_grid(const SweepSpec& spec);

/// Task parameters for one sweep point and repetition.
WaveformTaskParams point_params(const SweepSpec& spec, std::size_t point_index, double value,
                                std::size_t repetition);

struct SweepPoint {
  double value = 0.0;             // mA or dB
  double snr_db_effective = 0.0;  // SNR actually applied
  double acc_tw_mean = 0.0;
  double acc_tw_std = 0.0;
  double acc_wta_mean = 0.0;
  double acc_wta_std = 0.0;
  double rmse_tw_mean = 0.0;
  double rmse_wta_mean = 0.0;
  std::size_t completed = 0;
  std::size_t failed_seeds = 0;

  bool empty() const noexcept { return completed == 0; }
};

struct SweepResult {
  SweepVariable variable = SweepVariable::SnrDb;
  std::vector<SweepPoint> points;
  bool interrupted = false;
};

struct SweepHooks {
  // Called after each point, in grid order.
  std::function<void(const SweepPoint&)> on_point;
  // Checked between points; a true value stops the sweep early.
  const std::atomic<bool>* cancel = nullptr;
};

/// Test-set metrics averaged over `repetitions` seeds per point. Runs that
/// throw stvo::Error are counted in failed_seeds and excluded.
SweepResult run_sweep(const SweepSpec& spec, const SweepHooks& hooks = {});

/// Columns: point_value, snr_db_effective, acc_tw_mean, acc_tw_std,
/// acc_wta_mean, acc_wta_std, rmse_tw_mean, rmse_wta_mean, failed_seeds.
/// Empty points leave the metric cells blank.
void write_sweep_csv_header(std::ostream& out);
void write_sweep_csv_row(std::ostream& out, const SweepPoint& p);

/// Plot value: RMSE truncated to 1.00.
inline double truncated_rmse(double rmse) { return rmse < 1.0 ? rmse : 1.0; }

}  // namespace stvo
