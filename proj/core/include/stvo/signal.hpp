#pragma once

// Drive-current construction and signal/noise power bookkeeping.
//
// Voltages are in mV, currents in mA, resistances in ohm. Noise amplitudes
// follow the 6-sigma rule: a peak-to-peak amplitude dV_pp corresponds to a
// Gaussian of standard deviation dV_pp / 6.

#include <array>
#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "stvo/dynamics.hpp"
#include "stvo/random.hpp"

namespace stvo {

enum class WaveformClass { Sine, Square };

/// One 8-sample period of the benchmark waveforms.
struct WaveformPeriod {
  static constexpr std::size_t kSamples = 8;

  std::array<double, kSamples> samples{};
  WaveformClass label = WaveformClass::Sine;

  /// sin(2 pi k / 8), with the zero crossings exactly 0.
  static WaveformPeriod sine();
  /// +1 for k = 0..3, -1 for k = 4..7.
  static WaveformPeriod square();

  /// Readout target: +1 for sine, -1 for square.
  double target() const noexcept { return label == WaveformClass::Sine ? 1.0 : -1.0; }
};

struct NoiseSpec {
  double delta_v_p2p_mv = 50.0;
  std::uint64_t seed = 0;

  double sigma_mv() const noexcept { return delta_v_p2p_mv / 6.0; }
};

struct DriveSignal {
  std::vector<double> currents_ma;
  double dt_ns = 50.0;

  std::size_t size() const noexcept { return currents_ma.size(); }
  /// Columns: index, time_ns, current_mA.
  void write_csv(std::ostream& out) const;
};

enum class NegativeCurrentPolicy {
  Reject,  // DomainError on any negative sample
  Clamp,   // rectify to 0 mA
};

struct ComposeOptions {
  double dt_ns = 50.0;
  // Consecutive values sharing one noise draw: 1 = per virtual-node slot,
  // n_nodes = per input sample.
  std::size_t noise_hold = 1;
  NegativeCurrentPolicy negative = NegativeCurrentPolicy::Reject;
};

/// I = I_w + (dV/2 * v + noise) / R for each value v in [-1, 1].
DriveSignal compose_input(std::span<const double> values, double i_w_ma, double delta_v_mv,
                          double noise_p2p_mv, double r_osc_ohm, Rng& rng,
                          const ComposeOptions& options = {});

DriveSignal compose_input(std::span<const double> values, double i_w_ma, double delta_v_mv,
                          const NoiseSpec& noise, double r_osc_ohm,
                          const ComposeOptions& options = {});

struct PowerLevel {
  double watts = 0.0;

  double db() const;
  double dbm() const { return db() + 30.0; }
};

/// sigma = dV_pp / (6 sqrt(R)), in W^(1/2).
double noise_sigma(double delta_v_p2p_mv, double r_osc_ohm);

/// R I_w^2.
PowerLevel signal_power(double i_w_ma, double r_osc_ohm);
/// sigma^2.
PowerLevel noise_power(double delta_v_p2p_mv, double r_osc_ohm);

/// Linear SNR 36 R^2 I_w^2 / dV_pp^2.
double snr_ratio(double i_w_ma, double r_osc_ohm, double delta_v_noise_p2p_mv);
/// 20 log10(6 R I_w / dV_pp). +infinity for a noiseless system.
double snr_db(double i_w_ma, double r_osc_ohm, double delta_v_noise_p2p_mv);
/// Inverse of snr_db in the noise amplitude.
double noise_p2p_for_snr(double snr_db_value, double i_w_ma, double r_osc_ohm);

/// I_cr2 - (dV + dV_pp) / (2 R). Throws ConfigError if it does not exceed I_cr1.
double i_w_max(const OscillatorConfig& osc, double delta_v_mv, double delta_v_noise_p2p_mv);

/// 10 log10(mean(avg16^2) / mean((avg1 - avg16)^2)), where avg16 is an averaged
/// measurement standing in for the clean signal.
double estimate_snr(std::span<const double> avg1, std::span<const double> avg16);

}  // namespace stvo
