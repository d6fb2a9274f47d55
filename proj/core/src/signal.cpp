#include "stvo/signal.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>

#include "stvo/errors.hpp"

namespace stvo {

WaveformPeriod WaveformPeriod::sine() {
  WaveformPeriod p;
  p.label = WaveformClass::Sine;
  for (std::size_t k = 0; k < kSamples; ++k) {
    p.samples[k] = std::sin(2.0 * std::numbers::pi * static_cast<double>(k) / kSamples);
  }
  p.samples[0] = 0.0;
  p.samples[4] = 0.0;
  return p;
}

WaveformPeriod WaveformPeriod::square() {
  WaveformPeriod p;
  p.label = WaveformClass::Square;
  for (std::size_t k = 0; k < kSamples; ++k) p.samples[k] = k < kSamples / 2 ? 1.0 : -1.0;
  return p;
}

void DriveSignal::write_csv(std::ostream& out) const {
  out << "index,time_ns,current_mA\n";
  const auto old_precision = out.precision(12);
  for (std::size_t i = 0; i < currents_ma.size(); ++i) {
    out << i << ',' << static_cast<double>(i) * dt_ns << ',' << currents_ma[i] << '\n';
  }
  out.precision(old_precision);
}

DriveSignal compose_input(std::span<const double> values, double i_w_ma, double delta_v_mv,
                          double noise_p2p_mv, double r_osc_ohm, Rng& rng,
                          const ComposeOptions& options) {
  if (!(r_osc_ohm > 0.0)) throw ConfigError("oscillator resistance must be positive");
  if (!(options.dt_ns > 0.0)) throw ConfigError("sample duration must be positive");
  if (!(noise_p2p_mv >= 0.0)) throw ConfigError("noise amplitude must be non-negative");
  const std::size_t hold = options.noise_hold == 0 ? 1 : options.noise_hold;
  const double sigma_mv = noise_p2p_mv / 6.0;
  const double half_swing_mv = 0.5 * delta_v_mv;

  DriveSignal drive;
  drive.dt_ns = options.dt_ns;
  drive.currents_ma.resize(values.size());
  double noise_mv = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!(std::abs(v) <= 1.0 + 1e-12)) {
      throw DomainError("input value " + std::to_string(v) + " at index " + std::to_string(i) +
                        " outside [-1, 1]");
    }
    if (sigma_mv > 0.0 && i % hold == 0) noise_mv = rng.normal(0.0, sigma_mv);
    // mV / ohm = mA
    double current = i_w_ma + (half_swing_mv * v + noise_mv) / r_osc_ohm;
    if (current < 0.0) {
      if (options.negative == NegativeCurrentPolicy::Reject) {
        throw DomainError("negative drive current " + std::to_string(current) + " mA at index " +
                          std::to_string(i));
      }
      current = 0.0;
    }
    drive.currents_ma[i] = current;
  }
  return drive;
}

DriveSignal compose_input(std::span<const double> values, double i_w_ma, double delta_v_mv,
                          const NoiseSpec& noise, double r_osc_ohm, const ComposeOptions& options) {
  Rng rng(noise.seed);
  return compose_input(values, i_w_ma, delta_v_mv, noise.delta_v_p2p_mv, r_osc_ohm, rng, options);
}

double PowerLevel::db() const { return 10.0 * std::log10(watts); }

double noise_sigma(double delta_v_p2p_mv, double r_osc_ohm) {
  return (delta_v_p2p_mv * 1e-3) / (6.0 * std::sqrt(r_osc_ohm));
}

PowerLevel signal_power(double i_w_ma, double r_osc_ohm) {
  const double i = i_w_ma * 1e-3;
  return {r_osc_ohm * i * i};
}

PowerLevel noise_power(double delta_v_p2p_mv, double r_osc_ohm) {
  const double sigma = noise_sigma(delta_v_p2p_mv, r_osc_ohm);
  return {sigma * sigma};
}

double snr_ratio(double i_w_ma, double r_osc_ohm, double delta_v_noise_p2p_mv) {
  const double num = 6.0 * r_osc_ohm * i_w_ma;  // mV
  return num * num / (delta_v_noise_p2p_mv * delta_v_noise_p2p_mv);
}

double snr_db(double i_w_ma, double r_osc_ohm, double delta_v_noise_p2p_mv) {
  if (delta_v_noise_p2p_mv == 0.0) return std::numeric_limits<double>::infinity();
  return 20.0 * std::log10(6.0 * r_osc_ohm * i_w_ma / delta_v_noise_p2p_mv);
}

double noise_p2p_for_snr(double snr_db_value, double i_w_ma, double r_osc_ohm) {
  return 6.0 * r_osc_ohm * i_w_ma / std::pow(10.0, snr_db_value / 20.0);
}

double i_w_max(const OscillatorConfig& osc, double delta_v_mv, double delta_v_noise_p2p_mv) {
  const double value =
      critical_current_2(osc) - (delta_v_mv + delta_v_noise_p2p_mv) / (2.0 * osc.resistance_ohm);
  const double i_cr1 = critical_current_1(osc);
  if (!(value > i_cr1)) {
    throw ConfigError("I_w,max = " + std::to_string(value) + " mA does not exceed I_cr1 = " +
                      std::to_string(i_cr1) + " mA");
  }
  return value;
}

double estimate_snr(std::span<const double> avg1, std::span<const double> avg16) {
  if (avg1.size() != avg16.size()) {
    throw DimensionError("traces differ in length: " + std::to_string(avg1.size()) + " vs " +
                         std::to_string(avg16.size()));
  }
  if (avg1.empty()) throw DimensionError("traces are empty");
  double signal = 0.0;
  double noise = 0.0;
  for (std::size_t i = 0; i < avg1.size(); ++i) {
    const double d = avg1[i] - avg16[i];
    signal += avg16[i] * avg16[i];
    noise += d * d;
  }
  if (noise == 0.0) throw NumericError("noise power estimate is zero");
  return 10.0 * std::log10(signal / noise);
}

}  // namespace stvo
