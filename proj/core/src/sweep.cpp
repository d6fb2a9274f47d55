#include "stvo/sweep.hpp"

#include <cmath>
#include <ostream>

#include "stvo/errors.hpp"
#include "stvo/parallel.hpp"
#include "stvo/random.hpp"

namespace stvo {

const char* sweep_variable_name(SweepVariable v) {
  return v == SweepVariable::WorkingCurrent ? "iw" : "snr";
}

SweepVariable parse_sweep_variable(const std::string& name) {
  if (name == "iw") return SweepVariable::WorkingCurrent;
  if (name == "snr") return SweepVariable::SnrDb;
  throw ConfigError("unknown sweep variable '" + name + "' (iw, snr)");
}

std::size_t default_points(SweepVariable v) {
  return v == SweepVariable::WorkingCurrent ? 60 : 61;
}

void SweepSpec::validate() const {
  if (points == 0) throw ConfigError("sweep needs at least one point");
  if (repetitions == 0) throw ConfigError("repetitions must be >= 1");
  base.validate();
  const auto [l, h] = sweep_range(*this);
  if (!(l <= h)) throw ConfigError("sweep range is empty");
  if (variable == SweepVariable::WorkingCurrent && !(l >= 0.0)) {
    throw ConfigError("working current must be non-negative");
  }
}

std::pair<double, double> sweep_range(const SweepSpec& spec) {
  if (spec.variable == SweepVariable::SnrDb) return {spec.lo.value_or(-20.0), spec.hi.value_or(100.0)};
  const auto& osc = spec.base.oscillator;
  const double lo = spec.lo ? *spec.lo : 1.001 * critical_current_1(osc);
  const double hi = spec.hi ? *spec.hi : i_w_max(osc, spec.base.delta_v_mv, spec.base.noise_p2p_mv);
  return {lo, hi};
}

std::vector<double> sweep_grid(const SweepSpec& spec) {
  const auto [lo, hi] = sweep_range(spec);
  std::vector<double> grid(spec.points);
  for (std::size_t i = 0; i < spec.points; ++i) {
    grid[i] = spec.points == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / double(spec.points - 1);
  }
  return grid;
}

WaveformTaskParams point_params(const SweepSpec& spec, std::size_t point_index, double value,
                                std::size_t repetition) {
  WaveformTaskParams p = spec.base;
  if (spec.variable == SweepVariable::WorkingCurrent) {
    p.i_w_ma = value;
  } else {
    p.noise_p2p_mv = noise_p2p_for_snr(value, p.i_w_ma, p.oscillator.resistance_ohm);
  }
  p.seed = derive_seed(spec.base.seed, {point_index, repetition});
  return p;
}

namespace {

struct RunOutcome {
  TaskMetrics test;
  bool ok = false;
};

void mean_std(const std::vector<double>& v, double& mean, double& sd) {
  mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  sd = v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) : 0.0;
}

}  // namespace

SweepResult run_sweep(const SweepSpec& spec, const SweepHooks& hooks) {
  spec.validate();
  SweepResult result;
  result.variable = spec.variable;
  const auto grid = sweep_grid(spec);
  std::vector<RunOutcome> runs(spec.repetitions);

  for (std::size_t pi = 0; pi < grid.size(); ++pi) {
    if (hooks.cancel && hooks.cancel->load()) {
      result.interrupted = true;
      break;
    }
    const double value = grid[pi];
    parallel_for(spec.repetitions, spec.threads, [&](std::size_t rep) {
      RunOutcome& out = runs[rep];
      out.ok = false;
      try {
        out.test = run_waveform_task(point_params(spec, pi, value, rep)).test;
        out.ok = true;
      } catch (const DomainError&) {
      } catch (const NumericError&) {
      }
    });

    SweepPoint point;
    point.value = value;
    const WaveformTaskParams p0 = point_params(spec, pi, value, 0);
    point.snr_db_effective = spec.variable == SweepVariable::SnrDb
                                 ? value
                                 : snr_db(p0.i_w_ma, p0.oscillator.resistance_ohm, p0.noise_p2p_mv);
    std::vector<double> tw, wta, rtw, rwta;
    for (const auto& r : runs) {
      if (!r.ok) {
        ++point.failed_seeds;
        continue;
      }
      tw.push_back(r.test.acc_tw);
      wta.push_back(r.test.acc_wta);
      rtw.push_back(r.test.rmse_tw);
      rwta.push_back(r.test.rmse_wta);
    }
    point.completed = tw.size();
    if (!tw.empty()) {
      double unused = 0.0;
      mean_std(tw, point.acc_tw_mean, point.acc_tw_std);
      mean_std(wta, point.acc_wta_mean, point.acc_wta_std);
      mean_std(rtw, point.rmse_tw_mean, unused);
      mean_std(rwta, point.rmse_wta_mean, unused);
    }
    result.points.push_back(point);
    if (hooks.on_point) hooks.on_point(point);
  }
  return result;
}

void write_sweep_csv_header(std::ostream& out) {
  out << "point_value,snr_db_effective,acc_tw_mean,acc_tw_std,acc_wta_mean,acc_wta_std,"
         "rmse_tw_mean,rmse_wta_mean,failed_seeds\n";
}

void write_sweep_csv_row(std::ostream& out, const SweepPoint& p) {
  const auto old_precision = out.precision(10);
  out << p.value << ',' << p.snr_db_effective << ',';
  if (p.empty()) {
    out << ",,,,,,";
  } else {
    out << p.acc_tw_mean << ',' << p.acc_tw_std << ',' << p.acc_wta_mean << ',' << p.acc_wta_std
        << ',' << p.rmse_tw_mean << ',' << p.rmse_wta_mean << ',';
  }
  out << p.failed_seeds << '\n';
  out.precision(old_precision);
}

}  // namespace stvo
