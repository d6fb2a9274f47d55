// stvo: waveform, sweep and mnist experiments on the time-multiplexed STVO reservoir.

#include <atomic>
#include <chrono>
#include <cmath>
#include <csignal>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "stvo/errors.hpp"
#include "stvo/experiment_config.hpp"
#include "stvo/idx.hpp"
#include "stvo/logistic_fit.hpp"
#include "stvo/mnist_task.hpp"
#include "stvo/parallel.hpp"
#include "stvo/random.hpp"
#include "stvo/svg_plot.hpp"
#include "stvo/sweep.hpp"
#include "stvo/waveform_task.hpp"

namespace fs = std::filesystem;
using namespace stvo;

namespace {

enum ExitCode { kOk = 0, kConfigError = 1, kRuntimeError = 2, kDatasetError = 3 };

std::atomic<bool> g_interrupted{false};

extern "C" void on_sigint(int) { g_interrupted = true; }

class PhaseTimer {
 public:
  explicit PhaseTimer(std::string name) : name_(std::move(name)), t0_(Clock::now()) {}
  ~PhaseTimer() {
    const double s = std::chrono::duration<double>(Clock::now() - t0_).count();
    std::fprintf(stderr, "[time] %-10s %9.3f s\n", name_.c_str(), s);
  }

 private:
  using Clock = std::chrono::steady_clock;
  std::string name_;
  Clock::time_point t0_;
};

// Flag values; unset optionals leave the config value alone.
struct Overrides {
  std::string config_path;
  std::optional<unsigned> threads;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> model;
  std::optional<std::size_t> nodes;
  std::optional<double> dt_node;
  std::optional<double> iw;
  std::optional<double> delta_v;
  std::optional<double> noise_p2p;
  std::optional<std::size_t> repetitions;
  std::optional<std::string> noise_per;
  std::optional<double> ridge;
  std::optional<std::string> mask;

  // sweep
  std::optional<std::string> variable;
  std::optional<double> lo;
  std::optional<double> hi;
  std::optional<std::size_t> points;
  std::optional<double> i_cr2;
  bool no_fit = false;
  bool no_svg = false;

  // mnist
  std::optional<std::string> mode;
  std::string activations;
  std::optional<std::string> data_dir;
  std::string node_grid;
  std::optional<double> input_gain;

  std::string out = "";
};

ExperimentConfig resolve_config(const Overrides& o, const char* subcommand) {
  ExperimentConfig c;
  if (!o.config_path.empty()) c.apply(load_key_value(o.config_path));
  auto& r = c.reservoir;
  auto& t = c.task;
  if (o.threads) c.threads = *o.threads;
  if (o.seed) r.seed = *o.seed;
  if (o.model) r.model = parse_node_model(*o.model);
  if (o.dt_node) r.dt_node_ns = *o.dt_node;
  if (o.iw) t.i_w_ma = *o.iw;
  if (o.delta_v) t.delta_v_mv = *o.delta_v;
  if (o.noise_p2p) t.noise_p2p_mv = *o.noise_p2p;
  if (o.ridge) r.ridge = *o.ridge;
  if (o.mask) r.mask = parse_mask_scheme(*o.mask);
  if (o.i_cr2) c.oscillator.i_cr2_override_ma = *o.i_cr2;
  if (o.noise_per) {
    if (*o.noise_per != "slot" && *o.noise_per != "sample") {
      throw ConfigError("--noise-per must be 'slot' or 'sample'");
    }
    r.noise_per_sample = *o.noise_per == "sample";
  }
  const std::string sub = subcommand;
  if (sub == "mnist") {
    if (o.nodes) t.mnist_nodes = *o.nodes;
    if (o.mode) t.mnist_mode = parse_mnist_mode(*o.mode);
    if (o.data_dir) t.mnist_dir = *o.data_dir;
    if (o.input_gain) t.input_gain = *o.input_gain;
    if (o.repetitions) t.repetitions = *o.repetitions;
    if (t.mnist_dir.empty()) {
      if (const char* env = std::getenv("STVO_DATA_DIR")) t.mnist_dir = env;
    }
  } else {
    if (o.nodes) r.n_nodes = *o.nodes;
  }
  if (sub == "waveform" && o.repetitions) t.repetitions = *o.repetitions;
  if (sub == "sweep") {
    if (o.repetitions) c.sweep.repetitions = *o.repetitions;
    if (o.variable) c.sweep.variable = parse_sweep_variable(*o.variable);
    if (o.lo) c.sweep.lo = *o.lo;
    if (o.hi) c.sweep.hi = *o.hi;
    if (o.points) c.sweep.points = *o.points;
  }
  c.validate();
  return c;
}

void write_metadata(std::ostream& out, const ExperimentConfig& c, const std::string& command,
                    const std::vector<std::string>& extra) {
  out << "# stvo " << command << '\n';
  for (const auto& line : extra) out << "# " << line << '\n';
  out << "# resolved configuration (strip '# ' to reuse as --config):\n";
  c.describe(out, "# ");
}

std::string joined_argv(int argc, char** argv) {
  std::string s;
  for (int i = 0; i < argc; ++i) {
    if (i) s += ' ';
    s += argv[i];
  }
  return s;
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  return out;
}

struct MeanStd {
  double mean = 0.0;
  double sd = 0.0;
};

MeanStd mean_std(const std::vector<double>& v) {
  MeanStd m;
  for (double x : v) m.mean += x;
  m.mean /= static_cast<double>(v.size());
  for (double x : v) m.sd += (x - m.mean) * (x - m.mean);
  m.sd = v.size() > 1 ? std::sqrt(m.sd / static_cast<double>(v.size() - 1)) : 0.0;
  return m;
}

// ---------------------------------------------------------------- waveform

int cmd_waveform(const Overrides& o, const std::string& argv_line) {
  const ExperimentConfig config = resolve_config(o, "waveform");
  const WaveformTaskParams base = config.waveform_params();
  const std::size_t reps = config.task.repetitions;
  const fs::path out_path = o.out.empty() ? fs::path("waveform_metrics.csv") : fs::path(o.out);

  std::vector<WaveformResult> results(reps);
  std::vector<std::uint64_t> seeds(reps);
  {
    PhaseTimer timer("simulate");
    for (std::size_t r = 0; r < reps; ++r) seeds[r] = derive_seed(base.seed, {r});
    parallel_for(reps, config.threads, [&](std::size_t r) {
      WaveformTaskParams p = base;
      p.seed = seeds[r];
      results[r] = run_waveform_task(p);
    });
  }

  PhaseTimer timer("report");
  std::ofstream csv = open_output(out_path);
  write_metadata(csv, config, "waveform",
                 {"command: " + argv_line,
                  "repetition r uses seed derive_seed(reservoir.seed, r); mask, noise and "
                  "test order are redrawn per repetition",
                  "snr_db = " + std::to_string(snr_db(base.i_w_ma, base.oscillator.resistance_ohm,
                                                      base.noise_p2p_mv))});
  csv << "repetition,seed,train_acc_tw,train_acc_wta,train_rmse_tw,train_rmse_wta,"
         "test_acc_tw,test_acc_wta,test_rmse_tw,test_rmse_wta\n";
  csv.precision(10);
  for (std::size_t r = 0; r < reps; ++r) {
    const auto& tr = results[r].train;
    const auto& te = results[r].test;
    csv << r << ',' << seeds[r] << ',' << tr.acc_tw << ',' << tr.acc_wta << ',' << tr.rmse_tw
        << ',' << tr.rmse_wta << ',' << te.acc_tw << ',' << te.acc_wta << ',' << te.rmse_tw << ','
        << te.rmse_wta << '\n';
  }

  auto column = [&](auto pick) {
    std::vector<double> v;
    for (const auto& r : results) v.push_back(pick(r));
    return mean_std(v);
  };
  const MeanStd rows[2][4] = {
      {column([](const WaveformResult& r) { return r.train.acc_tw; }),
       column([](const WaveformResult& r) { return r.train.acc_wta; }),
       column([](const WaveformResult& r) { return r.train.rmse_tw; }),
       column([](const WaveformResult& r) { return r.train.rmse_wta; })},
      {column([](const WaveformResult& r) { return r.test.acc_tw; }),
       column([](const WaveformResult& r) { return r.test.acc_wta; }),
       column([](const WaveformResult& r) { return r.test.rmse_tw; }),
       column([](const WaveformResult& r) { return r.test.rmse_wta; })}};

  std::ostringstream summary;
  char line[200];
  std::snprintf(line, sizeof line,
                "model %s, I_w = %.4g mA, dV = %.4g mV, noise = %.4g mV p-p (SNR %.2f dB), "
                "%zu nodes, %zu repetitions\n",
                node_model_name(base.model), base.i_w_ma, base.delta_v_mv, base.noise_p2p_mv,
                snr_db(base.i_w_ma, base.oscillator.resistance_ohm, base.noise_p2p_mv),
                base.n_nodes, reps);
  summary << line;
  summary << "                 Train               Test\n";
  const char* names[4] = {"Accuracy (TW)", "Accuracy (WTA)", "RMSE (TW)", "RMSE (WTA)"};
  for (int m = 0; m < 4; ++m) {
    if (m < 2) {
      std::snprintf(line, sizeof line, "%-15s  %6.2f%% +- %5.2f   %6.2f%% +- %5.2f\n", names[m],
                    rows[0][m].mean, rows[0][m].sd, rows[1][m].mean, rows[1][m].sd);
    } else {
      std::snprintf(line, sizeof line, "%-15s  %6.3f  +- %5.3f   %6.3f  +- %5.3f\n", names[m],
                    rows[0][m].mean, rows[0][m].sd, rows[1][m].mean, rows[1][m].sd);
    }
    summary << line;
  }
  std::cout << summary.str();
  fs::path summary_path = out_path;
  summary_path.replace_extension(".txt");
  std::ofstream txt = open_output(summary_path);
  txt << summary.str();
  std::cerr << "wrote " << out_path.string() << " and " << summary_path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- sweep

void write_sweep_svgs(const fs::path& prefix, const SweepResult& result,
                      const std::optional<LogisticFit>& fit_wta) {
  const bool snr = result.variable == SweepVariable::SnrDb;
  const std::string x_label = snr ? "SNR (dB)" : "I_w (mA)";
  PlotSeries tw{"TW", {}, {}, "#1f77b4"};
  PlotSeries wta{"WTA", {}, {}, "#d62728"};
  PlotSeries rtw{"RMSE TW", {}, {}, "#1f77b4"};
  PlotSeries rwta{"RMSE WTA", {}, {}, "#d62728"};
  for (const auto& p : result.points) {
    if (p.empty()) continue;
    tw.x.push_back(p.value);
    tw.y.push_back(p.acc_tw_mean);
    wta.x.push_back(p.value);
    wta.y.push_back(p.acc_wta_mean);
    rtw.x.push_back(p.value);
    rtw.y.push_back(truncated_rmse(p.rmse_tw_mean));
    rwta.x.push_back(p.value);
    rwta.y.push_back(truncated_rmse(p.rmse_wta_mean));
  }
  std::vector<PlotSeries> acc{tw, wta};
  if (fit_wta && !wta.x.empty()) {
    PlotSeries curve{"logistic (WTA)", {}, {}, "#2ca02c", false, true};
    const double x0 = wta.x.front();
    const double x1 = wta.x.back();
    for (int i = 0; i <= 200; ++i) {
      const double x = x0 + (x1 - x0) * i / 200.0;
      curve.x.push_back(x);
      curve.y.push_back((*fit_wta)(x));
    }
    acc.push_back(curve);
  }
  std::ofstream a = open_output(prefix.string() + "_accuracy.svg");
  write_svg_plot(a, {"Accuracy", x_label, "accuracy (%)", 40.0, 100.0}, acc);
  std::ofstream r = open_output(prefix.string() + "_rmse.svg");
  write_svg_plot(r, {"RMSE (truncated to 1.00)", x_label, "RMSE", 0.0, 1.0}, {rtw, rwta});
}

int cmd_sweep(const Overrides& o, const std::string& argv_line) {
  const ExperimentConfig config = resolve_config(o, "sweep");
  const SweepSpec spec = config.sweep_spec();
  spec.validate();
  const fs::path out_path =
      o.out.empty() ? fs::path(std::string("sweep_") + sweep_variable_name(spec.variable) + ".csv")
                    : fs::path(o.out);
  const auto [lo, hi] = sweep_range(spec);

  std::ofstream csv = open_output(out_path);
  write_metadata(csv, config, "sweep",
                 {"command: " + argv_line,
                  "variable " + std::string(sweep_variable_name(spec.variable)) + " from " +
                      std::to_string(lo) + " to " + std::to_string(hi) + " over " +
                      std::to_string(spec.points) + " points, " +
                      std::to_string(spec.repetitions) + " repetitions per point",
                  "run seed = derive_seed(reservoir.seed, point_index, repetition); mask redrawn "
                  "per run",
                  "metrics are test-set values; RMSE columns are not truncated"});
  write_sweep_csv_header(csv);
  csv.flush();

  std::signal(SIGINT, on_sigint);
  SweepResult result;
  {
    PhaseTimer timer("sweep");
    SweepHooks hooks;
    hooks.cancel = &g_interrupted;
    std::size_t done = 0;
    hooks.on_point = [&](const SweepPoint& p) {
      write_sweep_csv_row(csv, p);
      csv.flush();
      std::fprintf(stderr, "  point %zu/%zu  value %.4g  WTA %.2f%%  failed %zu\n", ++done,
                   spec.points, p.value, p.acc_wta_mean, p.failed_seeds);
    };
    result = run_sweep(spec, hooks);
  }
  if (result.interrupted) {
    csv << "# interrupted after " << result.points.size() << " points\n";
    std::cerr << "interrupted; partial results in " << out_path.string() << '\n';
    return kRuntimeError;
  }

  PhaseTimer timer("fit+plot");
  std::optional<LogisticFit> fit_wta;
  if (spec.variable == SweepVariable::SnrDb && !o.no_fit) {
    fs::path fit_path = out_path;
    fit_path.replace_extension(".fit.txt");
    std::ofstream fit_out = open_output(fit_path);
    fit_out << "# generalized logistic ACC(SNR) = 50 + 50 / (1 + Q exp(-B SNR))^(1/nu)\n";
    fit_out << "series,Q,B_per_dB,nu,max_relative_error,snr_at_95pct_db,status\n";
    for (const char* which : {"tw", "wta"}) {
      std::vector<std::pair<double, double>> pts;
      for (const auto& p : result.points) {
        if (!p.empty()) pts.emplace_back(p.value, which[0] == 't' ? p.acc_tw_mean : p.acc_wta_mean);
      }
      LogisticFit fit;
      std::string status = "ok";
      try {
        fit = fit_generalized_logistic(pts);
      } catch (const LogisticFitError& e) {
        fit = e.best_so_far();
        status = e.what();
      }
      double snr95 = std::nan("");
      try {
        snr95 = invert_logistic(fit, 95.0);
      } catch (const Error&) {
      }
      char line[256];
      std::snprintf(line, sizeof line, "%s,%.6g,%.6g,%.6g,%.6g,%.4f,", which, fit.q, fit.b, fit.nu,
                    fit.max_relative_error, snr95);
      fit_out << line << '"' << status << "\"\n";
      std::cout << line << status << '\n';
      if (which[0] == 'w' && status == "ok") fit_wta = fit;
    }
  }
  if (!o.no_svg) {
    fs::path prefix = out_path;
    prefix.replace_extension();
    write_sweep_svgs(prefix, result, fit_wta);
  }
  std::cerr << "wrote " << out_path.string() << '\n';
  return kOk;
}

// ---------------------------------------------------------------- mnist

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_mnist(const Overrides& o, const std::string& argv_line) {
  const ExperimentConfig config = resolve_config(o, "mnist");
  if (config.task.mnist_dir.empty()) {
    throw ConfigError("no MNIST directory: pass --data-dir, set [task] mnist_dir, or STVO_DATA_DIR");
  }
  std::vector<Activation> activations;
  for (const auto& name : split_list(o.activations.empty() ? activation_name(config.task.activation)
                                                           : o.activations)) {
    activations.push_back(parse_activation(name));
  }
  std::vector<std::size_t> grid;
  if (!o.node_grid.empty()) {
    for (const auto& n : split_list(o.node_grid)) {
      grid.push_back(static_cast<std::size_t>(parse_integer(n, "--node-grid")));
    }
  } else {
    grid.push_back(config.task.mnist_nodes);
  }
  const fs::path out_path = o.out.empty() ? fs::path("mnist.csv") : fs::path(o.out);

  MnistFeatures features;
  {
    MnistData data;
    {
      PhaseTimer timer("load");
      data = load_mnist(config.task.mnist_dir);
    }
    PhaseTimer timer("pca");
    features = prepare_mnist_features(data, config.task.pca_components);
  }
  std::fprintf(stderr, "PCA: %zu components explain %.2f%% of the variance\n",
               features.pca.n_components(), 100.0 * features.pca.cumulative_explained());

  const MnistTaskParams base = config.mnist_params();
  std::ofstream csv = open_output(out_path);
  write_metadata(csv, config, "mnist",
                 {"command: " + argv_line,
                  "pca explained variance = " +
                      std::to_string(features.pca.cumulative_explained()),
                  "repetition r uses seed reservoir.seed + r; mask seed derived from it"});
  write_mnist_csv_header(csv);
  csv.flush();
  PhaseTimer timer("reservoir");
  activation_sweep(features, grid, activations, config.task.repetitions, base,
                   [&](const MnistSweepRow& row) {
                     write_mnist_csv_row(csv, row);
                     csv.flush();
                     std::printf("nodes %6zu  %-8s  seed %llu  accuracy %.2f%%  (%.1f s)\n",
                                 row.node_count, activation_name(row.activation),
                                 static_cast<unsigned long long>(row.seed), row.accuracy_pct,
                                 row.wallclock_s);
                     std::fflush(stdout);
                   });
  std::cerr << "wrote " << out_path.string() << '\n';
  return kOk;
}

void add_common(CLI::App* sub, Overrides& o) {
  sub->add_option("--config", o.config_path, "Experiment config file (key = value sections)");
  sub->add_option("--threads", o.threads, "Worker threads (0 = hardware concurrency)");
  sub->add_option("--seed", o.seed, "Base seed for masks, noise and shuffles");
  sub->add_option("--model", o.model, "Node model: lotea | hptea")
      ->check(CLI::IsMember({"lotea", "hptea"}));
  sub->add_option("--iw", o.iw, "Working current I_w (mA)");
  sub->add_option("--delta-v", o.delta_v, "Signal peak-to-peak amplitude dV (mV)");
  sub->add_option("--dt-node", o.dt_node, "Virtual-node slot duration (ns)");
  sub->add_option("--ridge", o.ridge, "Ridge parameter of the readout (0 = pseudo-inverse)");
  sub->add_option("--mask", o.mask, "Mask scheme: pm1 | uniform");
  sub->add_option("--i-cr2", o.i_cr2, "Override of the second critical current (mA)");
  sub->add_option("--out", o.out, "Output CSV path");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spin-torque vortex oscillator reservoir simulator"};
  app.require_subcommand(1);
  Overrides o;

  auto* waveform = app.add_subcommand("waveform", "Sine/square classification (train/test report)");
  add_common(waveform, o);
  waveform->add_option("--nodes", o.nodes, "Virtual nodes per input sample");
  waveform->add_option("--noise-p2p", o.noise_p2p, "Noise peak-to-peak amplitude (mV, 6-sigma)");
  waveform->add_option("--repetitions", o.repetitions, "Independent seeded runs to average");
  waveform->add_option("--noise-per", o.noise_per, "Noise draw granularity: slot | sample");

  auto* sweep = app.add_subcommand("sweep", "Working-current or SNR sweep with logistic fit");
  add_common(sweep, o);
  sweep->add_option("--variable", o.variable, "Swept variable: iw (mA) | snr (dB)")
      ->check(CLI::IsMember({"iw", "snr"}));
  sweep->add_option("--nodes", o.nodes, "Virtual nodes per input sample");
  sweep->add_option("--noise-p2p", o.noise_p2p,
                    "Noise peak-to-peak amplitude for I_w sweeps (mV)");
  sweep->add_option("--points", o.points, "Grid points (default 60 for iw, 61 for snr)");
  sweep->add_option("--repetitions", o.repetitions, "Seeded runs per point");
  sweep->add_option("--lo", o.lo, "Range start (mA or dB; default 1.001 I_cr1 or -20 dB)");
  sweep->add_option("--hi", o.hi, "Range end (mA or dB; default I_w,max or 100 dB)");
  sweep->add_option("--noise-per", o.noise_per, "Noise draw granularity: slot | sample");
  sweep->add_flag("--no-fit", o.no_fit, "Skip the logistic fit of SNR sweeps");
  sweep->add_flag("--no-svg", o.no_svg, "Skip SVG plots");

  auto* mnist = app.add_subcommand("mnist", "MNIST with PCA features and activation comparison");
  add_common(mnist, o);
  mnist->add_option("--nodes", o.nodes, "Virtual nodes (reservoir size)");
  mnist->add_option("--activation", o.activations,
                    "Comma-separated list: identity, relu, sigmoid, stvo");
  mnist->add_option("--mode", o.mode, "stvo evaluation: static (s_inf curve) | dynamic")
      ->check(CLI::IsMember({"static", "dynamic"}));
  mnist->add_option("--data-dir", o.data_dir,
                    "Directory with the four IDX files (default: $STVO_DATA_DIR)");
  mnist->add_option("--node-grid", o.node_grid, "Comma-separated ascending node counts");
  mnist->add_option("--repetitions", o.repetitions, "Seeds per (node count, activation)");
  mnist->add_option("--input-gain", o.input_gain,
                    "Pre-activation gain (0 = 1/sqrt(number of PCA features))");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  const std::string argv_line = joined_argv(argc, argv);
  try {
    if (waveform->parsed()) return cmd_waveform(o, argv_line);
    if (sweep->parsed()) return cmd_sweep(o, argv_line);
    if (mnist->parsed()) return cmd_mnist(o, argv_line);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DatasetError& e) {
    std::cerr << "dataset error: " << e.what() << '\n';
    return kDatasetError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
  return kRuntimeError;
}
