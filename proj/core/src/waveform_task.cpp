#include "stvo/waveform_task.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "stvo/errors.hpp"
#include "stvo/random.hpp"
#include "stvo/readout.hpp"

namespace stvo {

WaveformDataset make_waveform_dataset(std::size_t n_train, std::size_t n_test,
                                      std::uint64_t shuffle_seed) {
  if (n_train == 0 || n_test == 0 || n_train % 2 || n_test % 2) {
    throw ConfigError("period counts must be positive and even");
  }
  WaveformDataset data;
  const auto sine = WaveformPeriod::sine();
  const auto square = WaveformPeriod::square();
  for (std::size_t i = 0; i < n_train; ++i) data.train.push_back(i % 2 ? square : sine);
  for (std::size_t i = 0; i < n_test; ++i) data.test.push_back(i % 2 ? square : sine);
  Rng rng(shuffle_seed);
  std::shuffle(data.test.begin(), data.test.end(), rng.engine());
  return data;
}

std::vector<double> period_samples(const std::vector<WaveformPeriod>& periods) {
  std::vector<double> out;
  out.reserve(periods.size() * WaveformPeriod::kSamples);
  for (const auto& p : periods) out.insert(out.end(), p.samples.begin(), p.samples.end());
  return out;
}

std::vector<double> period_targets(const std::vector<WaveformPeriod>& periods) {
  std::vector<double> out;
  out.reserve(periods.size() * WaveformPeriod::kSamples);
  for (const auto& p : periods) out.insert(out.end(), WaveformPeriod::kSamples, p.target());
  return out;
}

void WaveformTaskParams::validate() const {
  oscillator.validate();
  if (n_nodes == 0) throw ConfigError("n_nodes must be >= 1");
  if (!(dt_node_ns > 0.0)) throw ConfigError("dt_node must be positive");
  if (!(i_w_ma >= 0.0)) throw ConfigError("working current must be non-negative");
  if (!(delta_v_mv >= 0.0)) throw ConfigError("signal amplitude must be non-negative");
  if (!(noise_p2p_mv >= 0.0)) throw ConfigError("noise amplitude must be non-negative");
  if (!(ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  if (model == NodeModel::Static) {
    throw ConfigError("the waveform task needs a dynamical node model (lotea or hptea)");
  }
}

WaveformSeeds waveform_seeds(std::uint64_t seed) {
  return {derive_seed(seed, {static_cast<std::uint64_t>(SeedRole::Mask)}),
          derive_seed(seed, {static_cast<std::uint64_t>(SeedRole::Noise)}),
          derive_seed(seed, {static_cast<std::uint64_t>(SeedRole::Shuffle)})};
}

namespace {

StateMatrix collect_states(const std::vector<double>& samples, const ReservoirConfig& config,
                           const Dynamics& dynamics, const WaveformTaskParams& params, Rng& noise) {
  const auto masked = expand_series(samples, config);
  ComposeOptions options;
  options.dt_ns = params.dt_node_ns;
  options.noise_hold = params.noise_hold;
  options.negative = params.negative;
  const DriveSignal drive = compose_input(masked, params.i_w_ma, params.delta_v_mv,
                                          params.noise_p2p_mv,
                                          params.oscillator.resistance_ohm, noise, options);

  const auto n_samples = static_cast<Eigen::Index>(samples.size());
  StateMatrix states(n_samples, static_cast<Eigen::Index>(config.n_nodes) + 1);
  const std::size_t block = params.reset_each_period ? WaveformPeriod::kSamples * config.n_nodes
                                                     : drive.size();
  const std::span<const double> currents(drive.currents_ma);
  for (std::size_t start = 0; start < drive.size(); start += block) {
    run_reservoir_into(currents.subspan(start, block), config.dt_node_ns, dynamics,
                       params.oscillator, config.n_nodes, states,
                       static_cast<Eigen::Index>(start / config.n_nodes));
  }
  return states;
}

}  // namespace

WaveformResult run_waveform_task(const WaveformTaskParams& params) {
  params.validate();
  const WaveformSeeds seeds = waveform_seeds(params.seed);
  const WaveformDataset data =
      make_waveform_dataset(params.train_periods, params.test_periods, seeds.shuffle);

  ReservoirConfig config =
      ReservoirConfig::with_mask(params.n_nodes, 1, params.mask_scheme, seeds.mask);
  config.dt_node_ns = params.dt_node_ns;
  config.model = params.model;
  config.order = params.order;
  config.s_floor = params.s_floor;
  config.validate();
  const Dynamics dynamics = make_dynamics(config, params.oscillator);

  Rng noise(seeds.noise);
  const auto train_x = period_samples(data.train);
  const auto test_x = period_samples(data.test);
  const StateMatrix train_states = collect_states(train_x, config, dynamics, params, noise);
  const StateMatrix test_states = collect_states(test_x, config, dynamics, params, noise);

  const auto train_t = period_targets(data.train);
  const auto test_t = period_targets(data.test);
  const Eigen::Map<const Eigen::VectorXd> train_target(train_t.data(),
                                                       static_cast<Eigen::Index>(train_t.size()));
  const ReadoutWeights weights = train_readout(train_states, train_target, params.ridge);

  const Eigen::VectorXd train_scores = infer(train_states, weights);
  const Eigen::VectorXd test_scores = infer(test_states, weights);
  const std::span<const double> train_y(train_scores.data(), train_t.size());
  const std::span<const double> test_y(test_scores.data(), test_t.size());
  return {score_all(train_y, train_t), score_all(test_y, test_t)};
}

}  // namespace stvo
