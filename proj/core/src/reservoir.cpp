#include "stvo/reservoir.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "stvo/errors.hpp"
#include "stvo/random.hpp"

namespace stvo {

Eigen::MatrixXd make_mask(std::size_t n_nodes, std::size_t input_dim, MaskScheme scheme,
                          std::uint64_t seed) {
  if (n_nodes == 0 || input_dim == 0) throw ConfigError("mask dimensions must be positive");
  Rng rng(seed);
  Eigen::MatrixXd mask(static_cast<Eigen::Index>(n_nodes), static_cast<Eigen::Index>(input_dim));
  // Row-major fill so the draw order does not depend on Eigen's storage.
  for (Eigen::Index i = 0; i < mask.rows(); ++i) {
    for (Eigen::Index j = 0; j < mask.cols(); ++j) {
      mask(i, j) = scheme == MaskScheme::BinaryPm1 ? (rng.coin() ? 1.0 : -1.0)
                                                   : rng.uniform(-1.0, 1.0);
    }
  }
  return mask;
}

void ReservoirConfig::validate() const {
  if (n_nodes == 0) throw ConfigError("n_nodes must be >= 1");
  if (!(dt_node_ns > 0.0)) throw ConfigError("dt_node must be positive");
  if (static_cast<std::size_t>(mask.rows()) != n_nodes || mask.cols() < 1) {
    throw DimensionError("mask is " + std::to_string(mask.rows()) + "x" +
                         std::to_string(mask.cols()) + ", expected " + std::to_string(n_nodes) +
                         " rows");
  }
  if (!(s_floor > 0.0 && s_floor < 1.0)) throw ConfigError("s_floor must lie in (0, 1)");
}

ReservoirConfig ReservoirConfig::with_mask(std::size_t n_nodes, std::size_t input_dim,
                                           MaskScheme scheme, std::uint64_t seed) {
  ReservoirConfig config;
  config.n_nodes = n_nodes;
  config.seed = seed;
  config.mask = make_mask(n_nodes, input_dim, scheme, seed);
  return config;
}

std::vector<double> expand_and_mask(std::span<const double> input, const ReservoirConfig& config) {
  if (input.size() != config.input_dim()) {
    throw DimensionError("input has " + std::to_string(input.size()) + " values, mask expects " +
                         std::to_string(config.input_dim()));
  }
  const Eigen::Map<const Eigen::VectorXd> x(input.data(), static_cast<Eigen::Index>(input.size()));
  const Eigen::VectorXd masked = config.mask * x;
  return {masked.data(), masked.data() + masked.size()};
}

std::vector<double> expand_series(std::span<const double> series, const ReservoirConfig& config) {
  if (config.input_dim() != 1) {
    throw DimensionError("time-series masking needs a single-column mask, got " +
                         std::to_string(config.input_dim()) + " columns");
  }
  std::vector<double> out;
  out.reserve(series.size() * config.n_nodes);
  for (double x : series) {
    for (std::size_t i = 0; i < config.n_nodes; ++i) {
      out.push_back(config.mask(static_cast<Eigen::Index>(i), 0) * x);
    }
  }
  return out;
}

Dynamics make_dynamics(const ReservoirConfig& config, const OscillatorConfig& oscillator) {
  StateBounds bounds;
  bounds.floor = config.s_floor;
  switch (config.model) {
    case NodeModel::Lotea:
      return Dynamics(oscillator.constants, DynamicsModel::Lotea, {}, bounds);
    case NodeModel::Hptea:
      return Dynamics(oscillator.constants, DynamicsModel::Hptea, config.order, bounds);
    case NodeModel::Static:
      break;
  }
  throw ConfigError("static node model has no dynamics");
}

void run_reservoir_into(std::span<const double> currents_ma, double dt_node_ns,
                        const Dynamics& dynamics, const OscillatorConfig& oscillator,
                        std::size_t n_nodes, Eigen::Ref<Eigen::MatrixXd> out,
                        Eigen::Index first_row, bool reset_each_sample) {
  if (n_nodes == 0 || currents_ma.size() % n_nodes != 0) {
    throw DimensionError("drive length " + std::to_string(currents_ma.size()) +
                         " is not a multiple of n_nodes = " + std::to_string(n_nodes));
  }
  const auto n_samples = static_cast<Eigen::Index>(currents_ma.size() / n_nodes);
  if (out.cols() != static_cast<Eigen::Index>(n_nodes) + 1 ||
      first_row + n_samples > out.rows()) {
    throw DimensionError("state matrix too small for " + std::to_string(n_samples) + " samples");
  }
  const double dt_s = dt_node_ns * 1e-9;
  const double to_density = 1e-3 / oscillator.area_cm2();
  const double floor = dynamics.bounds().floor;
  double s = floor;
  std::size_t slot = 0;
  for (Eigen::Index k = 0; k < n_samples; ++k) {
    if (reset_each_sample) s = floor;
    const Eigen::Index row = first_row + k;
    for (std::size_t i = 0; i < n_nodes; ++i, ++slot) {
      const double current = currents_ma[slot];
      try {
        if (!(current >= 0.0)) {
          throw DomainError("drive current must be non-negative, got " + std::to_string(current) +
                            " mA");
        }
        s = dynamics.step(s, current * to_density, dt_s);
      } catch (const DomainError& e) {
        throw DomainError(std::string(e.what()) + " [slot " + std::to_string(slot) + "]");
      } catch (const ConfigError& e) {
        throw ConfigError(std::string(e.what()) + " [slot " + std::to_string(slot) + "]");
      }
      out(row, static_cast<Eigen::Index>(i)) = s;
    }
    out(row, static_cast<Eigen::Index>(n_nodes)) = 1.0;
  }
}

StateMatrix run_reservoir(const DriveSignal& drive, const ReservoirConfig& config,
                          const OscillatorConfig& oscillator) {
  if (config.n_nodes == 0) throw ConfigError("n_nodes must be >= 1");
  if (drive.size() % config.n_nodes != 0) {
    throw DimensionError("drive length " + std::to_string(drive.size()) +
                         " is not a multiple of n_nodes = " + std::to_string(config.n_nodes));
  }
  const Dynamics dynamics = make_dynamics(config, oscillator);
  StateMatrix states(static_cast<Eigen::Index>(drive.size() / config.n_nodes),
                     static_cast<Eigen::Index>(config.n_nodes) + 1);
  run_reservoir_into(drive.currents_ma, config.dt_node_ns, dynamics, oscillator, config.n_nodes,
                     states, 0, config.reset_each_sample);
  return states;
}

double static_activation(double x, Activation kind, const StaticActivationParams& params) {
  switch (kind) {
    case Activation::Identity:
      return x;
    case Activation::ReLU:
      return std::max(0.0, x);
    case Activation::Sigmoid:
      return 1.0 / (1.0 + std::exp(-x));
    case Activation::StvoSInf: {
      const double v = std::clamp(x, -1.0, 1.0);
      const double current =
          params.i_w_ma + v * params.delta_v_mv / (2.0 * params.oscillator.resistance_ohm);
      if (current <= 0.0) return 0.0;
      return s_infinity(current_to_density(current, params.oscillator),
                        params.oscillator.constants);
    }
  }
  return x;
}

StateMatrix apply_static(std::span<const double> preactivations, std::size_t n_nodes,
                         Activation kind, const StaticActivationParams& params) {
  if (n_nodes == 0 || preactivations.size() % n_nodes != 0) {
    throw DimensionError("preactivation length " + std::to_string(preactivations.size()) +
                         " is not a multiple of n_nodes = " + std::to_string(n_nodes));
  }
  const auto rows = static_cast<Eigen::Index>(preactivations.size() / n_nodes);
  const auto nodes = static_cast<Eigen::Index>(n_nodes);
  StateMatrix states(rows, nodes + 1);
  for (Eigen::Index k = 0; k < rows; ++k) {
    for (Eigen::Index i = 0; i < nodes; ++i) {
      states(k, i) = static_activation(preactivations[static_cast<std::size_t>(k * nodes + i)],
                                       kind, params);
    }
    states(k, nodes) = 1.0;
  }
  return states;
}

}  // namespace stvo
