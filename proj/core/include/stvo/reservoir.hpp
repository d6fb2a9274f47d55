#pragma once

// Time-multiplexed single-oscillator reservoir.
//
// Every input sample is expanded into n_nodes masked slots of duration
// dt_node. The oscillator is evolved slot by slot and its reduced position at
// the end of each slot is one virtual-node state. A StateMatrix row holds the
// n_nodes states of one input sample followed by a constant bias column.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "stvo/dynamics.hpp"
#include "stvo/signal.hpp"

namespace stvo {

enum class MaskScheme { BinaryPm1, Uniform };
enum class NodeModel { Lotea, Hptea, Static };
enum class Activation { Identity, ReLU, Sigmoid, StvoSInf };

/// n_nodes x input_dim mask. BinaryPm1 draws +-1 with equal probability,
/// Uniform draws from [-1, 1].
Eigen::MatrixXd make_mask(std::size_t n_nodes, std::size_t input_dim, MaskScheme scheme,
                          std::uint64_t seed);

struct ReservoirConfig {
  std::size_t n_nodes = 24;
  double dt_node_ns = 50.0;
  Eigen::MatrixXd mask;
  NodeModel model = NodeModel::Lotea;
  Activation activation = Activation::StvoSInf;  // used by NodeModel::Static
  double s_floor = kDefaultSFloor;
  std::uint64_t seed = 0;
  HpteaOrderPolynomial order{};
  bool reset_each_sample = false;

  std::size_t input_dim() const noexcept { return static_cast<std::size_t>(mask.cols()); }
  void validate() const;

  /// Builds a config with a freshly drawn mask.
  static ReservoirConfig with_mask(std::size_t n_nodes, std::size_t input_dim, MaskScheme scheme,
                                   std::uint64_t seed);
};

/// rows = input samples, cols = n_nodes + 1 (last column is the bias, == 1).
using StateMatrix = Eigen::MatrixXd;

/// Node i receives sum_j mask(i, j) * input[j].
std::vector<double> expand_and_mask(std::span<const double> input, const ReservoirConfig& config);

/// Masks a whole scalar time series, sample by sample, into one slot sequence.
std::vector<double> expand_series(std::span<const double> series, const ReservoirConfig& config);

Dynamics make_dynamics(const ReservoirConfig& config, const OscillatorConfig& oscillator);

/// Evolves one sequence starting from s_floor. The drive holds one current per
/// slot; its length must be a multiple of n_nodes.
StateMatrix run_reservoir(const DriveSignal& drive, const ReservoirConfig& config,
                          const OscillatorConfig& oscillator);

/// Same, writing one row per input sample into `out` starting at `first_row`.
/// `out` must already have n_nodes + 1 columns. With reset_each_sample the
/// state returns to the floor before every sample (no carry-over).
void run_reservoir_into(std::span<const double> currents_ma, double dt_node_ns,
                        const Dynamics& dynamics, const OscillatorConfig& oscillator,
                        std::size_t n_nodes, Eigen::Ref<Eigen::MatrixXd> out,
                        Eigen::Index first_row, bool reset_each_sample = false);

struct StaticActivationParams {
  OscillatorConfig oscillator{};
  double i_w_ma = 1.986;
  double delta_v_mv = 150.0;
};

/// Identity, ReLU and logistic act on x directly. StvoSInf maps x (saturated to
/// [-1, 1]) to the current I_w + x dV / (2 R) and returns s_inf there.
double static_activation(double x, Activation kind, const StaticActivationParams& params);

/// Applies a static activation slot by slot. `preactivations` holds n_nodes
/// values per sample.
StateMatrix apply_static(std::span<const double> preactivations, std::size_t n_nodes,
                         Activation kind, const StaticActivationParams& params);

}  // namespace stvo
