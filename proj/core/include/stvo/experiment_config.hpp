#pragma once

// Experiment configuration file.
//
//   [oscillator]  diameter_nm resistance_ohm a_j b_j a b chirality i_cr2_override_ma
//   [hptea]       c0 c1 c2 c3 c4 c5            (n(J) = sum c_k J^k, J in A/cm^2)
//   [reservoir]   n_nodes dt_node_ns model mask s_floor ridge seed noise_per reset_each_period
//   [task]        i_w_ma delta_v_mv noise_p2p_mv train_periods test_periods repetitions
//                 negative_current mnist_dir mnist_nodes mnist_mode activation input_gain
//                 pca_components
//   [sweep]       variable lo hi points repetitions threads
//
// Every key is optional; unset keys keep the base-case defaults. Unknown
// sections or keys are errors reported with file and line.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "stvo/dynamics.hpp"
#include "stvo/key_value.hpp"
#include "stvo/mnist_task.hpp"
#include "stvo/reservoir.hpp"
#include "stvo/signal.hpp"
#include "stvo/sweep.hpp"
#include "stvo/waveform_task.hpp"

namespace stvo {

struct ExperimentConfig {
  OscillatorConfig oscillator{};
  HpteaOrderPolynomial order{};

  struct Reservoir {
    std::size_t n_nodes = 24;
    double dt_node_ns = 50.0;
    NodeModel model = NodeModel::Lotea;
    MaskScheme mask = MaskScheme::BinaryPm1;
    double s_floor = kDefaultSFloor;
    double ridge = 0.0;
    std::uint64_t seed = 0;
    bool noise_per_sample = false;  // default: one draw per virtual-node slot
    bool reset_each_period = true;
  } reservoir;

  struct Task {
    double i_w_ma = 1.986;
    double delta_v_mv = 150.0;
    double noise_p2p_mv = 50.0;
    std::size_t train_periods = 160;
    std::size_t test_periods = 160;
    std::size_t repetitions = 200;
    NegativeCurrentPolicy negative = NegativeCurrentPolicy::Clamp;
    std::string mnist_dir;
    std::size_t mnist_nodes = 5000;
    MnistMode mnist_mode = MnistMode::Dynamic;
    Activation activation = Activation::StvoSInf;
    double input_gain = 0.0;
    std::size_t pca_components = 44;
  } task;

  struct Sweep {
    SweepVariable variable = SweepVariable::SnrDb;
    std::optional<double> lo;
    std::optional<double> hi;
    std::optional<std::size_t> points;
    std::size_t repetitions = 200;
  } sweep;

  unsigned threads = 0;

  /// Overwrites the fields named in `file`.
  void apply(const KeyValueFile& file);
  void validate() const;

  WaveformTaskParams waveform_params() const;
  MnistTaskParams mnist_params() const;
  SweepSpec sweep_spec() const;

  /// Every resolved key as "<prefix>[section] key = value" lines, re-parseable
  /// once the prefix is stripped.
  void describe(std::ostream& out, const std::string& prefix = "# ") const;
};

ExperimentConfig load_experiment_config(const std::string& path);

const char* node_model_name(NodeModel m);
NodeModel parse_node_model(const std::string& name);
const char* mask_scheme_name(MaskScheme m);
MaskScheme parse_mask_scheme(const std::string& name);
const char* mnist_mode_name(MnistMode m);
MnistMode parse_mnist_mode(const std::string& name);

}  // namespace stvo
