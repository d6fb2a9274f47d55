#pragma once

// MNIST through PCA features and a time-multiplexed reservoir.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "stvo/dynamics.hpp"
#include "stvo/idx.hpp"
#include "stvo/pca.hpp"
#include "stvo/reservoir.hpp"

namespace stvo {

/// PCA features scaled to [-1, 1] with the training min/max.
struct MnistFeatures {
  PcaModel pca;
  Eigen::MatrixXd train;  // n_train x k
  Eigen::MatrixXd test;   // n_test x k
  std::vector<std::uint8_t> train_labels;
  std::vector<std::uint8_t> test_labels;
};

/// Pixels are mapped to [0, 1] before the PCA.
Eigen::MatrixXd images_to_matrix(const IdxImages& images);
MnistFeatures prepare_mnist_features(const MnistData& data, std::size_t n_components = 44);

// Only affects the StvoSInf activation: Static uses the s_inf curve, Dynamic
// evolves the oscillator through the n_nodes slots of each image. The other
// activations are always static.
enum class MnistMode { Static, Dynamic };

struct MnistTaskParams {
  std::size_t n_nodes = 5000;
  MnistMode mode = MnistMode::Dynamic;
  Activation activation = Activation::StvoSInf;
  NodeModel model = NodeModel::Lotea;  // dynamic mode only
  HpteaOrderPolynomial order{};
  OscillatorConfig oscillator{};
  double i_w_ma = 1.986;
  double delta_v_mv = 150.0;
  double dt_node_ns = 50.0;
  double s_floor = kDefaultSFloor;
  MaskScheme mask_scheme = MaskScheme::BinaryPm1;
  // Pre-activation = gain * mask * features; 0 selects 1 / sqrt(n_features).
  double input_gain = 0.0;
  double ridge = 0.0;
  std::uint64_t seed = 0;
  std::size_t chunk_rows = 5000;
  unsigned threads = 0;

  void validate() const;
};

struct MnistResult {
  double test_accuracy_pct = 0.0;
  double state_seconds = 0.0;  // reservoir evaluation, train + test
  double solve_seconds = 0.0;  // readout solve
  double total_seconds = 0.0;
};

/// Node states for a block of feature rows (rows x (n_nodes + 1)).
StateMatrix mnist_states(const Eigen::MatrixXd& features, const Eigen::MatrixXd& mask,
                         const MnistTaskParams& params);

MnistResult run_mnist_task(const MnistFeatures& features, const MnistTaskParams& params);

/// Plain linear least squares on the features plus a bias, argmax decision.
double linear_baseline_accuracy(const MnistFeatures& features);

struct MnistSweepRow {
  std::size_t node_count = 0;
  Activation activation = Activation::Identity;
  MnistMode mode = MnistMode::Static;
  std::uint64_t seed = 0;
  double accuracy_pct = 0.0;
  double wallclock_s = 0.0;
};

/// Runs every (node count, activation, repetition). Repetition r uses seed
/// base.seed + r. `on_row` (optional) sees each row as soon as it finishes.
std::vector<MnistSweepRow> activation_sweep(
    const MnistFeatures& features, const std::vector<std::size_t>& node_counts,
    const std::vector<Activation>& activations, std::size_t repetitions,
    const MnistTaskParams& base, const std::function<void(const MnistSweepRow&)>& on_row = {});

/// Columns: node_count, activation, seed, accuracy_pct, wallclock_s.
void write_mnist_csv_header(std::ostream& out);
void write_mnist_csv_row(std::ostream& out, const MnistSweepRow& row);

const char* activation_name(Activation a);
/// identity | relu | sigmoid | stvo. Throws ConfigError otherwise.
Activation parse_activation(const std::string& name);

}  // namespace stvo
