#include "stvo/mnist_task.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ostream>
#include <string>

#include "stvo/errors.hpp"
#include "stvo/parallel.hpp"
#include "stvo/random.hpp"
#include "stvo/readout.hpp"

namespace stvo {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Eigen::MatrixXd one_hot(const std::vector<std::uint8_t>& labels, std::size_t first,
                        std::size_t count) {
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(count), 10);
  for (std::size_t i = 0; i < count; ++i) t(static_cast<Eigen::Index>(i), labels[first + i]) = 1.0;
  return t;
}

std::size_t count_hits(const Eigen::MatrixXd& scores, const std::vector<std::uint8_t>& labels,
                       std::size_t first) {
  std::size_t hits = 0;
  for (Eigen::Index r = 0; r < scores.rows(); ++r) {
    Eigen::Index best = 0;
    scores.row(r).maxCoeff(&best);
    hits += static_cast<std::uint8_t>(best) == labels[first + static_cast<std::size_t>(r)];
  }
  return hits;
}

bool is_dynamic(const MnistTaskParams& p) {
  return p.mode == MnistMode::Dynamic && p.activation == Activation::StvoSInf;
}

}  // namespace

Eigen::MatrixXd images_to_matrix(const IdxImages& images) {
  const auto n = static_cast<Eigen::Index>(images.count);
  const auto d = static_cast<Eigen::Index>(images.pixels_per_image());
  Eigen::MatrixXd x(n, d);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < d; ++j) {
      x(i, j) = images.pixels[static_cast<std::size_t>(i * d + j)] / 255.0;
    }
  }
  return x;
}

MnistFeatures prepare_mnist_features(const MnistData& data, std::size_t n_components) {
  MnistFeatures f;
  Eigen::MatrixXd train_pix = images_to_matrix(data.train_images);
  f.pca = fit_pca(train_pix, n_components);
  Eigen::MatrixXd train = f.pca.project(train_pix);
  train_pix.resize(0, 0);
  const Eigen::MatrixXd test = f.pca.project(images_to_matrix(data.test_images));
  const FeatureScaler scaler = FeatureScaler::fit(train);
  f.train = scaler.apply(train);
  f.test = scaler.apply(test);
  f.train_labels = data.train_labels.values;
  f.test_labels = data.test_labels.values;
  return f;
}

void MnistTaskParams::validate() const {
  if (n_nodes == 0) throw ConfigError("n_nodes must be >= 1");
  if (chunk_rows == 0) throw ConfigError("chunk_rows must be >= 1");
  if (!(dt_node_ns > 0.0)) throw ConfigError("dt_node must be positive");
  if (!(input_gain >= 0.0)) throw ConfigError("input gain must be non-negative");
  if (!(ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  if (model == NodeModel::Static) throw ConfigError("use mode = static for static nodes");
  oscillator.validate();
}

StateMatrix mnist_states(const Eigen::MatrixXd& features, const Eigen::MatrixXd& mask,
                         const MnistTaskParams& params) {
  if (features.cols() != mask.cols()) {
    throw DimensionError("features have " + std::to_string(features.cols()) +
                         " columns, mask expects " + std::to_string(mask.cols()));
  }
  const Eigen::Index rows = features.rows();
  const Eigen::Index nodes = mask.rows();
  const double gain =
      params.input_gain > 0.0 ? params.input_gain : 1.0 / std::sqrt(double(features.cols()));

  StateMatrix states(rows, nodes + 1);
  states.leftCols(nodes).noalias() = gain * features * mask.transpose();
  states.col(nodes).setOnes();

  // Row blocks are independent; each worker owns a contiguous range.
  constexpr Eigen::Index kBlock = 256;
  const auto n_blocks = static_cast<std::size_t>((rows + kBlock - 1) / kBlock);

  if (!is_dynamic(params)) {
    StaticActivationParams sp{params.oscillator, params.i_w_ma, params.delta_v_mv};
    parallel_for(n_blocks, params.threads, [&](std::size_t b) {
      const Eigen::Index r0 = static_cast<Eigen::Index>(b) * kBlock;
      const Eigen::Index r1 = std::min(rows, r0 + kBlock);
      for (Eigen::Index i = 0; i < nodes; ++i) {
        for (Eigen::Index r = r0; r < r1; ++r) {
          states(r, i) = static_activation(states(r, i), params.activation, sp);
        }
      }
    });
    return states;
  }

  ReservoirConfig rc;
  rc.model = params.model;
  rc.order = params.order;
  rc.s_floor = params.s_floor;
  const Dynamics dynamics = make_dynamics(rc, params.oscillator);
  const double half_swing_ma = params.delta_v_mv / (2.0 * params.oscillator.resistance_ohm);
  const double to_density = 1e-3 / params.oscillator.area_cm2();
  const double dt_s = params.dt_node_ns * 1e-9;
  parallel_for(n_blocks, params.threads, [&](std::size_t b) {
    const Eigen::Index r0 = static_cast<Eigen::Index>(b) * kBlock;
    const Eigen::Index r1 = std::min(rows, r0 + kBlock);
    std::vector<double> s(static_cast<std::size_t>(r1 - r0), params.s_floor);
    for (Eigen::Index i = 0; i < nodes; ++i) {
      for (Eigen::Index r = r0; r < r1; ++r) {
        const double x = std::clamp(states(r, i), -1.0, 1.0);
        const double current = std::max(0.0, params.i_w_ma + x * half_swing_ma);
        double& sr = s[static_cast<std::size_t>(r - r0)];
        sr = dynamics.step(sr, current * to_density, dt_s);
        states(r, i) = sr;
      }
    }
  });
  return states;
}

MnistResult run_mnist_task(const MnistFeatures& features, const MnistTaskParams& params) {
  params.validate();
  const auto t_start = Clock::now();
  const auto k = static_cast<std::size_t>(features.train.cols());
  const Eigen::MatrixXd mask =
      make_mask(params.n_nodes, k, params.mask_scheme,
                derive_seed(params.seed, {static_cast<std::uint64_t>(SeedRole::Mask)}));
  const auto p = static_cast<Eigen::Index>(params.n_nodes) + 1;

  MnistResult result;
  NormalEquations normal(p, 10);
  const auto n_train = static_cast<std::size_t>(features.train.rows());
  double state_s = 0.0;
  for (std::size_t r0 = 0; r0 < n_train; r0 += params.chunk_rows) {
    const std::size_t count = std::min(params.chunk_rows, n_train - r0);
    const auto t0 = Clock::now();
    const StateMatrix s = mnist_states(
        features.train.middleRows(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(count)),
        mask, params);
    state_s += seconds_since(t0);
    normal.accumulate(s, one_hot(features.train_labels, r0, count));
  }
  auto t0 = Clock::now();
  const ReadoutWeights w = normal.solve(params.ridge);
  result.solve_seconds = seconds_since(t0);

  auto evaluate = [&](const Eigen::MatrixXd& f, const std::vector<std::uint8_t>& labels) {
    std::size_t hits = 0;
    const auto n = static_cast<std::size_t>(f.rows());
    for (std::size_t r0 = 0; r0 < n; r0 += params.chunk_rows) {
      const std::size_t count = std::min(params.chunk_rows, n - r0);
      const auto ts = Clock::now();
      const StateMatrix s = mnist_states(
          f.middleRows(static_cast<Eigen::Index>(r0), static_cast<Eigen::Index>(count)), mask,
          params);
      state_s += seconds_since(ts);
      hits += count_hits(infer(s, w), labels, r0);
    }
    return 100.0 * static_cast<double>(hits) / static_cast<double>(n);
  };
  result.test_accuracy_pct = evaluate(features.test, features.test_labels);
  result.state_seconds = state_s;
  result.total_seconds = seconds_since(t_start);
  return result;
}

double linear_baseline_accuracy(const MnistFeatures& features) {
  const Eigen::Index k = features.train.cols();
  auto with_bias = [k](const Eigen::MatrixXd& f) {
    Eigen::MatrixXd x(f.rows(), k + 1);
    x.leftCols(k) = f;
    x.col(k).setOnes();
    return x;
  };
  NormalEquations normal(k + 1, 10);
  normal.accumulate(with_bias(features.train),
                    one_hot(features.train_labels, 0, features.train_labels.size()));
  const ReadoutWeights w = normal.solve();
  const std::size_t hits = count_hits(infer(with_bias(features.test), w), features.test_labels, 0);
  return 100.0 * static_cast<double>(hits) / static_cast<double>(features.test_labels.size());
}

std::vector<MnistSweepRow> activation_sweep(
    const MnistFeatures& features, const std::vector<std::size_t>& node_counts,
    const std::vector<Activation>& activations, std::size_t repetitions,
    const MnistTaskParams& base, const std::function<void(const MnistSweepRow&)>& on_row) {
  if (!std::is_sorted(node_counts.begin(), node_counts.end())) {
    throw ConfigError("node counts must be sorted ascending");
  }
  if (repetitions == 0) throw ConfigError("repetitions must be >= 1");
  std::vector<MnistSweepRow> rows;
  for (std::size_t n : node_counts) {
    for (Activation a : activations) {
      for (std::size_t r = 0; r < repetitions; ++r) {
        MnistTaskParams p = base;
        p.n_nodes = n;
        p.activation = a;
        p.seed = base.seed + r;
        const MnistResult res = run_mnist_task(features, p);
        MnistSweepRow row{n, a, p.mode, p.seed, res.test_accuracy_pct, res.total_seconds};
        rows.push_back(row);
        if (on_row) on_row(row);
      }
    }
  }
  return rows;
}

void write_mnist_csv_header(std::ostream& out) {
  out << "node_count,activation,seed,accuracy_pct,wallclock_s\n";
}

void write_mnist_csv_row(std::ostream& out, const MnistSweepRow& row) {
  std::string name = activation_name(row.activation);
  if (row.activation == Activation::StvoSInf && row.mode == MnistMode::Dynamic) name += "-dynamic";
  out << row.node_count << ',' << name << ',' << row.seed << ',' << row.accuracy_pct << ','
      << row.wallclock_s << '\n';
}

const char* activation_name(Activation a) {
  switch (a) {
    case Activation::Identity: return "identity";
    case Activation::ReLU: return "relu";
    case Activation::Sigmoid: return "sigmoid";
    case Activation::StvoSInf: return "stvo";
  }
  return "?";
}

Activation parse_activation(const std::string& name) {
  if (name == "identity") return Activation::Identity;
  if (name == "relu") return Activation::ReLU;
  if (name == "sigmoid") return Activation::Sigmoid;
  if (name == "stvo") return Activation::StvoSInf;
  throw ConfigError("unknown activation '" + name + "' (identity, relu, sigmoid, stvo)");
}

}  // namespace stvo
