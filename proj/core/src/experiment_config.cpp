#include "stvo/experiment_config.hpp"

#include <array>
#include <charconv>
#include <functional>
#include <ostream>
#include <string_view>
#include <vector>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

using Setter = std::function<void(ExperimentConfig&, const std::string&, const std::string&)>;
using Getter = std::function<std::string(const ExperimentConfig&)>;

struct Field {
  std::string_view section;
  std::string_view key;
  Setter set;
  Getter get;
};

// Shortest text that reads back to the same double.
std::string fmt_double(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

std::size_t to_size(const std::string& text, const std::string& where) {
  const long long v = parse_integer(text, where);
  if (v < 0) throw ConfigError(where + ": expected a non-negative integer, got '" + text + "'");
  return static_cast<std::size_t>(v);
}

template <class T>
Field real(std::string_view section, std::string_view key, T ExperimentConfig::*group,
           double T::*member) {
  return {section, key,
          [=](ExperimentConfig& c, const std::string& v, const std::string& w) {
            c.*group.*member = parse_double(v, w);
          },
          [=](const ExperimentConfig& c) { return fmt_double(c.*group.*member); }};
}

template <class T>
Field count(std::string_view section, std::string_view key, T ExperimentConfig::*group,
            std::size_t T::*member) {
  return {section, key,
          [=](ExperimentConfig& c, const std::string& v, const std::string& w) {
            c.*group.*member = to_size(v, w);
          },
          [=](const ExperimentConfig& c) { return std::to_string(c.*group.*member); }};
}

template <class T>
Field flag(std::string_view section, std::string_view key, T ExperimentConfig::*group,
           bool T::*member) {
  return {section, key,
          [=](ExperimentConfig& c, const std::string& v, const std::string& w) {
            c.*group.*member = parse_bool(v, w);
          },
          [=](const ExperimentConfig& c) { return std::string(c.*group.*member ? "true" : "false"); }};
}

Field constant(std::string_view key, double DynamicalConstants::*member) {
  return {"oscillator", key,
          [=](ExperimentConfig& c, const std::string& v, const std::string& w) {
            c.oscillator.constants.*member = parse_double(v, w);
          },
          [=](const ExperimentConfig& c) { return fmt_double(c.oscillator.constants.*member); }};
}

Field coefficient(std::size_t k) {
  static constexpr std::array<std::string_view, 6> names{"c0", "c1", "c2", "c3", "c4", "c5"};
  return {"hptea", names[k],
          [=](ExperimentConfig& c, const std::string& v, const std::string& w) {
            auto coeffs = c.order.coefficients();
            coeffs[k] = parse_double(v, w);
            c.order = HpteaOrderPolynomial(coeffs);
          },
          [=](const ExperimentConfig& c) { return fmt_double(c.order.coefficients()[k]); }};
}

template <class Parse>
Setter wrap(Parse parse) {
  return [parse](ExperimentConfig& c, const std::string& v, const std::string& w) {
    try {
      parse(c, v);
    } catch (const ConfigError& e) {
      throw ConfigError(w + ": " + e.what());
    }
  };
}

const std::vector<Field>& fields() {
  using C = ExperimentConfig;
  static const std::vector<Field> table = [] {
    std::vector<Field> f;
    f.push_back({"oscillator", "diameter_nm",
                 [](C& c, const std::string& v, const std::string& w) {
                   c.oscillator.diameter_nm = parse_double(v, w);
                 },
                 [](const C& c) { return fmt_double(c.oscillator.diameter_nm); }});
    f.push_back({"oscillator", "resistance_ohm",
                 [](C& c, const std::string& v, const std::string& w) {
                   c.oscillator.resistance_ohm = parse_double(v, w);
                 },
                 [](const C& c) { return fmt_double(c.oscillator.resistance_ohm); }});
    f.push_back(constant("a_j", &DynamicalConstants::a_j));
    f.push_back(constant("b_j", &DynamicalConstants::b_j));
    f.push_back(constant("a", &DynamicalConstants::a));
    f.push_back(constant("b", &DynamicalConstants::b));
    f.push_back({"oscillator", "chirality",
                 [](C& c, const std::string& v, const std::string& w) {
                   c.oscillator.constants.chirality = static_cast<int>(parse_integer(v, w));
                 },
                 [](const C& c) { return std::to_string(c.oscillator.constants.chirality); }});
    f.push_back({"oscillator", "i_cr2_override_ma",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "none") {
                     c.oscillator.i_cr2_override_ma.reset();
                   } else {
                     c.oscillator.i_cr2_override_ma = parse_double(v, w);
                   }
                 },
                 [](const C& c) {
                   return c.oscillator.i_cr2_override_ma ? fmt_double(*c.oscillator.i_cr2_override_ma)
                                                         : std::string("none");
                 }});
    for (std::size_t k = 0; k < 6; ++k) f.push_back(coefficient(k));

    f.push_back(count("reservoir", "n_nodes", &C::reservoir, &C::Reservoir::n_nodes));
    f.push_back(real("reservoir", "dt_node_ns", &C::reservoir, &C::Reservoir::dt_node_ns));
    f.push_back({"reservoir", "model",
                 wrap([](C& c, const std::string& v) { c.reservoir.model = parse_node_model(v); }),
                 [](const C& c) { return std::string(node_model_name(c.reservoir.model)); }});
    f.push_back({"reservoir", "mask",
                 wrap([](C& c, const std::string& v) { c.reservoir.mask = parse_mask_scheme(v); }),
                 [](const C& c) { return std::string(mask_scheme_name(c.reservoir.mask)); }});
    f.push_back(real("reservoir", "s_floor", &C::reservoir, &C::Reservoir::s_floor));
    f.push_back(real("reservoir", "ridge", &C::reservoir, &C::Reservoir::ridge));
    f.push_back({"reservoir", "seed",
                 [](C& c, const std::string& v, const std::string& w) {
                   c.reservoir.seed = static_cast<std::uint64_t>(to_size(v, w));
                 },
                 [](const C& c) { return std::to_string(c.reservoir.seed); }});
    f.push_back({"reservoir", "noise_per",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "slot") {
                     c.reservoir.noise_per_sample = false;
                   } else if (v == "sample") {
                     c.reservoir.noise_per_sample = true;
                   } else {
                     throw ConfigError(w + ": noise_per must be 'slot' or 'sample'");
                   }
                 },
                 [](const C& c) {
                   return std::string(c.reservoir.noise_per_sample ? "sample" : "slot");
                 }});
    f.push_back(flag("reservoir", "reset_each_period", &C::reservoir,
                     &C::Reservoir::reset_each_period));

    f.push_back(real("task", "i_w_ma", &C::task, &C::Task::i_w_ma));
    f.push_back(real("task", "delta_v_mv", &C::task, &C::Task::delta_v_mv));
    f.push_back(real("task", "noise_p2p_mv", &C::task, &C::Task::noise_p2p_mv));
    f.push_back(count("task", "train_periods", &C::task, &C::Task::train_periods));
    f.push_back(count("task", "test_periods", &C::task, &C::Task::test_periods));
    f.push_back(count("task", "repetitions", &C::task, &C::Task::repetitions));
    f.push_back({"task", "negative_current",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "clamp") {
                     c.task.negative = NegativeCurrentPolicy::Clamp;
                   } else if (v == "reject") {
                     c.task.negative = NegativeCurrentPolicy::Reject;
                   } else {
                     throw ConfigError(w + ": negative_current must be 'clamp' or 'reject'");
                   }
                 },
                 [](const C& c) {
                   return std::string(c.task.negative == NegativeCurrentPolicy::Clamp ? "clamp"
                                                                                      : "reject");
                 }});
    f.push_back({"task", "mnist_dir",
                 [](C& c, const std::string& v, const std::string&) { c.task.mnist_dir = v; },
                 [](const C& c) { return c.task.mnist_dir.empty() ? std::string("none") : c.task.mnist_dir; }});
    f.push_back(count("task", "mnist_nodes", &C::task, &C::Task::mnist_nodes));
    f.push_back({"task", "mnist_mode",
                 wrap([](C& c, const std::string& v) { c.task.mnist_mode = parse_mnist_mode(v); }),
                 [](const C& c) { return std::string(mnist_mode_name(c.task.mnist_mode)); }});
    f.push_back({"task", "activation",
                 wrap([](C& c, const std::string& v) { c.task.activation = parse_activation(v); }),
                 [](const C& c) { return std::string(activation_name(c.task.activation)); }});
    f.push_back(real("task", "input_gain", &C::task, &C::Task::input_gain));
    f.push_back(count("task", "pca_components", &C::task, &C::Task::pca_components));

    f.push_back({"sweep", "variable",
                 wrap([](C& c, const std::string& v) { c.sweep.variable = parse_sweep_variable(v); }),
                 [](const C& c) { return std::string(sweep_variable_name(c.sweep.variable)); }});
    f.push_back({"sweep", "lo",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "auto") c.sweep.lo.reset(); else c.sweep.lo = parse_double(v, w);
                 },
                 [](const C& c) { return c.sweep.lo ? fmt_double(*c.sweep.lo) : std::string("auto"); }});
    f.push_back({"sweep", "hi",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "auto") c.sweep.hi.reset(); else c.sweep.hi = parse_double(v, w);
                 },
                 [](const C& c) { return c.sweep.hi ? fmt_double(*c.sweep.hi) : std::string("auto"); }});
    f.push_back({"sweep", "points",
                 [](C& c, const std::string& v, const std::string& w) {
                   if (v == "auto") c.sweep.points.reset(); else c.sweep.points = to_size(v, w);
                 },
                 [](const C& c) {
                   return c.sweep.points ? std::to_string(*c.sweep.points) : std::string("auto");
                 }});
    f.push_back(count("sweep", "repetitions", &C::sweep, &C::Sweep::repetitions));
    f.push_back({"sweep", "threads",
                 [](C& c, const std::string& v, const std::string& w) {
                   c.threads = static_cast<unsigned>(to_size(v, w));
                 },
                 [](const C& c) { return std::to_string(c.threads); }});
    return f;
  }();
  return table;
}

}  // namespace

void ExperimentConfig::apply(const KeyValueFile& file) {
  for (const auto& entry : file.entries) {
    const std::string where = file.where(entry);
    bool section_known = false;
    bool done = false;
    for (const auto& f : fields()) {
      if (f.section != entry.section) continue;
      section_known = true;
      if (f.key == entry.key) {
        f.set(*this, entry.value, where);
        done = true;
        break;
      }
    }
    if (!section_known) {
      throw ConfigError(where + ": unknown section [" + entry.section + "]");
    }
    if (!done) {
      throw ConfigError(where + ": unknown key '" + entry.key + "' in [" + entry.section + "]");
    }
  }
}

void ExperimentConfig::validate() const {
  oscillator.validate();
  waveform_params().validate();
  if (task.repetitions == 0 || sweep.repetitions == 0) {
    throw ConfigError("repetitions must be >= 1");
  }
  if (task.pca_components == 0) throw ConfigError("pca_components must be >= 1");
  if (reservoir.model == NodeModel::Hptea) {
    // Admissible drive range of the waveform task.
    const double swing = (task.delta_v_mv + task.noise_p2p_mv) / (2.0 * oscillator.resistance_ohm);
    const double lo = std::max(0.0, task.i_w_ma - swing);
    const double hi = task.i_w_ma + swing;
    order.check_range(current_to_density(lo, oscillator), current_to_density(hi, oscillator));
  }
}

WaveformTaskParams ExperimentConfig::waveform_params() const {
  WaveformTaskParams p;
  p.oscillator = oscillator;
  p.i_w_ma = task.i_w_ma;
  p.delta_v_mv = task.delta_v_mv;
  p.noise_p2p_mv = task.noise_p2p_mv;
  p.n_nodes = reservoir.n_nodes;
  p.dt_node_ns = reservoir.dt_node_ns;
  p.model = reservoir.model;
  p.order = order;
  p.mask_scheme = reservoir.mask;
  p.s_floor = reservoir.s_floor;
  p.ridge = reservoir.ridge;
  p.train_periods = task.train_periods;
  p.test_periods = task.test_periods;
  p.reset_each_period = reservoir.reset_each_period;
  p.noise_hold = reservoir.noise_per_sample ? reservoir.n_nodes : 1;
  p.negative = task.negative;
  p.seed = reservoir.seed;
  return p;
}

MnistTaskParams ExperimentConfig::mnist_params() const {
  MnistTaskParams p;
  p.n_nodes = task.mnist_nodes;
  p.mode = task.mnist_mode;
  p.activation = task.activation;
  p.model = reservoir.model == NodeModel::Static ? NodeModel::Lotea : reservoir.model;
  p.order = order;
  p.oscillator = oscillator;
  p.i_w_ma = task.i_w_ma;
  p.delta_v_mv = task.delta_v_mv;
  p.dt_node_ns = reservoir.dt_node_ns;
  p.s_floor = reservoir.s_floor;
  p.mask_scheme = reservoir.mask;
  p.input_gain = task.input_gain;
  p.ridge = reservoir.ridge;
  p.seed = reservoir.seed;
  p.threads = threads;
  return p;
}

SweepSpec ExperimentConfig::sweep_spec() const {
  SweepSpec s;
  s.variable = sweep.variable;
  s.lo = sweep.lo;
  s.hi = sweep.hi;
  s.points = sweep.points.value_or(default_points(sweep.variable));
  s.repetitions = sweep.repetitions;
  s.base = waveform_params();
  s.threads = threads;
  return s;
}

void ExperimentConfig::describe(std::ostream& out, const std::string& prefix) const {
  std::string_view section;
  for (const auto& f : fields()) {
    if (f.section != section) {
      section = f.section;
      out << prefix << '[' << section << "]\n";
    }
    out << prefix << f.key << " = " << f.get(*this) << '\n';
  }
}

ExperimentConfig load_experiment_config(const std::string& path) {
  ExperimentConfig config;
  config.apply(load_key_value(path));
  return config;
}

const char* node_model_name(NodeModel m) {
  switch (m) {
    case NodeModel::Lotea: return "lotea";
    case NodeModel::Hptea: return "hptea";
    case NodeModel::Static: return "static";
  }
  return "?";
}

NodeModel parse_node_model(const std::string& name) {
  if (name == "lotea") return NodeModel::Lotea;
  if (name == "hptea") return NodeModel::Hptea;
  if (name == "static") return NodeModel::Static;
  throw ConfigError("unknown model '" + name + "' (lotea, hptea, static)");
}

const char* mask_scheme_name(MaskScheme m) {
  return m == MaskScheme::BinaryPm1 ? "pm1" : "uniform";
}

MaskScheme parse_mask_scheme(const std::string& name) {
  if (name == "pm1") return MaskScheme::BinaryPm1;
  if (name == "uniform") return MaskScheme::Uniform;
  throw ConfigError("unknown mask scheme '" + name + "' (pm1, uniform)");
}

const char* mnist_mode_name(MnistMode m) { return m == MnistMode::Static ? "static" : "dynamic"; }

MnistMode parse_mnist_mode(const std::string& name) {
  if (name == "static") return MnistMode::Static;
  if (name == "dynamic") return MnistMode::Dynamic;
  throw ConfigError("unknown mnist mode '" + name + "' (static, dynamic)");
}

}  // namespace stvo
