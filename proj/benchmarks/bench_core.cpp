#include <benchmark/benchmark.h>

#include <random>

#include <Eigen/Core>

#include "stvo/dynamics.hpp"
#include "stvo/readout.hpp"
#include "stvo/reservoir.hpp"
#include "stvo/signal.hpp"
#include "stvo/waveform_task.hpp"

using namespace stvo;

namespace {

void BM_EvolveLotea(benchmark::State& state) {
  const DynamicalConstants k;
  const double j = 6.3e6;
  double s = 0.1;
  for (auto _ : state) {
    s = evolve_lotea(s, j, 50e-9, k);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EvolveLotea);

void BM_EvolveHptea(benchmark::State& state) {
  const DynamicalConstants k;
  const HpteaOrderPolynomial order({2.2, 1e-8, 0, 0, 0, 0});
  double s = 0.1;
  for (auto _ : state) {
    s = evolve_hptea(s, 6.3e6, 50e-9, k, order);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_EvolveHptea);

void BM_Reservoir(benchmark::State& state) {
  const OscillatorConfig osc;
  auto config = ReservoirConfig::with_mask(static_cast<std::size_t>(state.range(0)), 1,
                                           MaskScheme::BinaryPm1, 1);
  std::vector<double> series(1280);
  for (std::size_t i = 0; i < series.size(); ++i) series[i] = (i % 8 < 4) ? 1.0 : -1.0;
  Rng rng(2);
  const auto drive = compose_input(expand_series(series, config), 1.986, 150.0, 50.0,
                                   osc.resistance_ohm, rng, {50.0, 1, NegativeCurrentPolicy::Clamp});
  for (auto _ : state) {
    auto states = run_reservoir(drive, config, osc);
    benchmark::DoNotOptimize(states.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(drive.size()));
}
BENCHMARK(BM_Reservoir)->Arg(24)->Arg(100);

void BM_WaveformTask(benchmark::State& state) {
  WaveformTaskParams p;
  for (auto _ : state) {
    auto r = run_waveform_task(p);
    benchmark::DoNotOptimize(r.test.acc_wta);
    ++p.seed;
  }
}
BENCHMARK(BM_WaveformTask)->Unit(benchmark::kMillisecond);

Eigen::MatrixXd random_states(Eigen::Index rows, Eigen::Index cols) {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = u(gen);
  return m;
}

void BM_ReadoutPinv(benchmark::State& state) {
  const auto cols = state.range(0);
  const auto s = random_states(1280, cols);
  const auto t = random_states(1280, 1);
  for (auto _ : state) {
    auto w = train_readout(s, t);
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_ReadoutPinv)->Arg(25)->Arg(101)->Unit(benchmark::kMicrosecond);

void BM_NormalEquations(benchmark::State& state) {
  const auto cols = state.range(0);
  const auto s = random_states(4 * cols, cols);
  const auto t = random_states(4 * cols, 10);
  for (auto _ : state) {
    NormalEquations ne(cols, 10);
    ne.accumulate(s, t);
    auto w = ne.solve();
    benchmark::DoNotOptimize(w.values.data());
  }
}
BENCHMARK(BM_NormalEquations)->Arg(200)->Arg(800)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
