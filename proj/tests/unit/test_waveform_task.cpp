#include <catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>

#include "stvo/errors.hpp"
#include "stvo/waveform_task.hpp"

using namespace stvo;
using Catch::Matchers::WithinAbs;

TEST_CASE("dataset composition") {
  const auto ds = make_waveform_dataset(160, 160, 7);
  REQUIRE(ds.train.size() == 160);
  REQUIRE(ds.test.size() == 160);
  for (std::size_t i = 0; i < ds.train.size(); ++i) {
    CHECK(ds.train[i].label == (i % 2 == 0 ? WaveformClass::Sine : WaveformClass::Square));
  }
  const auto sines = std::count_if(ds.test.begin(), ds.test.end(),
                                   [](const auto& p) { return p.label == WaveformClass::Sine; });
  CHECK(sines == 80);
  bool alternating = true;
  for (std::size_t i = 0; i < ds.test.size(); ++i) {
    alternating &= ds.test[i].label == ds.train[i].label;
  }
  CHECK_FALSE(alternating);

  const auto again = make_waveform_dataset(160, 160, 7);
  const auto other = make_waveform_dataset(160, 160, 8);
  auto labels = [](const std::vector<WaveformPeriod>& v) {
    std::vector<WaveformClass> out;
    for (const auto& p : v) out.push_back(p.label);
    return out;
  };
  CHECK(labels(again.test) == labels(ds.test));
  CHECK(labels(other.test) != labels(ds.test));

  const auto samples = period_samples(ds.train);
  const auto targets = period_targets(ds.train);
  CHECK(samples.size() == 160 * 8);
  CHECK(targets.size() == 160 * 8);
  CHECK(targets[0] == 1.0);
  CHECK(targets[8] == -1.0);
  CHECK(samples[10] == 1.0);
}

TEST_CASE("run is deterministic in the seed") {
  WaveformTaskParams p;
  p.seed = 123;
  const auto a = run_waveform_task(p);
  const auto b = run_waveform_task(p);
  CHECK(a.test.acc_tw == b.test.acc_tw);
  CHECK(a.test.acc_wta == b.test.acc_wta);
  CHECK(a.test.rmse_tw == b.test.rmse_tw);
  CHECK(a.train.rmse_wta == b.train.rmse_wta);
  p.seed = 124;
  const auto c = run_waveform_task(p);
  CHECK(c.test.rmse_tw != a.test.rmse_tw);

  const auto s1 = waveform_seeds(5);
  const auto s2 = waveform_seeds(5);
  CHECK(s1.mask == s2.mask);
  CHECK(s1.mask != s1.noise);
  CHECK(s1.noise != s1.shuffle);
}

TEST_CASE("noiseless drive above I_cr1 separates the classes") {
  WaveformTaskParams p;
  p.i_w_ma = 1.05 * critical_current_1(p.oscillator);
  p.noise_p2p_mv = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    p.seed = seed;
    const auto r = run_waveform_task(p);
    CHECK(r.test.acc_tw == 100.0);
    CHECK(r.test.acc_wta == 100.0);
    CHECK(r.train.acc_wta == 100.0);
  }
}

TEST_CASE("sub-critical drive is at chance") {
  WaveformTaskParams p;
  p.i_w_ma = 1.0;
  for (std::uint64_t seed : {1u, 2u}) {
    p.seed = seed;
    const auto r = run_waveform_task(p);
    for (const auto& m : {r.train, r.test}) {
      CHECK_THAT(m.acc_tw, WithinAbs(50.0, 2.0));
      CHECK_THAT(m.acc_wta, WithinAbs(50.0, 2.0));
      CHECK_THAT(m.rmse_tw, WithinAbs(1.0, 0.01));
      CHECK_THAT(m.rmse_wta, WithinAbs(1.0, 0.01));
    }
  }
}

TEST_CASE("WTA accuracy is at least TW accuracy on average") {
  WaveformTaskParams p;
  double tw = 0.0;
  double wta = 0.0;
  const int runs = 200;
  for (int r = 0; r < runs; ++r) {
    p.seed = derive_seed(99, {static_cast<std::uint64_t>(r)});
    const auto m = run_waveform_task(p).test;
    tw += m.acc_tw;
    wta += m.acc_wta;
    CHECK(m.acc_tw >= 0.0);
    CHECK(m.acc_wta <= 100.0);
  }
  CHECK(wta / runs >= tw / runs);
}

TEST_CASE("parameter validation") {
  WaveformTaskParams p;
  p.model = NodeModel::Static;
  CHECK_THROWS_AS(run_waveform_task(p), ConfigError);
  p = {};
  p.n_nodes = 0;
  CHECK_THROWS_AS(run_waveform_task(p), ConfigError);
}
