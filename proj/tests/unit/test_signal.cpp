#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <sstream>
#include <vector>

#include "stvo/errors.hpp"
#include "stvo/random.hpp"
#include "stvo/signal.hpp"

using namespace stvo;
using Catch::Matchers::ContainsSubstring;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace {
constexpr double kR = 140.6;
}

TEST_CASE("waveform periods") {
  const auto sine = WaveformPeriod::sine();
  const auto square = WaveformPeriod::square();
  CHECK(sine.samples[0] == 0.0);
  CHECK(sine.samples[4] == 0.0);
  CHECK(sine.samples[2] == 1.0);
  CHECK(sine.samples[6] == -1.0);
  CHECK_THAT(sine.samples[1], WithinAbs(std::sqrt(0.5), 1e-15));
  const std::array<double, 8> sq{1, 1, 1, 1, -1, -1, -1, -1};
  CHECK(square.samples == sq);
  double sum_sine = 0.0;
  double sum_square = 0.0;
  for (std::size_t k = 0; k < 8; ++k) {
    sum_sine += sine.samples[k];
    sum_square += square.samples[k];
  }
  CHECK_THAT(sum_sine, WithinAbs(0.0, 1e-15));
  CHECK(sum_square == 0.0);
  CHECK(sine.target() == 1.0);
  CHECK(square.target() == -1.0);
}

TEST_CASE("compose_input without noise") {
  Rng rng(1);
  const std::vector<double> zeros(10, 0.0);
  auto flat = compose_input(zeros, 1.986, 150.0, 0.0, kR, rng);
  for (double c : flat.currents_ma) CHECK(c == 1.986);

  const std::vector<double> peak{1.0, -1.0};
  auto d = compose_input(peak, 1.986, 150.0, 0.0, kR, rng);
  CHECK_THAT(d.currents_ma[0], WithinAbs(1.986 + 75.0 / kR, 1e-12));
  CHECK_THAT(d.currents_ma[0], WithinAbs(2.519, 5e-4));
  CHECK_THAT(d.currents_ma[1], WithinAbs(1.986 - 75.0 / kR, 1e-12));
}

TEST_CASE("compose_input rejects out-of-range values and negative currents") {
  Rng rng(1);
  const std::vector<double> big{1.5};
  CHECK_THROWS_AS(compose_input(big, 1.986, 150.0, 0.0, kR, rng), DomainError);

  const std::vector<double> low{-1.0};
  ComposeOptions reject;
  reject.negative = NegativeCurrentPolicy::Reject;
  CHECK_THROWS_WITH(compose_input(low, 0.1, 150.0, 0.0, kR, rng, reject),
                    ContainsSubstring("index 0"));
  ComposeOptions clamp;
  clamp.negative = NegativeCurrentPolicy::Clamp;
  CHECK(compose_input(low, 0.1, 150.0, 0.0, kR, rng, clamp).currents_ma[0] == 0.0);
  CHECK_THROWS_AS(compose_input(low, 1.0, 150.0, -1.0, kR, rng), ConfigError);
  CHECK_THROWS_AS(compose_input(low, 1.0, 150.0, 0.0, 0.0, rng), ConfigError);
}

TEST_CASE("noise follows the 6-sigma rule") {
  const std::size_t n = 1'000'000;
  const std::vector<double> zeros(n, 0.0);
  auto d = compose_input(zeros, 1.986, 150.0, NoiseSpec{50.0, 42}, kR);
  const double half_band = 25.0 / kR;
  std::size_t inside = 0;
  double sum = 0.0;
  double sum2 = 0.0;
  for (double c : d.currents_ma) {
    const double e = c - 1.986;
    sum += e;
    sum2 += e * e;
    if (std::abs(e) <= half_band) ++inside;
  }
  const double coverage = static_cast<double>(inside) / n;
  CHECK_THAT(coverage, WithinAbs(0.9973, 0.001));
  const double mean = sum / n;
  const double sd = std::sqrt(sum2 / n - mean * mean);
  CHECK_THAT(sd, WithinRel(50.0 / 6.0 / kR, 0.01));
  CHECK(std::abs(mean) < 5.0 * sd / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("compose_input is deterministic and noise_hold shares draws") {
  const std::vector<double> v(48, 0.25);
  auto a = compose_input(v, 1.986, 150.0, NoiseSpec{50.0, 9}, kR);
  auto b = compose_input(v, 1.986, 150.0, NoiseSpec{50.0, 9}, kR);
  auto c = compose_input(v, 1.986, 150.0, NoiseSpec{50.0, 10}, kR);
  CHECK(a.currents_ma == b.currents_ma);
  CHECK(a.currents_ma != c.currents_ma);

  ComposeOptions hold;
  hold.noise_hold = 24;
  auto h = compose_input(v, 1.986, 150.0, NoiseSpec{50.0, 9}, kR, hold);
  for (std::size_t i = 1; i < 24; ++i) CHECK(h.currents_ma[i] == h.currents_ma[0]);
  CHECK(h.currents_ma[24] != h.currents_ma[0]);
}

TEST_CASE("swing scales with delta V") {
  const std::vector<double> v{0.3, -0.7, 1.0};
  Rng rng(0);
  auto one = compose_input(v, 2.0, 100.0, 0.0, kR, rng);
  const std::vector<double> half{0.15, -0.35, 0.5};
  auto two = compose_input(half, 2.0, 200.0, 0.0, kR, rng);
  for (std::size_t i = 0; i < v.size(); ++i) {
    CHECK_THAT(one.currents_ma[i], WithinRel(two.currents_ma[i], 1e-14));
  }
}

TEST_CASE("drive CSV") {
  DriveSignal d;
  d.currents_ma = {1.0, 2.0};
  d.dt_ns = 50.0;
  std::ostringstream out;
  d.write_csv(out);
  CHECK(out.str() == "index,time_ns,current_mA\n0,0,1\n1,50,2\n");
}

TEST_CASE("power bookkeeping at the base case") {
  CHECK_THAT(noise_sigma(50.0, kR), WithinRel(7.028e-4, 1e-3));
  CHECK(noise_sigma(0.0, kR) == 0.0);
  CHECK_THAT(noise_power(50.0, kR).dbm(), WithinAbs(-33.1, 0.1));
  CHECK_THAT(signal_power(1.986, kR).watts, WithinRel(5.546e-4, 1e-3));
  CHECK_THAT(snr_db(1.986, kR, 50.0), WithinAbs(30.5, 0.05));
  CHECK_THAT(snr_db(1.001 * 1.891, kR, 50.0), WithinAbs(30.1, 0.05));
  CHECK_THAT(snr_db(1.986, kR, 100.0), WithinAbs(snr_db(1.986, kR, 50.0) - 20 * std::log10(2.0), 1e-12));
  CHECK(std::isinf(snr_db(1.986, kR, 0.0)));
}

TEST_CASE("SNR formulations agree") {
  std::mt19937_64 gen(8);
  std::uniform_real_distribution<double> ui(0.5, 3.5);
  std::uniform_real_distribution<double> ur(50.0, 500.0);
  std::uniform_real_distribution<double> un(1.0, 500.0);
  for (int i = 0; i < 200; ++i) {
    const double iw = ui(gen);
    const double r = ur(gen);
    const double dv = un(gen);
    const double from_db = snr_db(iw, r, dv);
    const double from_ratio = 10.0 * std::log10(snr_ratio(iw, r, dv));
    const double from_powers =
        10.0 * std::log10(signal_power(iw, r).watts / noise_power(dv, r).watts);
    CHECK_THAT(from_ratio, WithinAbs(from_db, 1e-10));
    CHECK_THAT(from_powers, WithinAbs(from_db, 1e-10));
    CHECK_THAT(signal_power(iw, r).db() - noise_power(dv, r).db(), WithinAbs(from_db, 1e-10));
  }
}

TEST_CASE("noise amplitude for a target SNR") {
  for (double target : {-20.0, 0.0, 22.77, 30.5, 100.0}) {
    const double dv = noise_p2p_for_snr(target, 1.986, kR);
    CHECK_THAT(snr_db(1.986, kR, dv), WithinAbs(target, 1e-9));
  }
  CHECK_THAT(noise_p2p_for_snr(30.5, 1.986, kR), WithinRel(50.0, 1e-3));
  CHECK_THAT(noise_p2p_for_snr(0.0, 1.986, kR), WithinRel(6.0 * kR * 1.986, 1e-14));
}

TEST_CASE("maximum working current") {
  OscillatorConfig osc;
  CHECK_THAT(i_w_max(osc, 150.0, 50.0), WithinAbs(2.622, 0.001));
  CHECK_THAT(i_w_max(osc, 0.0, 0.0), WithinRel(critical_current_2(osc), 1e-15));
  osc.i_cr2_override_ma = 3.548;
  CHECK_THAT(i_w_max(osc, 150.0, 50.0), WithinAbs(2.837, 0.001));
  CHECK_THROWS_AS(i_w_max(osc, 150.0, 1000.0), ConfigError);
}

TEST_CASE("SNR estimator on synthetic traces") {
  Rng rng(77);
  const std::size_t n = 100'000;
  for (double target : {5.0, 15.0, 30.0}) {
    std::vector<double> clean(n);
    std::vector<double> noisy(n);
    double p = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      clean[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / 97.0);
      p += clean[i] * clean[i];
    }
    p /= static_cast<double>(n);
    const double sigma = std::sqrt(p / std::pow(10.0, target / 10.0));
    for (std::size_t i = 0; i < n; ++i) noisy[i] = clean[i] + rng.normal(0.0, sigma);
    CHECK_THAT(estimate_snr(noisy, clean), WithinAbs(target, 0.5));
  }
  const std::vector<double> a{1.0, 2.0};
  const std::vector<double> b{1.0};
  CHECK_THROWS_AS(estimate_snr(a, a), NumericError);
  CHECK_THROWS_AS(estimate_snr(a, b), DimensionError);
}
