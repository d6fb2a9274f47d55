#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "stvo/errors.hpp"
#include "stvo/scoring.hpp"

using namespace stvo;
using Catch::Matchers::WithinAbs;

TEST_CASE("tau-wise accuracy") {
  const std::vector<double> t(8, 1.0);
  const std::vector<double> all{0.5, 1, 2, 0.1, 0.3, 0.9, 1.1, 0.01};
  CHECK(score_tw(all, t) == 100.0);
  const std::vector<double> six{0.5, 1, 2, 0.1, 0.3, 0.9, -1.1, -0.01};
  CHECK(score_tw(six, t) == 75.0);
  // Score 0 is read as +1.
  const std::vector<double> zeros(8, 0.0);
  CHECK(score_tw(zeros, t) == 100.0);
  const std::vector<double> neg(8, -1.0);
  CHECK(score_tw(zeros, neg) == 0.0);
  CHECK_THROWS_AS(score_tw(six, std::vector<double>(7, 1.0)), DimensionError);
}

TEST_CASE("winner-takes-all accuracy") {
  std::vector<double> s{0.9, 0.9, 0.9, 0.9, 0.9, -0.1, -0.1, -0.1};
  const std::vector<double> plus(8, 1.0);
  CHECK(score_tw(s, plus) == 62.5);
  CHECK(score_wta(s, plus) == 100.0);
  for (double& v : s) v = -v;
  const std::vector<double> minus(8, -1.0);
  CHECK(score_wta(s, minus) == 100.0);
  CHECK_THROWS_AS(score_wta(std::vector<double>(7, 1.0), std::vector<double>(7, 1.0)),
                  DimensionError);
}

TEST_CASE("WTA equals TW for per-period constant scores") {
  std::mt19937_64 gen(1);
  std::normal_distribution<double> n;
  std::vector<double> s;
  std::vector<double> t;
  for (int p = 0; p < 50; ++p) {
    const double v = n(gen);
    const double target = p % 2 == 0 ? 1.0 : -1.0;
    for (int k = 0; k < 8; ++k) {
      s.push_back(v);
      t.push_back(target);
    }
  }
  CHECK(score_wta(s, t) == score_tw(s, t));
}

TEST_CASE("rmse examples") {
  const std::vector<double> t{1, -1, 1, -1, 1, -1, 1, -1};
  CHECK(rmse(t, t) == 0.0);
  CHECK(rmse(t, std::vector<double>(8, 0.0)) == 1.0);
  std::vector<double> shifted = t;
  for (double& v : shifted) v += 0.5;
  CHECK_THAT(rmse(t, shifted), WithinAbs(0.5, 1e-15));
  CHECK(rmse_wta(std::vector<double>(8, 0.0), std::vector<double>(8, 1.0)) == 1.0);
}

TEST_CASE("rmse under a constant shift") {
  std::mt19937_64 gen(2);
  std::normal_distribution<double> n;
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<double> t(64);
    std::vector<double> p(64);
    double mean_err = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
      t[i] = n(gen);
      p[i] = n(gen);
      mean_err += p[i] - t[i];
    }
    mean_err /= static_cast<double>(t.size());
    const double r0 = rmse(t, p);
    const double delta = n(gen);
    for (double& v : p) v += delta;
    const double expect = std::sqrt(r0 * r0 + delta * delta + 2.0 * delta * mean_err);
    CHECK_THAT(rmse(t, p), WithinAbs(expect, 1e-12));
  }
}

TEST_CASE("score_all bundles the metrics") {
  const std::vector<double> s{0.9, 0.9, 0.9, 0.9, 0.9, -0.1, -0.1, -0.1};
  const std::vector<double> t(8, 1.0);
  const auto m = score_all(s, t);
  CHECK(m.acc_tw == score_tw(s, t));
  CHECK(m.acc_wta == score_wta(s, t));
  CHECK(m.rmse_tw == rmse(t, s));
  CHECK(m.rmse_wta == rmse_wta(s, t));
}
