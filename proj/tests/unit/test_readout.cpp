#include <catch_amalgamated.hpp>

#include <limits>
#include <random>

#include <Eigen/Dense>

#include "stvo/errors.hpp"
#include "stvo/readout.hpp"

using namespace stvo;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXd random_matrix(Eigen::Index r, Eigen::Index c, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> n;
  Eigen::MatrixXd m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = n(gen);
  return m;
}

double residual(const Eigen::MatrixXd& s, const Eigen::MatrixXd& t, const Eigen::MatrixXd& w) {
  return (s * w.transpose() - t).squaredNorm();
}

}  // namespace

TEST_CASE("square invertible system is solved exactly") {
  const auto s = random_matrix(6, 6, 1);
  const auto t = random_matrix(6, 2, 2);
  const auto w = train_readout(s, t);
  CHECK(w.values.rows() == 2);
  CHECK(w.values.cols() == 6);
  CHECK((infer(s, w) - t).norm() < 1e-8);
}

TEST_CASE("duplicated column gives the minimum-norm solution") {
  Eigen::MatrixXd s(5, 3);
  s << 1, 2, 2,
       3, 1, 1,
       0, 4, 4,
       2, 2, 2,
       5, 1, 1;
  const auto t = random_matrix(5, 1, 3);
  const auto w = train_readout(s, t);
  // Weight is split evenly between the identical columns.
  CHECK_THAT(w.values(0, 1), WithinAbs(w.values(0, 2), 1e-10));
  // Oracle: least squares on the reduced problem, then split.
  Eigen::MatrixXd reduced(5, 2);
  reduced << s.col(0), s.col(1);
  const Eigen::VectorXd r = reduced.colPivHouseholderQr().solve(t);
  CHECK_THAT(w.values(0, 0), WithinAbs(r(0), 1e-10));
  CHECK_THAT(w.values(0, 1), WithinAbs(0.5 * r(1), 1e-10));
  // Any other minimiser differs by a null-space vector and is longer.
  for (double shift : {-1.0, -0.1, 0.1, 1.0}) {
    Eigen::MatrixXd alt = w.values;
    alt(0, 1) += shift;
    alt(0, 2) -= shift;
    CHECK_THAT(residual(s, t, alt), WithinAbs(residual(s, t, w.values), 1e-9));
    CHECK(alt.norm() > w.values.norm());
  }
}

TEST_CASE("least-squares optimality") {
  const auto s = random_matrix(40, 8, 4);
  const auto t = random_matrix(40, 3, 5);
  const auto w = train_readout(s, t);
  const double best = residual(s, t, w.values);
  for (int i = 0; i < 100; ++i) {
    const Eigen::MatrixXd other = w.values + 0.1 * random_matrix(3, 8, 100 + i);
    CHECK(residual(s, t, other) >= best);
  }
  // Normal equations hold.
  CHECK((s.transpose() * (s * w.values.transpose() - t)).norm() < 1e-9);
}

TEST_CASE("ridge shrinks weights") {
  const auto s = random_matrix(30, 5, 6);
  const auto t = random_matrix(30, 1, 7);
  const double n0 = train_readout(s, t).values.norm();
  const double n1 = train_readout(s, t, 1.0).values.norm();
  const double n2 = train_readout(s, t, 1e12).values.norm();
  CHECK(n1 < n0);
  CHECK(n2 < 1e-9);
  CHECK((train_readout(s, t, 1e-12).values - train_readout(s, t).values).norm() < 1e-9);
}

TEST_CASE("readout errors") {
  const auto s = random_matrix(4, 3, 8);
  CHECK_THROWS_AS(train_readout(s, random_matrix(5, 1, 9)), DimensionError);
  CHECK_THROWS_AS(train_readout(Eigen::MatrixXd::Zero(4, 3), random_matrix(4, 1, 9)),
                  NumericError);
  Eigen::MatrixXd bad = s;
  bad(1, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(train_readout(bad, random_matrix(4, 1, 9)), NumericError);
  CHECK_THROWS_AS(train_readout(s, random_matrix(4, 1, 9), -1.0), ConfigError);
  ReadoutWeights w{Eigen::MatrixXd::Zero(1, 3)};
  CHECK(infer(s, w).isZero());
  CHECK_THROWS_AS(infer(random_matrix(4, 2, 1), w), DimensionError);
}

TEST_CASE("single-sample system") {
  Eigen::MatrixXd s(1, 3);
  s << 1, 2, 2;
  Eigen::MatrixXd t(1, 1);
  t << 9;
  const auto w = train_readout(s, t);
  CHECK_THAT((s * w.values.transpose())(0, 0), WithinAbs(9.0, 1e-12));
  CHECK_THAT(w.values.norm(), WithinAbs(9.0 / 3.0, 1e-12));
}

TEST_CASE("streaming normal equations match the direct solve") {
  const auto s = random_matrix(300, 12, 10);
  const auto t = random_matrix(300, 4, 11);
  NormalEquations ne(12, 4);
  ne.accumulate(s.topRows(100), t.topRows(100));
  ne.accumulate(s.bottomRows(200), t.bottomRows(200));
  CHECK(ne.rows_seen() == 300);
  CHECK((ne.solve().values - train_readout(s, t).values).norm() < 1e-9);
  CHECK((ne.solve(0.5).values - train_readout(s, t, 0.5).values).norm() < 1e-9);
  CHECK_THROWS_AS(ne.accumulate(random_matrix(3, 11, 1), random_matrix(3, 4, 1)), DimensionError);
}

TEST_CASE("streaming pseudo-inverse on rank-deficient states") {
  Eigen::MatrixXd s = random_matrix(50, 6, 12);
  s.col(5) = s.col(4);
  s.col(3) = 2.0 * s.col(0) - s.col(1);
  const auto t = random_matrix(50, 2, 13);
  NormalEquations ne(6, 2);
  ne.accumulate(s, t);
  CHECK((ne.solve().values - train_readout(s, t).values).norm() < 1e-8);
  NormalEquations empty(6, 2);
  CHECK_THROWS_AS(empty.solve(), NumericError);
}
