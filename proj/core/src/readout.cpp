#include "stvo/readout.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/QR>
#include <lapacke.h>

#include "stvo/errors.hpp"

namespace stvo {
namespace {

void check_finite(const Eigen::MatrixXd& m, const char* what) {
  if (!m.allFinite()) throw NumericError(std::string(what) + " contains non-finite values");
}

std::string shape(const Eigen::MatrixXd& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

ReadoutWeights train_readout(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets,
                             double ridge) {
  if (states.rows() != targets.rows()) {
    throw DimensionError("states " + shape(states) + " and targets " + shape(targets) +
                         " differ in row count");
  }
  if (states.rows() == 0 || states.cols() == 0) throw DimensionError("empty state matrix");
  if (!(ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  check_finite(states, "state matrix");
  check_finite(targets, "target matrix");

  Eigen::MatrixXd wt;
  if (ridge == 0.0) {
    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(states);
    if (cod.rank() == 0) {
      throw NumericError("state matrix " + shape(states) + " has numerical rank 0");
    }
    wt = cod.solve(targets);
  } else {
    Eigen::MatrixXd gram = states.transpose() * states;
    gram.diagonal().array() += ridge;
    wt = gram.ldlt().solve(states.transpose() * targets);
  }
  ReadoutWeights weights{wt.transpose()};
  check_finite(weights.values, "readout weights");
  return weights;
}

Eigen::MatrixXd infer(const Eigen::MatrixXd& states, const ReadoutWeights& weights) {
  if (states.cols() != weights.values.cols()) {
    throw DimensionError("states " + shape(states) + " do not match weights " +
                         shape(weights.values));
  }
  return states * weights.values.transpose();
}

NormalEquations::NormalEquations(Eigen::Index n_features, Eigen::Index n_outputs)
    : gram_(Eigen::MatrixXd::Zero(n_features, n_features)),
      cross_(Eigen::MatrixXd::Zero(n_features, n_outputs)) {
  if (n_features < 1 || n_outputs < 1) throw DimensionError("normal equations need a positive size");
}

void NormalEquations::accumulate(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets) {
  if (states.cols() != gram_.cols() || targets.cols() != cross_.cols() ||
      states.rows() != targets.rows()) {
    throw DimensionError("chunk shapes " + shape(states) + " / " + shape(targets) +
                         " do not match the accumulator");
  }
  if (states.rows() == 0) return;
  check_finite(states, "state chunk");
  gram_.selfadjointView<Eigen::Lower>().rankUpdate(states.transpose());
  cross_.noalias() += states.transpose() * targets;
  rows_ += states.rows();
}

ReadoutWeights NormalEquations::solve(double ridge) const {
  if (rows_ == 0) throw NumericError("no rows accumulated");
  if (!(ridge >= 0.0)) throw ConfigError("ridge must be non-negative");
  const Eigen::Index p = gram_.rows();
  Eigen::MatrixXd wt;

  if (ridge > 0.0) {
    Eigen::MatrixXd a = gram_;
    a.diagonal().array() += ridge;
    Eigen::LLT<Eigen::MatrixXd, Eigen::Lower> llt(a);
    if (llt.info() != Eigen::Success) {
      throw NumericError("regularized Gram matrix of size " + std::to_string(p) +
                         " is not positive definite");
    }
    wt = llt.solve(cross_);
  } else {
    // Pseudo-inverse of the Gram matrix through its eigen-decomposition.
    Eigen::MatrixXd v = gram_;
    Eigen::VectorXd lambda(p);
    const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', static_cast<lapack_int>(p),
                                           v.data(), static_cast<lapack_int>(p), lambda.data());
    if (info != 0) {
      throw NumericError("eigen-decomposition of the " + std::to_string(p) +
                         "x" + std::to_string(p) + " Gram matrix failed (info " +
                         std::to_string(info) + ")");
    }
    const double lmax = lambda.maxCoeff();
    const double threshold =
        lmax * static_cast<double>(p) * std::numeric_limits<double>::epsilon();
    Eigen::VectorXd inv = Eigen::VectorXd::Zero(p);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < p; ++i) {
      if (lambda(i) > threshold) {
        inv(i) = 1.0 / lambda(i);
        ++rank;
      }
    }
    if (rank == 0) {
      throw NumericError("Gram matrix of size " + std::to_string(p) + " has numerical rank 0");
    }
    wt = v * (inv.asDiagonal() * (v.transpose() * cross_));
  }
  ReadoutWeights weights{wt.transpose()};
  check_finite(weights.values, "readout weights");
  return weights;
}

}  // namespace stvo
