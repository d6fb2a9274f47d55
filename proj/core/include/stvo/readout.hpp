#pragma once

// Linear readout trained by Moore-Penrose pseudo-inversion.

#include <Eigen/Core>

namespace stvo {

/// n_outputs x n_features, applied as states * values^T.
struct ReadoutWeights {
  Eigen::MatrixXd values;
};

/// Minimum-norm least-squares weights mapping `states` to `targets`
/// (rows = samples). ridge = 0 uses a rank-revealing decomposition of the
/// states; ridge > 0 solves (S^T S + ridge I) W^T = S^T T.
ReadoutWeights train_readout(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets,
                             double ridge = 0.0);

/// states * weights^T. No thresholding.
Eigen::MatrixXd infer(const Eigen::MatrixXd& states, const ReadoutWeights& weights);

/// Streaming normal equations for problems whose state matrix does not fit in
/// memory. ridge = 0 solves with an eigenvalue-thresholded pseudo-inverse of
/// the Gram matrix, which yields the same minimum-norm solution.
class NormalEquations {
 public:
  NormalEquations(Eigen::Index n_features, Eigen::Index n_outputs);

  void accumulate(const Eigen::MatrixXd& states, const Eigen::MatrixXd& targets);
  ReadoutWeights solve(double ridge = 0.0) const;

  Eigen::Index rows_seen() const noexcept { return rows_; }
  const Eigen::MatrixXd& gram() const noexcept { return gram_; }

 private:
  Eigen::MatrixXd gram_;   // lower triangle is authoritative
  Eigen::MatrixXd cross_;  // S^T T
  Eigen::Index rows_ = 0;
};

}  // namespace stvo
