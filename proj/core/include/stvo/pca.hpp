#pragma once

// Principal component analysis by eigen-decomposition of the sample
// covariance, plus per-feature min/max scaling.

#include <cstddef>

#include <Eigen/Core>

namespace stvo {

struct PcaModel {
  Eigen::VectorXd mean;            // d
  Eigen::MatrixXd components;      // k x d, orthonormal rows
  Eigen::VectorXd eigenvalues;     // k, descending
  Eigen::VectorXd explained_ratio; // k
  double total_variance = 0.0;

  std::size_t n_components() const noexcept { return static_cast<std::size_t>(components.rows()); }
  double cumulative_explained() const { return explained_ratio.sum(); }

  /// (X - mean) * components^T, rows = samples.
  Eigen::MatrixXd project(const Eigen::MatrixXd& x) const;
  /// Inverse map from k features back to d dimensions.
  Eigen::MatrixXd reconstruct(const Eigen::MatrixXd& features) const;
};

/// Rows of `x` are samples. Components are the top `k` eigenvectors of the
/// covariance, each signed so its largest-magnitude coefficient is positive.
/// Throws NumericError if the data has zero variance, DimensionError if k is
/// out of range.
PcaModel fit_pca(const Eigen::MatrixXd& x, std::size_t k);

/// Affine per-column map sending the training min/max to [-1, 1]. Columns with
/// zero range map to 0.
struct FeatureScaler {
  Eigen::RowVectorXd lo;
  Eigen::RowVectorXd hi;

  static FeatureScaler fit(const Eigen::MatrixXd& features);
  /// Values outside the training range land outside [-1, 1]; no clipping.
  Eigen::MatrixXd apply(const Eigen::MatrixXd& features) const;
};

}  // namespace stvo
