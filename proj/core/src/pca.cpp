#include "stvo/pca.hpp"

#include <string>

#include <Eigen/Eigenvalues>

#include "stvo/errors.hpp"

namespace stvo {

Eigen::MatrixXd PcaModel::project(const Eigen::MatrixXd& x) const {
  if (x.cols() != mean.size()) {
    throw DimensionError("PCA input has " + std::to_string(x.cols()) + " columns, expected " +
                         std::to_string(mean.size()));
  }
  return (x.rowwise() - mean.transpose()) * components.transpose();
}

Eigen::MatrixXd PcaModel::reconstruct(const Eigen::MatrixXd& features) const {
  if (features.cols() != components.rows()) {
    throw DimensionError("feature matrix has " + std::to_string(features.cols()) +
                         " columns, expected " + std::to_string(components.rows()));
  }
  return (features * components).rowwise() + mean.transpose();
}

PcaModel fit_pca(const Eigen::MatrixXd& x, std::size_t k) {
  const Eigen::Index n = x.rows();
  const Eigen::Index d = x.cols();
  if (n < 2 || d < 1) throw DimensionError("PCA needs at least two samples");
  if (k < 1 || static_cast<Eigen::Index>(k) > d) {
    throw DimensionError("cannot keep " + std::to_string(k) + " of " + std::to_string(d) +
                         " components");
  }
  PcaModel model;
  model.mean = x.colwise().mean().transpose();
  const Eigen::MatrixXd centered = x.rowwise() - model.mean.transpose();
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(d, d);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered.transpose(), 1.0 / double(n - 1));
  cov = cov.selfadjointView<Eigen::Lower>();

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(cov);
  if (eig.info() != Eigen::Success) throw NumericError("covariance eigen-decomposition failed");
  const Eigen::VectorXd values = eig.eigenvalues().cwiseMax(0.0);  // ascending
  model.total_variance = values.sum();
  if (!(model.total_variance > 0.0)) throw NumericError("input data has zero variance");

  const auto kk = static_cast<Eigen::Index>(k);
  model.components.resize(kk, d);
  model.eigenvalues.resize(kk);
  for (Eigen::Index i = 0; i < kk; ++i) {
    const Eigen::Index src = d - 1 - i;
    Eigen::VectorXd v = eig.eigenvectors().col(src);
    Eigen::Index argmax = 0;
    v.cwiseAbs().maxCoeff(&argmax);
    if (v(argmax) < 0.0) v = -v;
    model.components.row(i) = v.transpose();
    model.eigenvalues(i) = values(src);
  }
  model.explained_ratio = model.eigenvalues / model.total_variance;
  return model;
}

FeatureScaler FeatureScaler::fit(const Eigen::MatrixXd& features) {
  if (features.rows() == 0) throw DimensionError("cannot fit a scaler on zero rows");
  return {features.colwise().minCoeff(), features.colwise().maxCoeff()};
}

Eigen::MatrixXd FeatureScaler::apply(const Eigen::MatrixXd& features) const {
  if (features.cols() != lo.size()) {
    throw DimensionError("scaler fitted on " + std::to_string(lo.size()) + " columns, got " +
                         std::to_string(features.cols()));
  }
  Eigen::MatrixXd out(features.rows(), features.cols());
  for (Eigen::Index j = 0; j < features.cols(); ++j) {
    const double range = hi(j) - lo(j);
    if (range > 0.0) {
      out.col(j) = (2.0 / range) * (features.col(j).array() - lo(j)) - 1.0;
    } else {
      out.col(j).setZero();
    }
  }
  return out;
}

}  // namespace stvo
