#pragma once

#include <Eigen/Dense>

namespace spate {

struct ScalerStats {
  Eigen::VectorXd shift;  // means (standardize) or mins (minmax)
  Eigen::VectorXd scale;  // stds or ranges, degenerate entries replaced by 1
};

struct PcaModel {
  Eigen::MatrixXd components;   // d x k, orthonormal columns
  Eigen::VectorXd means;        // train feature means
  Eigen::VectorXd eigenvalues;  // top-k, descending
  int k = 0;
};

// Per-feature (x - mean) / std with population (1/N) std fitted on the train
// split; constant features map to 0 (std fallback 1).
ScalerStats standardize_fit(const Eigen::MatrixXd& X_train);
Eigen::MatrixXd standardize_apply(const ScalerStats& s, const Eigen::MatrixXd& X);

// Per-feature (x - min) / (max - min) with train bounds; outputs are clamped
// into [0,1] so out-of-range test values stay inside the spike-input domain.
// Constant train features map to 0.
ScalerStats minmax_fit(const Eigen::MatrixXd& X_train);
Eigen::MatrixXd minmax_apply(const ScalerStats& s, const Eigen::MatrixXd& X);

// Top-k principal components of the centered train covariance, descending
// eigenvalue order, sign fixed so the largest-magnitude entry of each
// component is positive.
PcaModel pca_fit(const Eigen::MatrixXd& X_train, int k);
Eigen::MatrixXd pca_apply(const PcaModel& m, const Eigen::MatrixXd& X);

}  // namespace spate
