#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "spate/rng.hpp"

namespace spate {

struct Dataset {
  Eigen::MatrixXd X;       // N x d
  std::vector<int> y;      // labels in 0..C-1
  std::string name;
  int num_classes = 0;

  Eigen::Index num_samples() const { return X.rows(); }
  Eigen::Index num_features() const { return X.cols(); }
};

struct FoldPlan {
  int folds = 0;
  std::vector<int> assignments;  // per-sample fold index in 0..folds-1
  std::uint64_t seed = 0;

  std::vector<int> train_indices(int fold) const;
  std::vector<int> test_indices(int fold) const;
};

// Two interleaving half-circles in 2D with additive Gaussian noise.
Dataset gen_moons(int n, double noise, std::uint64_t seed);

// Concentric circles; inner radius = factor (must lie in (0,1)).
Dataset gen_circles(int n, double noise, double factor, std::uint64_t seed);

// Isotropic Gaussian clusters around `centers` seeded center points.
Dataset gen_blobs(int n, int d, int centers, double spread, std::uint64_t seed);

// CSV ingestion: one header row, comma separated, '.' decimal separator.
// Labels are re-encoded to 0..C-1 by sorted unique value (numeric order when
// every label parses as a number, lexicographic otherwise).
Dataset load_csv(const std::string& path, const std::string& label_column);

FoldPlan stratified_kfold(const std::vector<int>& y, int folds,
                          std::uint64_t seed);

}  // namespace spate
