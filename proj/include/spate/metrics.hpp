#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spate/encoders.hpp"
#include "spate/rng.hpp"

namespace spate {

struct EmbeddingSet {
  Eigen::MatrixXd P;   // N x D, rows on the simplex
  std::vector<int> y;  // labels
  int n_qubits = 0;    // D = 2^n_qubits
};

// Full symmetric Euclidean distance matrix between rows of P. The parallel
// version writes disjoint rows, so its output is identical to the serial
// reference for any thread count.
Eigen::MatrixXd pairwise_distances(const Eigen::MatrixXd& P);
Eigen::MatrixXd pairwise_distances_serial(const Eigen::MatrixXd& P);

// RBF bandwidth from the median off-diagonal pairwise distance m:
// gamma = 1 / (2 m^2 + eps), falling back to 1 when m is (near) zero.
double median_gamma(const Eigen::MatrixXd& P);

// Centered kernel-target alignment between the RBF kernel (median-gamma
// bandwidth) and the label-agreement kernel.
double ckta(const Eigen::MatrixXd& P, const std::vector<int>& y);

// Between-class over within-class scatter.
double fisher_ratio(const Eigen::MatrixXd& P, const std::vector<int>& y);

// Mean inter-class over mean intra-class pairwise distance (off-diagonal,
// unordered pairs).
double inter_intra(const Eigen::MatrixXd& P, const std::vector<int>& y);

// Mean silhouette score; singleton-class samples contribute 0.
double silhouette(const Eigen::MatrixXd& P, const std::vector<int>& y);

// Shannon entropy (base 2, eps inside the log) divided by the qubit count.
double entropy_norm(const std::vector<double>& p, int n_qubits);
double mean_entropy_norm(const Eigen::MatrixXd& P, int n_qubits);

struct TvPairResult {
  double tv = 0;       // mean total-variation distance over sampled pairs
  double tv_norm = 0;  // tv / n_qubits
};

// Mean TV distance over `n_pairs` unordered index pairs sampled without
// replacement from the seeded stream (all pairs when fewer exist).
TvPairResult tvpair(const Eigen::MatrixXd& P, int n_qubits, int n_pairs,
                    RngStream rng);

struct MetricValues {
  double ckta = 0;
  double fisher = 0;
  double inter_intra = 0;
  double silhouette = 0;
  double h_norm = 0;
  double tv_pair = 0;
  double tv_pair_norm = 0;
};

MetricValues compute_all_metrics(const EmbeddingSet& set, int n_pairs,
                                 RngStream rng);

}  // namespace spate
