#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spate/dataset.hpp"
#include "spate/encoders.hpp"
#include "spate/metrics.hpp"
#include "spate/preprocess.hpp"
#include "spate/qnn.hpp"

namespace spate {

struct TuningGrid {
  std::vector<double> gain{1.0, 2.0, 4.0};
  std::vector<double> sigma{0.0, 0.1};
  std::vector<double> v_th{0.25, 0.5, 1.0};
  std::vector<double> tau{0.05, 0.1, 0.2};

  // Cartesian product in (gain, sigma, v_th, tau) row-major order; ties in
  // the tuning objective break toward the earlier candidate.
  std::vector<LifConfig> candidates(const LifConfig& base) const;
};

struct DatasetSpec {
  std::string name;            // moons | circles | blobs | csv
  std::string csv_path;        // csv only
  std::string label_column;    // csv only
  int n = 300;                 // synthetic generators
  int blob_features = 5;
  int blob_centers = 3;
  double moons_noise = 0.2;
  double circles_noise = 0.1;
  double circles_factor = 0.5;
  double blob_spread = 1.0;
};

Dataset realize_dataset(const DatasetSpec& spec, std::uint64_t seed);

enum class StudyKind { Quality, Qnn };

struct ExperimentConfig {
  DatasetSpec dataset;
  std::vector<EncoderKind> encoders{EncoderKind::Spate, EncoderKind::Angle,
                                    EncoderKind::Amplitude};
  int folds = 5;
  std::uint64_t seed = 42;
  StudyKind study = StudyKind::Quality;
  TuningGrid grid;
  // fixed SPATE constants (not tuned)
  double horizon = 1.0;
  double dt = 0.02;
  int n_bins = 3;
  double beta_scale = 0.5;
  int spate_seeds = 3;
  int tv_pairs = 200;
  TrainConfig train;  // qnn study only

  void validate() const;
};

// Train-only fitted artifacts of one fold for one encoder. Everything here
// is a function of the train rows alone (the leakage audit leans on this).
struct FoldFit {
  ScalerStats standardize;
  std::optional<PcaModel> pca;          // present when the budget caps d
  std::optional<ScalerStats> minmax;    // SPATE only
  std::optional<LifConfig> tuned;       // SPATE only, the selected theta*
  int n_qubits = 0;
  int d_enc = 0;
};

FoldFit fit_fold(const Dataset& ds, const std::vector<int>& train_idx,
                 EncoderKind encoder, const ExperimentConfig& cfg, int fold);

// Applies a fold's fitted transforms to arbitrary rows of the dataset.
Eigen::MatrixXd transform_features(const Dataset& ds, const FoldFit& fit,
                                   const std::vector<int>& indices);

// Embeds already-transformed feature rows. Row i of the result is the
// embedding of row i; the parallel version writes disjoint rows.
Eigen::MatrixXd embed_rows(const Eigen::MatrixXd& features, EncoderKind encoder,
                           const EncoderConfig& enc_cfg,
                           const RngStream& sample_base_rng);
Eigen::MatrixXd embed_rows_serial(const Eigen::MatrixXd& features,
                                  EncoderKind encoder,
                                  const EncoderConfig& enc_cfg,
                                  const RngStream& sample_base_rng);

// Grid search over LIF candidates maximizing CKTA + Silhouette of the
// train-split embeddings (single-seed embeddings to bound cost); first
// maximum wins.
LifConfig tune_spate_fold(const Eigen::MatrixXd& train_unit,
                          const std::vector<int>& train_labels,
                          const TuningGrid& grid, const ExperimentConfig& cfg,
                          const RngStream& tune_rng);

struct Aggregate {
  double mean = 0;
  double stddev = 0;  // population std over folds
};

Aggregate aggregate(const std::vector<double>& per_fold);

struct MetricReport {
  std::string dataset;
  EncoderKind encoder = EncoderKind::Spate;
  int n_qubits = 0;
  std::vector<MetricValues> per_fold;
  std::vector<LifConfig> tuned;  // SPATE only, one per fold
  Aggregate ckta, fisher, inter_intra, silhouette, h_norm, tv_pair,
      tv_pair_norm;
};

struct PerfReport {
  std::string dataset;
  EncoderKind encoder = EncoderKind::Spate;
  int n_qubits = 0;
  std::vector<PerfValues> per_fold;
  std::vector<LifConfig> tuned;  // SPATE only
  Aggregate accuracy, precision, recall, auc;
};

// Study A: per fold, fit train-only transforms, tune SPATE on the train
// split, embed the test split, compute the six metrics, aggregate.
std::vector<MetricReport> run_quality_study(const ExperimentConfig& cfg);

// Study B: per fold, encode to each encoder's qubit budget, train the
// hybrid QNN with the fixed TrainConfig, evaluate on the test split.
std::vector<PerfReport> run_qnn_study(const ExperimentConfig& cfg);

}  // namespace spate
