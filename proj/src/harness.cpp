#include "spate/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <limits>

#include "spate/errors.hpp"

namespace spate {

std::vector<LifConfig> TuningGrid::candidates(const LifConfig& base) const {
  if (gain.empty() || sigma.empty() || v_th.empty() || tau.empty())
    throw_invalid("TuningGrid: all candidate lists must be nonempty");
  std::vector<LifConfig> out;
  out.reserve(gain.size() * sigma.size() * v_th.size() * tau.size());
  for (double g : gain)
    for (double s : sigma)
      for (double v : v_th)
        for (double t : tau) {
          LifConfig c = base;
          c.gain = g;
          c.sigma = s;
          c.v_th = v;
          c.tau = t;
          c.validate();
          out.push_back(c);
        }
  return out;
}

Dataset realize_dataset(const DatasetSpec& spec, std::uint64_t seed) {
  if (spec.name == "moons") return gen_moons(spec.n, spec.moons_noise, seed);
  if (spec.name == "circles")
    return gen_circles(spec.n, spec.circles_noise, spec.circles_factor, seed);
  if (spec.name == "blobs")
    return gen_blobs(spec.n, spec.blob_features, spec.blob_centers,
                     spec.blob_spread, seed);
  if (spec.name == "csv" || !spec.csv_path.empty()) {
    if (spec.csv_path.empty())
      throw_data("realize_dataset: csv dataset needs a path");
    Dataset ds = load_csv(spec.csv_path, spec.label_column);
    ds.name = std::filesystem::path(spec.csv_path).stem().string();
    return ds;
  }
  throw_invalid("realize_dataset: unknown dataset '" + spec.name + "'");
}

void ExperimentConfig::validate() const {
  if (folds < 2) throw_invalid("ExperimentConfig: folds must be >= 2");
  if (encoders.empty()) throw_invalid("ExperimentConfig: no encoders");
  if (tv_pairs < 1) throw_invalid("ExperimentConfig: tv_pairs must be >= 1");
  if (spate_seeds < 1) throw_invalid("ExperimentConfig: seeds must be >= 1");
  if (n_bins < 1) throw_invalid("ExperimentConfig: n_bins must be >= 1");
  if (!(beta_scale > 0)) throw_invalid("ExperimentConfig: beta_scale <= 0");
  if (train.steps < 1 || train.batch < 1)
    throw_invalid("ExperimentConfig: bad training settings");
  LifConfig base;
  base.horizon = horizon;
  base.dt = dt;
  base.n_bins = n_bins;
  base.validate();
}

namespace {

LifConfig base_lif(const ExperimentConfig& cfg) {
  LifConfig base;
  base.horizon = cfg.horizon;
  base.dt = cfg.dt;
  base.n_bins = cfg.n_bins;
  return base;
}

// Feature-dimension cap for one encoder under the study's qubit budget.
int feature_cap(EncoderKind encoder, StudyKind study, int d) {
  if (study == StudyKind::Quality) return std::min(d, 8);
  switch (encoder) {
    case EncoderKind::Angle:
      return std::min(d, 6);
    case EncoderKind::Amplitude:
      return d;  // pad/truncate to 64 amplitudes at encode time
    case EncoderKind::Spate:
      return std::min(d, std::clamp(d, 2, 3));
  }
  return d;
}

int register_size(EncoderKind encoder, StudyKind study, int d_enc, int n_bins) {
  if (encoder == EncoderKind::Spate) return d_enc + n_bins;
  if (encoder == EncoderKind::Amplitude && study == StudyKind::Qnn) return 6;
  return d_enc;
}

EncoderConfig encoder_config(const FoldFit& fit, EncoderKind encoder,
                             const ExperimentConfig& cfg) {
  EncoderConfig ec;
  ec.kind = encoder;
  ec.n_qubits = fit.n_qubits;
  ec.beta_scale = cfg.beta_scale;
  ec.seeds = cfg.spate_seeds;
  ec.lif = fit.tuned ? *fit.tuned : base_lif(cfg);
  return ec;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& X,
                            const std::vector<int>& idx) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(idx.size()), X.cols());
  for (std::size_t i = 0; i < idx.size(); ++i) out.row(i) = X.row(idx[i]);
  return out;
}

std::vector<int> select_labels(const std::vector<int>& y,
                               const std::vector<int>& idx) {
  std::vector<int> out(idx.size());
  for (std::size_t i = 0; i < idx.size(); ++i) out[i] = y[idx[i]];
  return out;
}

Eigen::VectorXd row_vec(const Eigen::MatrixXd& X, Eigen::Index i) {
  return X.row(i).transpose();
}

ProbEmbedding embed_one(const Eigen::VectorXd& x, EncoderKind encoder,
                        const EncoderConfig& ec, const RngStream& rng) {
  switch (encoder) {
    case EncoderKind::Spate:
      return spate_embed(x, ec, rng);
    case EncoderKind::Angle:
      return angle_embed(x);
    case EncoderKind::Amplitude:
      return amplitude_embed(x, ec.n_qubits);
  }
  throw_invalid("embed_one: unknown encoder");
}

Eigen::MatrixXd embed_rows_impl(const Eigen::MatrixXd& features,
                                EncoderKind encoder,
                                const EncoderConfig& enc_cfg,
                                const RngStream& sample_base_rng,
                                bool parallel) {
  const Eigen::Index N = features.rows();
  if (N == 0) throw_invalid("embed_rows: no rows");
  const Eigen::Index D = Eigen::Index{1} << enc_cfg.n_qubits;
  Eigen::MatrixXd P(N, D);
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (Eigen::Index i = 0; i < N; ++i) {
    const ProbEmbedding emb =
        embed_one(row_vec(features, i), encoder, enc_cfg,
                  sample_base_rng.child(static_cast<std::uint64_t>(i)));
    for (Eigen::Index z = 0; z < D; ++z) P(i, z) = emb.p[z];
  }
  return P;
}

}  // namespace

Eigen::MatrixXd embed_rows(const Eigen::MatrixXd& features, EncoderKind encoder,
                           const EncoderConfig& enc_cfg,
                           const RngStream& sample_base_rng) {
  return embed_rows_impl(features, encoder, enc_cfg, sample_base_rng, true);
}

Eigen::MatrixXd embed_rows_serial(const Eigen::MatrixXd& features,
                                  EncoderKind encoder,
                                  const EncoderConfig& enc_cfg,
                                  const RngStream& sample_base_rng) {
  return embed_rows_impl(features, encoder, enc_cfg, sample_base_rng, false);
}

LifConfig tune_spate_fold(const Eigen::MatrixXd& train_unit,
                          const std::vector<int>& train_labels,
                          const TuningGrid& grid, const ExperimentConfig& cfg,
                          const RngStream& tune_rng) {
  const std::vector<LifConfig> candidates = grid.candidates(base_lif(cfg));
  const int d = static_cast<int>(train_unit.cols());

  double best_score = -std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t c = 0; c < candidates.size(); ++c) {
    EncoderConfig ec;
    ec.kind = EncoderKind::Spate;
    ec.n_qubits = d + cfg.n_bins;
    ec.beta_scale = cfg.beta_scale;
    ec.seeds = 1;  // single-seed tuning embeddings to bound cost
    ec.lif = candidates[c];
    const Eigen::MatrixXd P =
        embed_rows(train_unit, EncoderKind::Spate, ec, tune_rng);
    const double score = ckta(P, train_labels) + silhouette(P, train_labels);
    if (score > best_score) {  // strict: first maximum wins
      best_score = score;
      best = c;
    }
  }
  return candidates[best];
}

FoldFit fit_fold(const Dataset& ds, const std::vector<int>& train_idx,
                 EncoderKind encoder, const ExperimentConfig& cfg, int fold) {
  const int d = static_cast<int>(ds.num_features());
  FoldFit fit;
  const Eigen::MatrixXd X_train = select_rows(ds.X, train_idx);
  fit.standardize = standardize_fit(X_train);
  Eigen::MatrixXd Z_train = standardize_apply(fit.standardize, X_train);

  const int cap = feature_cap(encoder, cfg.study, d);
  if (cap < d) {
    fit.pca = pca_fit(Z_train, cap);
    Z_train = pca_apply(*fit.pca, Z_train);
  }
  fit.d_enc = static_cast<int>(Z_train.cols());
  fit.n_qubits = register_size(encoder, cfg.study, fit.d_enc, cfg.n_bins);
  if (fit.n_qubits > kMaxQubits)
    throw_capacity("fit_fold: encoder register exceeds qubit capacity");

  if (encoder == EncoderKind::Spate) {
    fit.minmax = minmax_fit(Z_train);
    // Grid tuning selects by representation quality (CKTA + silhouette), the
    // quantity the quality study evaluates. The classification study keeps the
    // fixed default LIF configuration instead: selecting spike parameters by
    // an embedding-geometry score does not track classifier trainability.
    if (cfg.study == StudyKind::Quality) {
      const Eigen::MatrixXd train_unit = minmax_apply(*fit.minmax, Z_train);
      auto master = RngStream::from_key(cfg.seed);
      fit.tuned =
          tune_spate_fold(train_unit, select_labels(ds.y, train_idx), cfg.grid,
                          cfg, master.child(100 + fold));
    }
  }
  return fit;
}

Eigen::MatrixXd transform_features(const Dataset& ds, const FoldFit& fit,
                                   const std::vector<int>& indices) {
  Eigen::MatrixXd Z =
      standardize_apply(fit.standardize, select_rows(ds.X, indices));
  if (fit.pca) Z = pca_apply(*fit.pca, Z);
  if (fit.minmax) Z = minmax_apply(*fit.minmax, Z);
  return Z;
}

Aggregate aggregate(const std::vector<double>& per_fold) {
  Aggregate a;
  if (per_fold.empty()) return a;
  for (double v : per_fold) a.mean += v;
  a.mean /= static_cast<double>(per_fold.size());
  double ss = 0;
  for (double v : per_fold) ss += (v - a.mean) * (v - a.mean);
  a.stddev = std::sqrt(ss / static_cast<double>(per_fold.size()));
  return a;
}

namespace {

std::uint64_t encoder_label(EncoderKind e) {
  return static_cast<std::uint64_t>(e);
}

void finalize_metric_report(MetricReport& rep) {
  auto agg = [&](auto field) {
    std::vector<double> v;
    for (const auto& m : rep.per_fold) v.push_back(m.*field);
    return aggregate(v);
  };
  rep.ckta = agg(&MetricValues::ckta);
  rep.fisher = agg(&MetricValues::fisher);
  rep.inter_intra = agg(&MetricValues::inter_intra);
  rep.silhouette = agg(&MetricValues::silhouette);
  rep.h_norm = agg(&MetricValues::h_norm);
  rep.tv_pair = agg(&MetricValues::tv_pair);
  rep.tv_pair_norm = agg(&MetricValues::tv_pair_norm);
}

void finalize_perf_report(PerfReport& rep) {
  auto agg = [&](auto field) {
    std::vector<double> v;
    for (const auto& m : rep.per_fold) v.push_back(m.*field);
    return aggregate(v);
  };
  rep.accuracy = agg(&PerfValues::accuracy);
  rep.precision = agg(&PerfValues::precision);
  rep.recall = agg(&PerfValues::recall);
  rep.auc = agg(&PerfValues::auc);
}

}  // namespace

std::vector<MetricReport> run_quality_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset ds = realize_dataset(cfg.dataset, cfg.seed);
  const FoldPlan plan = stratified_kfold(ds.y, cfg.folds, cfg.seed);
  auto master = RngStream::from_key(cfg.seed);

  std::vector<MetricReport> reports;
  for (EncoderKind encoder : cfg.encoders) {
    MetricReport rep;
    rep.dataset = ds.name;
    rep.encoder = encoder;
    for (int fold = 0; fold < cfg.folds; ++fold) {
      const std::vector<int> train_idx = plan.train_indices(fold);
      const std::vector<int> test_idx = plan.test_indices(fold);
      const FoldFit fit = fit_fold(ds, train_idx, encoder, cfg, fold);
      rep.n_qubits = fit.n_qubits;
      if (fit.tuned) rep.tuned.push_back(*fit.tuned);

      const Eigen::MatrixXd feats = transform_features(ds, fit, test_idx);
      const EncoderConfig ec = encoder_config(fit, encoder, cfg);
      EmbeddingSet set;
      set.P = embed_rows(feats, encoder, ec,
                         master.child(200 + fold).child(encoder_label(encoder)));
      set.y = select_labels(ds.y, test_idx);
      set.n_qubits = fit.n_qubits;
      rep.per_fold.push_back(compute_all_metrics(
          set, cfg.tv_pairs,
          master.child(300 + fold).child(encoder_label(encoder))));
    }
    finalize_metric_report(rep);
    reports.push_back(std::move(rep));
  }
  return reports;
}

std::vector<PerfReport> run_qnn_study(const ExperimentConfig& cfg) {
  cfg.validate();
  const Dataset ds = realize_dataset(cfg.dataset, cfg.seed);
  const FoldPlan plan = stratified_kfold(ds.y, cfg.folds, cfg.seed);
  auto master = RngStream::from_key(cfg.seed);

  std::vector<PerfReport> reports;
  for (EncoderKind encoder : cfg.encoders) {
    PerfReport rep;
    rep.dataset = ds.name;
    rep.encoder = encoder;
    for (int fold = 0; fold < cfg.folds; ++fold) {
      const std::vector<int> train_idx = plan.train_indices(fold);
      const std::vector<int> test_idx = plan.test_indices(fold);
      ExperimentConfig fold_cfg = cfg;
      fold_cfg.study = StudyKind::Qnn;
      const FoldFit fit = fit_fold(ds, train_idx, encoder, fold_cfg, fold);
      rep.n_qubits = fit.n_qubits;
      if (fit.tuned) rep.tuned.push_back(*fit.tuned);

      EncoderConfig ec = encoder_config(fit, encoder, fold_cfg);
      // The ansatz consumes one pure state per sample; the generator noise
      // term only defines a mixture over seeds, which has no single-state
      // analogue, so the prefix circuit uses the mean-parameter (noise-free)
      // realization of the spike dynamics.
      if (encoder == EncoderKind::Spate) ec.lif.sigma = 0.0;
      auto encode_split = [&](const std::vector<int>& idx,
                              std::uint64_t stream_label) {
        const Eigen::MatrixXd feats = transform_features(ds, fit, idx);
        const RngStream base =
            master.child(stream_label).child(encoder_label(encoder));
        std::vector<StateVector> states(idx.size());
#pragma omp parallel for schedule(dynamic, 8)
        for (long i = 0; i < static_cast<long>(idx.size()); ++i) {
          const Eigen::VectorXd x = row_vec(feats, i);
          switch (encoder) {
            case EncoderKind::Spate:
              // single-seed prefix circuit: the ansatz consumes one state
              states[i] = spate_state(
                  x, ec, base.child(static_cast<std::uint64_t>(i)).child(0));
              break;
            case EncoderKind::Angle:
              states[i] = angle_state(x);
              break;
            case EncoderKind::Amplitude:
              states[i] = amplitude_state(x, ec.n_qubits);
              break;
          }
        }
        return states;
      };

      const std::vector<StateVector> train_states =
          encode_split(train_idx, 500 + fold);
      const std::vector<StateVector> test_states =
          encode_split(test_idx, 600 + fold);

      TrainConfig tc = cfg.train;
      tc.seed =
          master.child(700 + fold).child(encoder_label(encoder)).next_u64();
      const TrainedModel model = train(
          train_states, select_labels(ds.y, train_idx), ds.num_classes, tc);
      rep.per_fold.push_back(
          evaluate(test_states, select_labels(ds.y, test_idx), model));
    }
    finalize_perf_report(rep);
    reports.push_back(std::move(rep));
  }
  return reports;
}

}  // namespace spate
