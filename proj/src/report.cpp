#include "spate/report.hpp"

#include <chrono>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>

#include "spate/errors.hpp"

namespace spate {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t t = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

json lif_to_json(const LifConfig& c) {
  return json{{"tau", c.tau},       {"gain", c.gain}, {"sigma", c.sigma},
              {"v_th", c.v_th},     {"T", c.horizon}, {"dt", c.dt},
              {"n_bins", c.n_bins}};
}

json aggregate_to_json(const Aggregate& a) {
  return json{{"mean", a.mean}, {"std", a.stddev}};
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["dataset"] = {{"name", cfg.dataset.name},
                  {"csv_path", cfg.dataset.csv_path},
                  {"label_column", cfg.dataset.label_column},
                  {"n", cfg.dataset.n},
                  {"blob_features", cfg.dataset.blob_features},
                  {"blob_centers", cfg.dataset.blob_centers},
                  {"moons_noise", cfg.dataset.moons_noise},
                  {"circles_noise", cfg.dataset.circles_noise},
                  {"circles_factor", cfg.dataset.circles_factor},
                  {"blob_spread", cfg.dataset.blob_spread}};
  json encoders = json::array();
  for (EncoderKind e : cfg.encoders) encoders.push_back(encoder_name(e));
  j["encoders"] = encoders;
  j["folds"] = cfg.folds;
  j["seed"] = cfg.seed;
  j["study"] = cfg.study == StudyKind::Quality ? "quality" : "qnn";
  j["grid"] = {{"gain", cfg.grid.gain},
               {"sigma", cfg.grid.sigma},
               {"v_th", cfg.grid.v_th},
               {"tau", cfg.grid.tau}};
  j["spate"] = {{"T", cfg.horizon},        {"dt", cfg.dt},
                {"n_bins", cfg.n_bins},    {"beta_scale", cfg.beta_scale},
                {"seeds", cfg.spate_seeds}};
  j["tv_pairs"] = cfg.tv_pairs;
  j["train"] = {{"steps", cfg.train.steps}, {"batch", cfg.train.batch},
                {"lr", cfg.train.lr},       {"beta1", cfg.train.beta1},
                {"beta2", cfg.train.beta2}, {"adam_eps", cfg.train.adam_eps}};
  return j;
}

ExperimentConfig config_from_json(const json& j) {
  ExperimentConfig cfg;
  if (j.contains("dataset")) {
    const auto& d = j.at("dataset");
    cfg.dataset.name = d.value("name", cfg.dataset.name);
    cfg.dataset.csv_path = d.value("csv_path", cfg.dataset.csv_path);
    cfg.dataset.label_column = d.value("label_column", cfg.dataset.label_column);
    cfg.dataset.n = d.value("n", cfg.dataset.n);
    cfg.dataset.blob_features = d.value("blob_features", cfg.dataset.blob_features);
    cfg.dataset.blob_centers = d.value("blob_centers", cfg.dataset.blob_centers);
    cfg.dataset.moons_noise = d.value("moons_noise", cfg.dataset.moons_noise);
    cfg.dataset.circles_noise = d.value("circles_noise", cfg.dataset.circles_noise);
    cfg.dataset.circles_factor =
        d.value("circles_factor", cfg.dataset.circles_factor);
    cfg.dataset.blob_spread = d.value("blob_spread", cfg.dataset.blob_spread);
  }
  if (j.contains("encoders")) {
    cfg.encoders.clear();
    for (const auto& name : j.at("encoders"))
      cfg.encoders.push_back(parse_encoder(name.get<std::string>()));
  }
  cfg.folds = j.value("folds", cfg.folds);
  cfg.seed = j.value("seed", cfg.seed);
  if (j.contains("study"))
    cfg.study = j.at("study").get<std::string>() == "qnn" ? StudyKind::Qnn
                                                          : StudyKind::Quality;
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.contains("gain")) cfg.grid.gain = g.at("gain").get<std::vector<double>>();
    if (g.contains("sigma")) cfg.grid.sigma = g.at("sigma").get<std::vector<double>>();
    if (g.contains("v_th")) cfg.grid.v_th = g.at("v_th").get<std::vector<double>>();
    if (g.contains("tau")) cfg.grid.tau = g.at("tau").get<std::vector<double>>();
  }
  if (j.contains("spate")) {
    const auto& s = j.at("spate");
    cfg.horizon = s.value("T", cfg.horizon);
    cfg.dt = s.value("dt", cfg.dt);
    cfg.n_bins = s.value("n_bins", cfg.n_bins);
    cfg.beta_scale = s.value("beta_scale", cfg.beta_scale);
    cfg.spate_seeds = s.value("seeds", cfg.spate_seeds);
  }
  cfg.tv_pairs = j.value("tv_pairs", cfg.tv_pairs);
  if (j.contains("train")) {
    const auto& t = j.at("train");
    cfg.train.steps = t.value("steps", cfg.train.steps);
    cfg.train.batch = t.value("batch", cfg.train.batch);
    cfg.train.lr = t.value("lr", cfg.train.lr);
    cfg.train.beta1 = t.value("beta1", cfg.train.beta1);
    cfg.train.beta2 = t.value("beta2", cfg.train.beta2);
    cfg.train.adam_eps = t.value("adam_eps", cfg.train.adam_eps);
  }
  return cfg;
}

json run_manifest(const ExperimentConfig& cfg,
                  const std::vector<std::string>& output_paths) {
  json j;
  j["version"] = kVersion;
  j["timestamp"] = iso_timestamp();
  j["config"] = config_to_json(cfg);
  j["output_paths"] = output_paths;
  // values the evaluation protocol leaves open; recorded so runs can be
  // compared across parameter choices
  j["provenance"] = {
      {"pca_fit", "per-fold train split only"},
      {"tuning_objective", "ckta + silhouette, first maximum wins"},
      {"tuning_seeds", 1},
      {"median_gamma", "1/(2 m^2 + eps)"},
      {"tv_pairs", cfg.tv_pairs},
      {"readout_qubits", "first ceil(log2 C) register qubits"},
      {"cross_entropy_log_base", "e"},
      {"epsilon", kEps},
  };
  return j;
}

json metric_reports_to_json(const std::vector<MetricReport>& reports,
                            const json& manifest) {
  json out;
  out["manifest"] = manifest;
  json rows = json::array();
  for (const auto& r : reports) {
    json row;
    row["dataset"] = r.dataset;
    row["encoder"] = encoder_name(r.encoder);
    row["n_qubits"] = r.n_qubits;
    json per_fold = json::array();
    for (const auto& m : r.per_fold)
      per_fold.push_back({{"ckta", m.ckta},
                          {"fisher", m.fisher},
                          {"inter_intra", m.inter_intra},
                          {"silhouette", m.silhouette},
                          {"h_norm", m.h_norm},
                          {"tv_pair", m.tv_pair},
                          {"tv_pair_norm", m.tv_pair_norm}});
    row["per_fold"] = per_fold;
    json tuned = json::array();
    for (const auto& t : r.tuned) tuned.push_back(lif_to_json(t));
    row["tuned"] = tuned;
    row["aggregate"] = {{"ckta", aggregate_to_json(r.ckta)},
                        {"fisher", aggregate_to_json(r.fisher)},
                        {"inter_intra", aggregate_to_json(r.inter_intra)},
                        {"silhouette", aggregate_to_json(r.silhouette)},
                        {"h_norm", aggregate_to_json(r.h_norm)},
                        {"tv_pair", aggregate_to_json(r.tv_pair)},
                        {"tv_pair_norm", aggregate_to_json(r.tv_pair_norm)}};
    rows.push_back(row);
  }
  out["reports"] = rows;
  return out;
}

json perf_reports_to_json(const std::vector<PerfReport>& reports,
                          const json& manifest) {
  json out;
  out["manifest"] = manifest;
  json rows = json::array();
  for (const auto& r : reports) {
    json row;
    row["dataset"] = r.dataset;
    row["encoder"] = encoder_name(r.encoder);
    row["n_qubits"] = r.n_qubits;
    json per_fold = json::array();
    for (const auto& m : r.per_fold)
      per_fold.push_back({{"accuracy", m.accuracy},
                          {"precision", m.precision},
                          {"recall", m.recall},
                          {"auc", m.auc}});
    row["per_fold"] = per_fold;
    json tuned = json::array();
    for (const auto& t : r.tuned) tuned.push_back(lif_to_json(t));
    row["tuned"] = tuned;
    row["aggregate"] = {{"accuracy", aggregate_to_json(r.accuracy)},
                        {"precision", aggregate_to_json(r.precision)},
                        {"recall", aggregate_to_json(r.recall)},
                        {"auc", aggregate_to_json(r.auc)}};
    rows.push_back(row);
  }
  out["reports"] = rows;
  return out;
}

std::string metric_reports_to_csv(const std::vector<MetricReport>& reports) {
  std::ostringstream os;
  os << "dataset,encoder,n_qubits,folds,"
        "ckta_mean,ckta_std,fisher_mean,fisher_std,"
        "inter_intra_mean,inter_intra_std,sil_mean,sil_std,"
        "h_norm_mean,h_norm_std,tv_pair_mean,tv_pair_std,"
        "tv_pair_norm_mean,tv_pair_norm_std\n";
  for (const auto& r : reports) {
    os << r.dataset << ',' << encoder_name(r.encoder) << ',' << r.n_qubits
       << ',' << r.per_fold.size() << ',' << fmt(r.ckta.mean) << ','
       << fmt(r.ckta.stddev) << ',' << fmt(r.fisher.mean) << ','
       << fmt(r.fisher.stddev) << ',' << fmt(r.inter_intra.mean) << ','
       << fmt(r.inter_intra.stddev) << ',' << fmt(r.silhouette.mean) << ','
       << fmt(r.silhouette.stddev) << ',' << fmt(r.h_norm.mean) << ','
       << fmt(r.h_norm.stddev) << ',' << fmt(r.tv_pair.mean) << ','
       << fmt(r.tv_pair.stddev) << ',' << fmt(r.tv_pair_norm.mean) << ','
       << fmt(r.tv_pair_norm.stddev) << '\n';
  }
  return os.str();
}

std::string perf_reports_to_csv(const std::vector<PerfReport>& reports) {
  std::ostringstream os;
  os << "dataset,encoder,n_qubits,folds,"
        "accuracy_mean,accuracy_std,precision_mean,precision_std,"
        "recall_mean,recall_std,auc_mean,auc_std\n";
  for (const auto& r : reports) {
    os << r.dataset << ',' << encoder_name(r.encoder) << ',' << r.n_qubits
       << ',' << r.per_fold.size() << ',' << fmt(r.accuracy.mean) << ','
       << fmt(r.accuracy.stddev) << ',' << fmt(r.precision.mean) << ','
       << fmt(r.precision.stddev) << ',' << fmt(r.recall.mean) << ','
       << fmt(r.recall.stddev) << ',' << fmt(r.auc.mean) << ','
       << fmt(r.auc.stddev) << '\n';
  }
  return os.str();
}

}  // namespace spate
