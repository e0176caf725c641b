#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <omp.h>

#include "spate/errors.hpp"
#include "spate/harness.hpp"
#include "spate/report.hpp"

namespace {

using nlohmann::json;
using namespace spate;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::InvalidArgument: return 2;
    case ErrorKind::Data: return 3;
    case ErrorKind::Capacity: return 4;
    case ErrorKind::Degenerate: return 3;
    case ErrorKind::UndefinedMetric: return 3;
  }
  return 5;
}

struct CommonArgs {
  std::string dataset;
  std::string csv;
  std::string label_column = "label";
  std::string config_path;
  std::string encoders = "spate,angle,amplitude";
  std::string out = "report";
  std::string format = "json,csv";
  int folds = 5;
  std::uint64_t seed = 42;
  int n = 300;
  int jobs = 0;
  int sample_index = 0;
  std::string encoder = "spate";
};

std::string resolve_csv(const std::string& path) {
  namespace fs = std::filesystem;
  if (path.empty() || fs::exists(path)) return path;
  if (const char* dir = std::getenv("SPATE_DATA_DIR")) {
    const fs::path candidate = fs::path(dir) / path;
    if (fs::exists(candidate)) return candidate.string();
  }
  return path;  // load_csv reports the missing file
}

ExperimentConfig build_config(const CommonArgs& args, StudyKind study) {
  ExperimentConfig cfg;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) throw_data("cannot open config file: " + args.config_path);
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw_data("config parse error: " + std::string(e.what()));
    }
    cfg = config_from_json(j);
  }
  // flags override config-file values
  if (!args.csv.empty()) {
    cfg.dataset.name = "csv";
    cfg.dataset.csv_path = resolve_csv(args.csv);
    cfg.dataset.label_column = args.label_column;
  } else if (!args.dataset.empty()) {
    cfg.dataset.name = args.dataset;
  }
  if (cfg.dataset.name.empty())
    throw_invalid("no dataset given (use --dataset or --csv)");
  cfg.dataset.n = args.n;
  cfg.folds = args.folds;
  cfg.seed = args.seed;
  cfg.study = study;
  cfg.encoders.clear();
  std::stringstream ss(args.encoders);
  std::string tok;
  while (std::getline(ss, tok, ',')) cfg.encoders.push_back(parse_encoder(tok));
  cfg.validate();
  return cfg;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw_data("cannot write output file: " + path);
  out << content;
}

int cmd_encode(const CommonArgs& args) {
  ExperimentConfig cfg = build_config(args, StudyKind::Quality);
  const EncoderKind encoder = parse_encoder(args.encoder);
  const Dataset ds = realize_dataset(cfg.dataset, cfg.seed);
  if (args.sample_index < 0 || args.sample_index >= ds.num_samples())
    throw_invalid("sample index out of range");

  // inspection mode: preprocessing fitted on the full dataset, no tuning
  std::vector<int> all(ds.num_samples());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  FoldFit fit;
  fit.standardize = standardize_fit(ds.X);
  Eigen::MatrixXd Z = standardize_apply(fit.standardize, ds.X);
  const int d = static_cast<int>(ds.num_features());
  if (d > 8) {
    fit.pca = pca_fit(Z, 8);
    Z = pca_apply(*fit.pca, Z);
  }
  fit.d_enc = static_cast<int>(Z.cols());
  fit.n_qubits = encoder == EncoderKind::Spate ? fit.d_enc + cfg.n_bins
                                               : fit.d_enc;
  if (encoder == EncoderKind::Spate) {
    fit.minmax = minmax_fit(Z);
    Z = minmax_apply(*fit.minmax, Z);
  }

  const Eigen::VectorXd x = Z.row(args.sample_index).transpose();
  EncoderConfig ec;
  ec.kind = encoder;
  ec.n_qubits = fit.n_qubits;
  ec.beta_scale = cfg.beta_scale;
  ec.seeds = cfg.spate_seeds;
  LifConfig lif;
  lif.horizon = cfg.horizon;
  lif.dt = cfg.dt;
  lif.n_bins = cfg.n_bins;
  ec.lif = lif;

  json out;
  out["manifest"] = run_manifest(cfg, {args.out});
  out["dataset"] = ds.name;
  out["encoder"] = encoder_name(encoder);
  out["sample_index"] = args.sample_index;
  out["label"] = ds.y[args.sample_index];
  out["n_qubits"] = fit.n_qubits;

  auto master = RngStream::from_key(cfg.seed);
  switch (encoder) {
    case EncoderKind::Spate: {
      const ProbEmbedding emb = spate_embed(x, ec, master.child(0));
      out["p"] = emb.p;
      const SpateParams params =
          extract_params(x, ec.lif, master.child(0).child(0));
      out["spate_params"] = {
          {"alpha", std::vector<double>(params.alpha.data(),
                                        params.alpha.data() + params.alpha.size())},
          {"phi", std::vector<double>(params.phi.data(),
                                      params.phi.data() + params.phi.size())}};
      std::vector<std::vector<double>> bins;
      for (Eigen::Index i = 0; i < params.bins.rows(); ++i)
        bins.emplace_back(params.bins.row(i).begin(), params.bins.row(i).end());
      out["spate_params"]["bins"] = bins;
      break;
    }
    case EncoderKind::Angle:
      out["p"] = angle_embed(x).p;
      break;
    case EncoderKind::Amplitude:
      out["p"] = amplitude_embed(x, fit.n_qubits).p;
      break;
  }

  if (args.out == "-")
    std::cout << out.dump(2) << "\n";
  else
    write_file(args.out, out.dump(2) + "\n");
  return 0;
}

int cmd_study(const CommonArgs& args, StudyKind study) {
  const ExperimentConfig cfg = build_config(args, study);
  const bool want_json = args.format.find("json") != std::string::npos;
  const bool want_csv = args.format.find("csv") != std::string::npos;
  if (!want_json && !want_csv) throw_invalid("format must include json or csv");

  std::vector<std::string> paths;
  if (want_json) paths.push_back(args.out + ".json");
  if (want_csv) paths.push_back(args.out + ".csv");
  const json manifest = run_manifest(cfg, paths);

  if (study == StudyKind::Quality) {
    const auto reports = run_quality_study(cfg);
    if (want_json)
      write_file(args.out + ".json",
                 metric_reports_to_json(reports, manifest).dump(2) + "\n");
    if (want_csv) write_file(args.out + ".csv", metric_reports_to_csv(reports));
  } else {
    const auto reports = run_qnn_study(cfg);
    if (want_json)
      write_file(args.out + ".json",
                 perf_reports_to_json(reports, manifest).dump(2) + "\n");
    if (want_csv) write_file(args.out + ".csv", perf_reports_to_csv(reports));
  }
  for (const auto& p : paths) std::cout << "wrote " << p << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SPATE encoding studies: spike-driven quantum feature "
               "preparation, baselines, metrics, and hybrid-QNN benchmarks"};
  app.require_subcommand(1);
  CommonArgs args;

  auto add_dataset_flags = [&](CLI::App* cmd) {
    cmd->add_option("--dataset", args.dataset,
                    "synthetic dataset: moons, circles, blobs");
    cmd->add_option("--csv", args.csv, "CSV dataset path");
    cmd->add_option("--label-column", args.label_column,
                    "label column name or index (CSV)");
    cmd->add_option("--config", args.config_path, "JSON config file");
    cmd->add_option("--seed", args.seed, "global seed");
    cmd->add_option("--n", args.n, "synthetic sample count");
    cmd->add_option("--jobs", args.jobs, "worker thread count (0 = default)");
  };

  CLI::App* encode = app.add_subcommand("encode", "embed one sample");
  add_dataset_flags(encode);
  encode->add_option("--encoder", args.encoder, "spate, angle, or amplitude");
  encode->add_option("--sample-index", args.sample_index, "row to encode");
  encode->add_option("--out", args.out, "output JSON path ('-' for stdout)");

  CLI::App* quality = app.add_subcommand("quality", "encoding-quality study");
  CLI::App* qnn = app.add_subcommand("qnn", "hybrid-QNN classification study");
  for (CLI::App* cmd : {quality, qnn}) {
    add_dataset_flags(cmd);
    cmd->add_option("--encoders", args.encoders, "comma-separated encoder list");
    cmd->add_option("--folds", args.folds, "cross-validation folds");
    cmd->add_option("--out", args.out, "output path prefix");
    cmd->add_option("--format", args.format, "json, csv, or json,csv");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (args.jobs > 0) omp_set_num_threads(args.jobs);
    if (encode->parsed()) return cmd_encode(args);
    if (quality->parsed()) return cmd_study(args, spate::StudyKind::Quality);
    if (qnn->parsed()) return cmd_study(args, spate::StudyKind::Qnn);
  } catch (const spate::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 5;
  }
  return 0;
}
