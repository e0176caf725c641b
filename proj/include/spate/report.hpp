#pragma once

#include <nlohmann/json_fwd.hpp>
#include <string>
#include <vector>

#include "spate/harness.hpp"

namespace spate {

// Echo of the full configuration plus run metadata; enough to reproduce the
// run bit-for-bit (the timestamp is the only field allowed to differ).
nlohmann::json run_manifest(const ExperimentConfig& cfg,
                            const std::vector<std::string>& output_paths);

nlohmann::json config_to_json(const ExperimentConfig& cfg);
ExperimentConfig config_from_json(const nlohmann::json& j);

nlohmann::json metric_reports_to_json(const std::vector<MetricReport>& reports,
                                      const nlohmann::json& manifest);
nlohmann::json perf_reports_to_json(const std::vector<PerfReport>& reports,
                                    const nlohmann::json& manifest);

// CSV mirrors the quality table column order: CKTA, Fisher, Inter/Intra,
// Sil, H_norm, TVpair (and TVpair_norm, reported because register sizes
// differ across encoders).
std::string metric_reports_to_csv(const std::vector<MetricReport>& reports);
std::string perf_reports_to_csv(const std::vector<PerfReport>& reports);

}  // namespace spate
