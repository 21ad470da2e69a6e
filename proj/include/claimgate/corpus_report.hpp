#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "claimgate/corpus.hpp"
#include "claimgate/run_config.hpp"

namespace claimgate {

// {run_config, summary, rejections, excluded, estimates, curves}
nlohmann::ordered_json corpus_report_json(const CorpusAnalysis& analysis, const RunConfig& config);

// Flat per-record table covering every preset.
std::string estimates_csv(const CorpusAnalysis& analysis, const RunConfig& config);

// Threshold curves (task x level) for one preset.
std::string curve_csv(const CorpusAnalysis::PresetResult& result, const RunConfig& config);

// Ingestion rejections and eligibility exclusions, with reason codes.
std::string rejections_csv(const CorpusAnalysis& analysis, const RunConfig& config);

// Writes report.json, estimates.csv, curve_<preset>.csv and rejections.csv
// into `out_dir` (created if missing). Returns the paths written.
std::vector<std::filesystem::path> write_corpus_bundle(const CorpusAnalysis& analysis,
                                                       const RunConfig& config,
                                                       const std::filesystem::path& out_dir);

// Writes `content` to `path`, throwing ArgumentError on I/O failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace claimgate
