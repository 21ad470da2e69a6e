#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimgate/classification.hpp"
#include "claimgate/congruence.hpp"
#include "claimgate/pfc_types.hpp"
#include "claimgate/segmentation.hpp"

namespace claimgate {

enum class Split { train_test, train_val_test, cv_plus_test, cv_only, none_reported };
enum class MetricScale { unit, percent };

std::string_view to_string(Split s) noexcept;
std::string_view to_string(MetricScale s) noexcept;
std::optional<Split> parse_split(std::string_view s) noexcept;
std::optional<MetricScale> parse_metric_scale(std::string_view s) noexcept;

// One extracted comparison. Metric values and SDs are stored on the unit
// scale; `metric_scale` records the scale they were reported on.
struct CorpusRecord {
    std::size_t line = 0;  // 1-based line in the source file
    std::string paper_id;
    Task task = Task::classification;
    Split split = Split::train_test;
    std::optional<std::int64_t> n_test;
    std::optional<double> metric_a;
    std::optional<double> metric_b;
    std::optional<double> sd_a;
    std::optional<double> sd_b;
    MetricScale metric_scale = MetricScale::unit;

    std::optional<double> delta() const;
};

inline constexpr int kCorpusSchemaVersion = 1;
inline constexpr std::string_view kCorpusHeader =
    "paper_id,task,split,n_test,metric_a,metric_b,sd_a,sd_b,metric_scale";

// A row dropped during ingestion (stage "ingest") or eligibility filtering
// (stage "filter"), with a machine-readable reason code.
struct Rejection {
    std::size_t line = 0;
    std::string paper_id;
    std::string reason;
    std::string detail;
};

struct IngestResult {
    std::vector<CorpusRecord> records;
    std::vector<Rejection> rejections;
};

// Parses the corpus CSV. A malformed header or unsupported schema version
// throws ArgumentError; a malformed row is listed in `rejections` and parsing
// continues.
IngestResult ingest_corpus(std::istream& in, int schema_version = kCorpusSchemaVersion);
IngestResult ingest_corpus(const std::filesystem::path& path,
                           int schema_version = kCorpusSchemaVersion);

struct Exclusion {
    CorpusRecord record;
    std::string reason;
};

struct EligibilitySplit {
    std::vector<CorpusRecord> eligible;
    std::vector<Exclusion> excluded;
};

// Keeps records with an independent test set, both metric values and a test
// size. Exclusion reasons: split-not-reported, no-independent-test,
// missing-metric, missing-test-size. Input order is preserved on both sides.
EligibilitySplit filter_eligible(std::span<const CorpusRecord> records);

struct CorpusPfcOptions {
    Preset preset = Preset::median;
    // Applied to segmentation records. With prefer_reported_sd, records that
    // report both SDs use them and only the rest fall back to this source.
    SdSource sd_source = SdSource::imputed_point;
    bool prefer_reported_sd = true;
    SdImputationModel sd_model;
    std::uint64_t k = kDefaultDraws;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    bool round_counts = false;
};

struct RecordEstimate {
    CorpusRecord record;
    double congruence_assumed = 0.0;
    std::optional<PfcEstimate> estimate;
    std::optional<SdPair> sds_used;
    std::string sd_origin;  // "reported" or an imputed SD source; empty for classification
    std::string error;      // reason code when no estimate could be computed
};

// One estimate per record, in input order. Classification congruence is
// clamped per record; each Monte Carlo stream is derived from the seed and the
// record's inputs, so results are independent of worker count and position.
// Per-record failures are reported in `error`, never thrown.
std::vector<RecordEstimate> corpus_pfc(std::span<const CorpusRecord> eligible,
                                       const CorpusPfcOptions& options);

// Cumulative share of estimates strictly above each threshold.
struct ThresholdCurve {
    std::vector<double> thresholds;
    std::vector<double> cumulative_pct;
    std::vector<std::size_t> exceeding;
    std::size_t total = 0;
};

// Thresholds must be ascending and in (0, 0.5]; estimates non-empty.
ThresholdCurve threshold_curve(std::span<const double> estimates,
                               std::span<const double> thresholds);

std::vector<double> default_thresholds();

// Probabilities of records that produced an estimate, optionally restricted
// to one task.
std::vector<double> row_level_probabilities(std::span<const RecordEstimate> estimates,
                                            std::optional<Task> task = std::nullopt);

// One probability per paper_id (the maximum over its rows), in order of first
// appearance.
std::vector<double> paper_level_probabilities(std::span<const RecordEstimate> estimates,
                                              std::optional<Task> task = std::nullopt);

struct CorpusSummary {
    std::size_t n_total = 0;
    std::size_t n_eligible = 0;
    std::optional<double> median_delta;
    std::optional<double> mean_delta;
    std::optional<Quartiles> test_size;
};

// Deltas are taken over records reporting both metrics, test-size quartiles
// over records reporting n_test. Throws ArgumentError on empty input.
CorpusSummary summarize(std::span<const CorpusRecord> records);

// Everything the `corpus` command reports, computed in one pass.
struct CorpusAnalysis {
    struct PresetResult {
        Preset preset = Preset::median;
        std::vector<RecordEstimate> estimates;
        // Keyed by "<task>/<level>", level in {row, paper}.
        std::map<std::string, ThresholdCurve> curves;
    };

    IngestResult ingest;
    EligibilitySplit split;
    std::vector<double> thresholds;
    std::map<std::string, CorpusSummary> summaries;  // keyed by task name
    std::vector<PresetResult> presets;
};

CorpusAnalysis analyze_corpus(IngestResult ingest, std::span<const Preset> presets,
                              std::span<const double> thresholds, const CorpusPfcOptions& options,
                              std::optional<Task> only_task = std::nullopt);

}  // namespace claimgate
