#include "claimgate/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "claimgate/csv.hpp"
#include "claimgate/errors.hpp"
#include "claimgate/parallel.hpp"

namespace claimgate {

std::string_view to_string(Split s) noexcept {
    switch (s) {
        case Split::train_test: return "train-test";
        case Split::train_val_test: return "train-val-test";
        case Split::cv_plus_test: return "cv-plus-test";
        case Split::cv_only: return "cv-only";
        case Split::none_reported: return "none-reported";
    }
    return "none-reported";
}

std::string_view to_string(MetricScale s) noexcept {
    return s == MetricScale::unit ? "unit" : "percent";
}

std::optional<Split> parse_split(std::string_view s) noexcept {
    if (s == "train-test") return Split::train_test;
    if (s == "train-val-test") return Split::train_val_test;
    if (s == "cv-plus-test") return Split::cv_plus_test;
    if (s == "cv-only") return Split::cv_only;
    if (s == "none-reported") return Split::none_reported;
    return std::nullopt;
}

std::optional<MetricScale> parse_metric_scale(std::string_view s) noexcept {
    if (s == "unit") return MetricScale::unit;
    if (s == "percent") return MetricScale::percent;
    return std::nullopt;
}

std::optional<double> CorpusRecord::delta() const {
    if (!metric_a || !metric_b) return std::nullopt;
    return *metric_a - *metric_b;
}

namespace {

enum Column { kPaperId, kTask, kSplit, kNTest, kMetricA, kMetricB, kSdA, kSdB, kScale, kColumns };

struct RowError {
    std::string reason;
    std::string detail;
};

// Empty field -> nullopt; unparseable -> RowError.
std::optional<double> optional_number(const std::string& field, std::string_view name) {
    if (csv::trim(field).empty()) return std::nullopt;
    auto v = csv::parse_double(field);
    if (!v) throw RowError{"bad-number", std::string(name) + " is not a number"};
    return v;
}

CorpusRecord parse_row(const std::vector<std::string>& f, std::size_t line) {
    CorpusRecord r;
    r.line = line;
    r.paper_id = std::string(csv::trim(f[kPaperId]));
    if (r.paper_id.empty()) throw RowError{"missing-paper-id", "paper_id is empty"};

    const auto task = parse_task(csv::trim(f[kTask]));
    if (!task) throw RowError{"bad-task", "unknown task '" + f[kTask] + "'"};
    r.task = *task;

    const auto split = parse_split(csv::trim(f[kSplit]));
    if (!split) throw RowError{"bad-split", "unknown split '" + f[kSplit] + "'"};
    r.split = *split;

    const auto scale_field = csv::trim(f[kScale]);
    const auto scale = scale_field.empty() ? std::optional{MetricScale::unit}
                                           : parse_metric_scale(scale_field);
    if (!scale) throw RowError{"bad-scale", "unknown metric_scale '" + f[kScale] + "'"};
    r.metric_scale = *scale;

    if (!csv::trim(f[kNTest]).empty()) {
        const auto n = csv::parse_int(f[kNTest]);
        if (!n) throw RowError{"bad-number", "n_test is not an integer"};
        if (*n < 1) throw RowError{"bad-test-size", "n_test must be >= 1"};
        r.n_test = *n;
    }

    const double divisor = r.metric_scale == MetricScale::percent ? 100.0 : 1.0;
    auto metric = [&](Column c, std::string_view name) -> std::optional<double> {
        auto v = optional_number(f[c], name);
        if (!v) return v;
        const double upper = r.metric_scale == MetricScale::percent ? 100.0 : 1.0;
        if (*v < 0.0 || *v > upper) {
            throw RowError{"metric-out-of-range", std::string(name) + " outside its scale range"};
        }
        return *v / divisor;
    };
    r.metric_a = metric(kMetricA, "metric_a");
    r.metric_b = metric(kMetricB, "metric_b");

    auto sd = [&](Column c, std::string_view name) -> std::optional<double> {
        auto v = optional_number(f[c], name);
        if (!v) return v;
        if (*v < 0.0) throw RowError{"negative-sd", std::string(name) + " is negative"};
        return *v / divisor;
    };
    r.sd_a = sd(kSdA, "sd_a");
    r.sd_b = sd(kSdB, "sd_b");

    if (r.metric_a && r.metric_b && *r.metric_b > *r.metric_a) {
        throw RowError{"rank-order-violation", "metric_b exceeds metric_a"};
    }
    return r;
}

}  // namespace

IngestResult ingest_corpus(std::istream& in, int schema_version) {
    if (schema_version != kCorpusSchemaVersion) {
        throw ArgumentError("unsupported corpus schema version " + std::to_string(schema_version));
    }
    std::string line;
    if (!csv::read_line(in, line)) throw ArgumentError("corpus file is empty");
    if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
    const auto header = csv::split_line(line);
    const auto expected = *csv::split_line(kCorpusHeader);
    bool header_ok = header && header->size() == expected.size();
    for (std::size_t i = 0; header_ok && i < expected.size(); ++i) {
        header_ok = csv::trim((*header)[i]) == expected[i];
    }
    if (!header_ok) {
        throw ArgumentError("malformed corpus header; expected `" + std::string(kCorpusHeader) + "`");
    }

    IngestResult result;
    std::size_t line_no = 1;
    while (csv::read_line(in, line)) {
        ++line_no;
        if (csv::trim(line).empty()) continue;
        const auto fields = csv::split_line(line);
        if (!fields || fields->size() != kColumns) {
            std::string id = fields && !fields->empty() ? std::string(csv::trim(fields->front())) : "";
            result.rejections.push_back(
                {line_no, id, "field-count",
                 "expected " + std::to_string(kColumns) + " fields" +
                     (fields ? ", got " + std::to_string(fields->size()) : ", unterminated quote")});
            continue;
        }
        try {
            result.records.push_back(parse_row(*fields, line_no));
        } catch (const RowError& e) {
            result.rejections.push_back(
                {line_no, std::string(csv::trim((*fields)[kPaperId])), e.reason, e.detail});
        }
    }
    return result;
}

IngestResult ingest_corpus(const std::filesystem::path& path, int schema_version) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open corpus file: " + path.string());
    return ingest_corpus(in, schema_version);
}

EligibilitySplit filter_eligible(std::span<const CorpusRecord> records) {
    EligibilitySplit out;
    for (const auto& r : records) {
        const char* reason = nullptr;
        if (r.split == Split::none_reported) {
            reason = "split-not-reported";
        } else if (r.split == Split::cv_only) {
            reason = "no-independent-test";
        } else if (!r.metric_a || !r.metric_b) {
            reason = "missing-metric";
        } else if (!r.n_test) {
            reason = "missing-test-size";
        }
        if (reason) {
            out.excluded.push_back({r, reason});
        } else {
            out.eligible.push_back(r);
        }
    }
    return out;
}

namespace {

RecordEstimate estimate_record(const CorpusRecord& r, const CorpusPfcOptions& options) {
    RecordEstimate out;
    out.record = r;
    const CongruenceAssumption preset = CongruenceAssumption::preset(r.task, options.preset);
    out.congruence_assumed = preset.value;
    if (!r.n_test || !r.metric_a || !r.metric_b) {
        out.error = "ineligible";
        return out;
    }
    try {
        if (r.task == Task::classification) {
            const ClassificationComparison cmp{*r.n_test, *r.metric_a, *r.metric_b};
            const auto assumed = clamp_congruence(cmp, preset);
            const RngStream stream{options.seed, comparison_stream_id(cmp, assumed.value)};
            out.estimate = pfc_classification(cmp, assumed, options.k, stream,
                                              {options.round_counts, 1});
        } else {
            const SegmentationComparison cmp{*r.n_test, *r.metric_a, *r.metric_b, r.sd_a, r.sd_b};
            if (cmp.n < 2) {
                out.error = "test-size-too-small";
                return out;
            }
            SdSource source = options.sd_source;
            if (options.prefer_reported_sd && r.sd_a && r.sd_b) source = SdSource::reported;
            if (source == SdSource::reported && !(r.sd_a && r.sd_b)) {
                out.error = "missing-sd";
                return out;
            }
            out.sds_used = resolve_sds(cmp, source, options.sd_model);
            out.sd_origin = std::string(to_string(source));
            out.estimate = pfc_segmentation(cmp, preset, *out.sds_used);
        }
    } catch (const DegenerateError&) {
        out.error = "degenerate-input";
    } catch (const DomainError&) {
        out.error = "domain-error";
    } catch (const ArgumentError&) {
        out.error = "invalid-record";
    }
    return out;
}

}  // namespace

std::vector<RecordEstimate> corpus_pfc(std::span<const CorpusRecord> eligible,
                                       const CorpusPfcOptions& options) {
    if (options.k == 0) throw ArgumentError("Monte Carlo draw count k must be >= 1");
    std::vector<RecordEstimate> out(eligible.size());
    parallel_for(eligible.size(), options.workers,
                 [&](std::size_t i) { out[i] = estimate_record(eligible[i], options); });
    return out;
}

std::vector<double> default_thresholds() {
    return {0.01, 0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50};
}

ThresholdCurve threshold_curve(std::span<const double> estimates,
                               std::span<const double> thresholds) {
    if (estimates.empty()) throw ArgumentError("threshold curve of an empty estimate set");
    for (std::size_t i = 0; i < thresholds.size(); ++i) {
        if (!(thresholds[i] > 0.0 && thresholds[i] <= 0.5)) {
            throw ArgumentError("thresholds must lie in (0, 0.5]");
        }
        if (i > 0 && !(thresholds[i] > thresholds[i - 1])) {
            throw ArgumentError("thresholds must be strictly ascending");
        }
    }
    ThresholdCurve curve;
    curve.total = estimates.size();
    curve.thresholds.assign(thresholds.begin(), thresholds.end());
    for (double t : thresholds) {
        const auto count = static_cast<std::size_t>(
            std::count_if(estimates.begin(), estimates.end(), [t](double p) { return p > t; }));
        curve.exceeding.push_back(count);
        curve.cumulative_pct.push_back(100.0 * static_cast<double>(count) /
                                       static_cast<double>(curve.total));
    }
    return curve;
}

std::vector<double> row_level_probabilities(std::span<const RecordEstimate> estimates,
                                            std::optional<Task> task) {
    std::vector<double> out;
    for (const auto& e : estimates) {
        if (!e.estimate || (task && e.record.task != *task)) continue;
        out.push_back(e.estimate->probability);
    }
    return out;
}

std::vector<double> paper_level_probabilities(std::span<const RecordEstimate> estimates,
                                              std::optional<Task> task) {
    std::vector<double> out;
    std::unordered_map<std::string, std::size_t> index;
    for (const auto& e : estimates) {
        if (!e.estimate || (task && e.record.task != *task)) continue;
        const double p = e.estimate->probability;
        auto [it, inserted] = index.try_emplace(e.record.paper_id, out.size());
        if (inserted) {
            out.push_back(p);
        } else {
            out[it->second] = std::max(out[it->second], p);
        }
    }
    return out;
}

CorpusSummary summarize(std::span<const CorpusRecord> records) {
    if (records.empty()) throw ArgumentError("cannot summarize an empty corpus");
    CorpusSummary s;
    s.n_total = records.size();
    s.n_eligible = filter_eligible(records).eligible.size();
    std::vector<double> deltas;
    std::vector<double> sizes;
    for (const auto& r : records) {
        if (auto d = r.delta()) deltas.push_back(*d);
        if (r.n_test) sizes.push_back(static_cast<double>(*r.n_test));
    }
    if (!deltas.empty()) {
        s.median_delta = quantile(deltas, 0.5);
        s.mean_delta = std::accumulate(deltas.begin(), deltas.end(), 0.0) /
                       static_cast<double>(deltas.size());
    }
    if (!sizes.empty()) s.test_size = quartiles(sizes);
    return s;
}

CorpusAnalysis analyze_corpus(IngestResult ingest, std::span<const Preset> presets,
                              std::span<const double> thresholds, const CorpusPfcOptions& options,
                              std::optional<Task> only_task) {
    CorpusAnalysis a;
    if (only_task) {
        std::erase_if(ingest.records,
                      [&](const CorpusRecord& r) { return r.task != *only_task; });
    }
    a.ingest = std::move(ingest);
    a.thresholds.assign(thresholds.begin(), thresholds.end());
    a.split = filter_eligible(a.ingest.records);

    for (Task task : {Task::classification, Task::segmentation}) {
        std::vector<CorpusRecord> of_task;
        for (const auto& r : a.ingest.records) {
            if (r.task == task) of_task.push_back(r);
        }
        if (!of_task.empty()) a.summaries[std::string(to_string(task))] = summarize(of_task);
    }

    for (Preset preset : presets) {
        CorpusAnalysis::PresetResult pr;
        pr.preset = preset;
        auto opts = options;
        opts.preset = preset;
        pr.estimates = corpus_pfc(a.split.eligible, opts);
        for (Task task : {Task::classification, Task::segmentation}) {
            const auto rows = row_level_probabilities(pr.estimates, task);
            if (rows.empty()) continue;
            const std::string key(to_string(task));
            pr.curves[key + "/row"] = threshold_curve(rows, thresholds);
            pr.curves[key + "/paper"] =
                threshold_curve(paper_level_probabilities(pr.estimates, task), thresholds);
        }
        a.presets.push_back(std::move(pr));
    }
    return a;
}

}  // namespace claimgate
