#include "claimgate/corpus_report.hpp"

#include <fmt/format.h>

#include <fstream>

#include "claimgate/csv.hpp"
#include "claimgate/errors.hpp"

namespace claimgate {

namespace {

using ojson = nlohmann::ordered_json;

template <class T>
ojson opt_json(const std::optional<T>& v) {
    return v ? ojson(*v) : ojson(nullptr);
}

template <class T>
std::string opt_csv(const std::optional<T>& v) {
    return v ? fmt::format("{}", *v) : std::string();
}

ojson summary_json(const CorpusSummary& s) {
    ojson j;
    j["n_total"] = s.n_total;
    j["n_eligible"] = s.n_eligible;
    j["median_delta"] = opt_json(s.median_delta);
    j["mean_delta"] = opt_json(s.mean_delta);
    if (s.test_size) {
        j["test_size_quartiles"] = {{"q1", s.test_size->q1},
                                    {"median", s.test_size->median},
                                    {"q3", s.test_size->q3}};
    } else {
        j["test_size_quartiles"] = nullptr;
    }
    return j;
}

ojson record_json(const CorpusRecord& r) {
    ojson j;
    j["line"] = r.line;
    j["paper_id"] = r.paper_id;
    j["task"] = to_string(r.task);
    j["split"] = to_string(r.split);
    j["n_test"] = opt_json(r.n_test);
    j["metric_a"] = opt_json(r.metric_a);
    j["metric_b"] = opt_json(r.metric_b);
    j["sd_a"] = opt_json(r.sd_a);
    j["sd_b"] = opt_json(r.sd_b);
    j["metric_scale"] = to_string(r.metric_scale);
    return j;
}

ojson estimate_json(const RecordEstimate& e) {
    ojson j;
    j["line"] = e.record.line;
    j["paper_id"] = e.record.paper_id;
    j["task"] = to_string(e.record.task);
    j["congruence_assumed"] = e.congruence_assumed;
    if (e.estimate) {
        const auto& est = *e.estimate;
        j["congruence_used"] = est.congruence_used.value;
        j["congruence_provenance"] = to_string(est.congruence_used.provenance);
        j["clamped"] = est.congruence_used.clamped;
        j["method"] = to_string(est.method);
        j["probability"] = est.probability;
        j["std_err"] = est.std_err;
        j["k"] = est.k;
        j["degenerate"] = est.degenerate;
    } else {
        j["probability"] = nullptr;
    }
    if (e.sds_used) {
        j["sd_a_used"] = e.sds_used->a;
        j["sd_b_used"] = e.sds_used->b;
        j["sd_origin"] = e.sd_origin;
    }
    j["error"] = e.error.empty() ? ojson(nullptr) : ojson(e.error);
    return j;
}

ojson curve_json(const ThresholdCurve& c) {
    ojson j;
    j["total"] = c.total;
    j["thresholds"] = c.thresholds;
    j["exceeding"] = c.exceeding;
    j["cumulative_pct"] = c.cumulative_pct;
    return j;
}

std::string header_block(const RunConfig& config) {
    std::string out;
    for (const auto& line : config.comment_lines()) out += line + "\n";
    return out;
}

std::string estimate_flag(const RecordEstimate& e) {
    if (!e.error.empty()) return "error:" + e.error;
    std::string flag;
    if (e.estimate->congruence_used.clamped) flag = "clamped";
    if (e.estimate->degenerate) flag += flag.empty() ? "degenerate" : ";degenerate";
    return flag;
}

}  // namespace

ojson corpus_report_json(const CorpusAnalysis& analysis, const RunConfig& config) {
    ojson j;
    j["run_config"] = config.to_json();

    ojson summary = ojson::object();
    for (const auto& [task, s] : analysis.summaries) summary[task] = summary_json(s);
    j["summary"] = std::move(summary);

    ojson rejections = ojson::array();
    for (const auto& r : analysis.ingest.rejections) {
        rejections.push_back(
            {{"line", r.line}, {"paper_id", r.paper_id}, {"reason", r.reason}, {"detail", r.detail}});
    }
    j["rejections"] = std::move(rejections);

    ojson excluded = ojson::array();
    for (const auto& e : analysis.split.excluded) {
        auto rec = record_json(e.record);
        rec["reason"] = e.reason;
        excluded.push_back(std::move(rec));
    }
    j["excluded"] = std::move(excluded);
    j["n_eligible"] = analysis.split.eligible.size();
    j["thresholds"] = analysis.thresholds;

    ojson estimates = ojson::object();
    ojson curves = ojson::object();
    for (const auto& pr : analysis.presets) {
        const std::string key(to_string(pr.preset));
        ojson rows = ojson::array();
        for (const auto& e : pr.estimates) rows.push_back(estimate_json(e));
        estimates[key] = std::move(rows);
        ojson pc = ojson::object();
        for (const auto& [name, curve] : pr.curves) pc[name] = curve_json(curve);
        curves[key] = std::move(pc);
    }
    j["estimates"] = std::move(estimates);
    j["curves"] = std::move(curves);
    return j;
}

std::string estimates_csv(const CorpusAnalysis& analysis, const RunConfig& config) {
    std::string out = header_block(config);
    out +=
        "preset,line,paper_id,task,n_test,metric_a,metric_b,sd_a_used,sd_b_used,congruence_used,"
        "method,probability,std_err,flag\n";
    for (const auto& pr : analysis.presets) {
        for (const auto& e : pr.estimates) {
            const auto& r = e.record;
            out += fmt::format("{},{},{},{},{},{},{},", to_string(pr.preset), r.line,
                               csv::escape(r.paper_id), to_string(r.task), opt_csv(r.n_test),
                               opt_csv(r.metric_a), opt_csv(r.metric_b));
            if (e.sds_used) {
                out += fmt::format("{},{},", e.sds_used->a, e.sds_used->b);
            } else {
                out += ",,";
            }
            if (e.estimate) {
                out += fmt::format("{},{},{},{},", e.estimate->congruence_used.value,
                                   to_string(e.estimate->method), e.estimate->probability,
                                   e.estimate->std_err);
            } else {
                out += fmt::format("{},,,,", e.congruence_assumed);
            }
            out += estimate_flag(e) + "\n";
        }
    }
    return out;
}

std::string curve_csv(const CorpusAnalysis::PresetResult& result, const RunConfig& config) {
    std::string out = header_block(config);
    out += "# preset: " + std::string(to_string(result.preset)) + "\n";
    out += "task,level,threshold,exceeding,total,cumulative_pct\n";
    for (const auto& [name, curve] : result.curves) {
        const auto slash = name.find('/');
        const auto task = name.substr(0, slash);
        const auto level = name.substr(slash + 1);
        for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
            out += fmt::format("{},{},{},{},{},{}\n", task, level, curve.thresholds[i],
                               curve.exceeding[i], curve.total, curve.cumulative_pct[i]);
        }
    }
    return out;
}

std::string rejections_csv(const CorpusAnalysis& analysis, const RunConfig& config) {
    std::string out = header_block(config);
    out += "stage,line,paper_id,reason,detail\n";
    for (const auto& r : analysis.ingest.rejections) {
        out += fmt::format("ingest,{},{},{},{}\n", r.line, csv::escape(r.paper_id), r.reason,
                           csv::escape(r.detail));
    }
    for (const auto& e : analysis.split.excluded) {
        out += fmt::format("filter,{},{},{},\n", e.record.line, csv::escape(e.record.paper_id),
                           e.reason);
    }
    return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ArgumentError("cannot write " + path.string());
    out << content;
    if (!out) throw ArgumentError("failed writing " + path.string());
}

std::vector<std::filesystem::path> write_corpus_bundle(const CorpusAnalysis& analysis,
                                                       const RunConfig& config,
                                                       const std::filesystem::path& out_dir) {
    std::filesystem::create_directories(out_dir);
    std::vector<std::filesystem::path> written;
    auto emit = [&](const std::string& name, const std::string& content) {
        const auto p = out_dir / name;
        write_text_file(p, content);
        written.push_back(p);
    };
    emit("report.json", corpus_report_json(analysis, config).dump(2) + "\n");
    emit("estimates.csv", estimates_csv(analysis, config));
    for (const auto& pr : analysis.presets) {
        emit("curve_" + std::string(to_string(pr.preset)) + ".csv", curve_csv(pr, config));
    }
    emit("rejections.csv", rejections_csv(analysis, config));
    return written;
}

}  // namespace claimgate
