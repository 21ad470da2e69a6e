#include "cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cstdlib>
#include <filesystem>
#include <optional>
#include <sstream>

#include "claimgate/classification.hpp"
#include "claimgate/congruence.hpp"
#include "claimgate/corpus.hpp"
#include "claimgate/corpus_report.hpp"
#include "claimgate/csv.hpp"
#include "claimgate/errors.hpp"
#include "claimgate/grid_report.hpp"
#include "claimgate/parallel.hpp"
#include "claimgate/planner.hpp"
#include "claimgate/run_config.hpp"
#include "claimgate/segmentation.hpp"

namespace claimgate::cli {

namespace {

using ojson = nlohmann::ordered_json;

// Validation failure detected by the CLI itself; maps to exit code 2.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Common {
    std::optional<std::uint64_t> seed;
    std::uint64_t k = kDefaultDraws;
    unsigned threads = 0;  // 0: hardware concurrency
    std::string scale = "unit";
    bool json = false;

    unsigned workers() const { return threads == 0 ? default_workers() : threads; }
    double scale_divisor() const { return scale == "percent" ? 100.0 : 1.0; }
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) return *flag;
    if (const char* env = std::getenv("CLAIMGATE_SEED"); env && *env) {
        const auto v = csv::parse_int(env);
        if (!v || *v < 0) throw UsageError("CLAIMGATE_SEED must be a non-negative integer");
        return static_cast<std::uint64_t>(*v);
    }
    return kDefaultSeed;
}

void add_common(CLI::App* cmd, Common& c, bool monte_carlo) {
    if (monte_carlo) {
        cmd->add_option("--seed", c.seed, "RNG seed (default 42, or $CLAIMGATE_SEED)");
        cmd->add_option("--k", c.k, "Monte Carlo draws")->check(CLI::PositiveNumber);
        cmd->add_option("--threads", c.threads, "worker threads (0 = all cores)");
    }
    cmd->add_option("--scale", c.scale, "scale of metric inputs")
        ->check(CLI::IsMember({"unit", "percent"}));
    cmd->add_flag("--json", c.json, "machine-readable output");
}

// "median" | "q1" | "q3" | number
CongruenceAssumption parse_congruence(const std::string& text, Task task) {
    if (auto preset = parse_preset(text)) return CongruenceAssumption::preset(task, *preset);
    const auto v = csv::parse_double(text);
    if (!v) throw UsageError("--congruence must be median, q1, q3 or a number");
    return CongruenceAssumption::user(*v);
}

template <class T>
std::vector<T> parse_list(const std::string& text, const char* what) {
    std::vector<T> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (csv::trim(item).empty()) continue;
        if constexpr (std::is_integral_v<T>) {
            const auto v = csv::parse_int(item);
            if (!v) throw UsageError(fmt::format("{}: '{}' is not an integer", what, item));
            out.push_back(static_cast<T>(*v));
        } else {
            const auto v = csv::parse_double(item);
            if (!v) throw UsageError(fmt::format("{}: '{}' is not a number", what, item));
            out.push_back(static_cast<T>(*v));
        }
    }
    if (out.empty()) throw UsageError(fmt::format("{}: empty list", what));
    return out;
}

std::string join(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + fmt::format("{}", v[i]);
    return s;
}

std::string join(const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s;
}

std::string congruence_label(const std::string& text) { return text; }

// FNV-1a of the input file, so reports identify their input by content
// rather than by a machine-specific path.
std::string content_digest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ArgumentError("cannot open " + path.string());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return fmt::format("fnv1a64:{:016x}", h);
}

struct SdFlags {
    std::optional<double> sd_a;
    std::optional<double> sd_b;
    std::optional<std::string> impute;
    double coefficient = 0.4;
    double pi_q1 = 0.7;
    double pi_q3 = 1.3;

    void add(CLI::App* cmd) {
        cmd->add_option("--sd-a", sd_a, "reported SD of method A");
        cmd->add_option("--sd-b", sd_b, "reported SD of method B");
        cmd->add_option("--impute", impute, "impute SDs from the means")
            ->check(CLI::IsMember({"point", "q1", "q3"}));
        cmd->add_option("--sd-coef", coefficient, "coefficient c of sd = c*sqrt(m(1-m))")
            ->check(CLI::PositiveNumber);
        cmd->add_option("--pi-q1", pi_q1, "prediction-interval Q1 multiplier");
        cmd->add_option("--pi-q3", pi_q3, "prediction-interval Q3 multiplier");
    }

    SdImputationModel model() const {
        SdImputationModel m;
        m.coefficient = coefficient;
        m.q1_multiplier = pi_q1;
        m.q3_multiplier = pi_q3;
        m.validate();
        return m;
    }

    bool explicit_sds() const {
        if (sd_a.has_value() != sd_b.has_value()) {
            throw UsageError("--sd-a and --sd-b must be given together");
        }
        if (sd_a && impute) throw UsageError("--sd-a/--sd-b and --impute are mutually exclusive");
        return sd_a.has_value();
    }

    SdSource source() const {
        if (explicit_sds()) return SdSource::reported;
        const auto v = parse_sd_variant(impute.value_or("point"));
        switch (*v) {
            case SdVariant::point: return SdSource::imputed_point;
            case SdVariant::q1: return SdSource::imputed_q1;
            case SdVariant::q3: return SdSource::imputed_q3;
        }
        return SdSource::imputed_point;
    }
};

// --------------------------------------------------------------------------
// check-cls
// --------------------------------------------------------------------------
struct CheckClsArgs {
    Common common;
    std::int64_t n = 0;
    double acc_a = 0.0;
    double acc_b = 0.0;
    std::string congruence = "median";
    bool round_counts = false;
};

int check_cls(const CheckClsArgs& a, std::ostream& out) {
    const double div = a.common.scale_divisor();
    const ClassificationComparison cmp{a.n, a.acc_a / div, a.acc_b / div};
    cmp.validate();
    const auto assumed = parse_congruence(a.congruence, Task::classification);
    const auto bounds = congruence_bounds(cmp);
    const auto used = clamp_congruence(cmp, assumed);

    RunConfig cfg;
    cfg.command = "check-cls";
    cfg.seed = resolve_seed(a.common.seed);
    cfg.k = a.common.k;
    cfg.congruence = congruence_label(a.congruence);
    cfg.sd_source = "n/a";
    cfg.output_format = a.common.json ? "json" : "text";
    cfg.set("n", std::to_string(a.n))
        .set("acc_a", fmt::format("{}", a.acc_a))
        .set("acc_b", fmt::format("{}", a.acc_b))
        .set("scale", a.common.scale)
        .set("round_counts", a.round_counts ? "true" : "false");

    const RngStream stream{cfg.seed, comparison_stream_id(cmp, used.value)};
    const auto est = pfc_classification(cmp, used, a.common.k, stream,
                                        {a.round_counts, a.common.workers()});

    if (a.common.json) {
        ojson j;
        j["run_config"] = cfg.to_json();
        j["input"] = {{"n", cmp.n}, {"acc_a", cmp.acc_a}, {"acc_b", cmp.acc_b}};
        j["congruence_bounds"] = {{"lower", bounds.lower}, {"upper", bounds.upper}};
        j["congruence"] = {{"assumed", assumed.value},
                           {"used", used.value},
                           {"provenance", to_string(used.provenance)},
                           {"clamped", used.clamped}};
        j["result"] = {{"probability", est.probability},
                       {"std_err", est.std_err},
                       {"method", to_string(est.method)},
                       {"k", est.k}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << fmt::format("probability of false claims: {:.6f}\n", est.probability);
    out << fmt::format("std_err: {:.6f}\n", est.std_err);
    out << fmt::format("method: {} (k={}, seed={})\n", to_string(est.method), est.k, cfg.seed);
    out << fmt::format("congruence: {} ({}){}\n", used.value, to_string(used.provenance),
                       used.clamped ? fmt::format(", clamped from {}", assumed.value) : "");
    out << fmt::format("clamped: {}\n", used.clamped ? "yes" : "no");
    out << fmt::format("congruence bounds: [{}, {}]\n", bounds.lower, bounds.upper);
    return kExitOk;
}

// --------------------------------------------------------------------------
// check-seg
// --------------------------------------------------------------------------
struct CheckSegArgs {
    Common common;
    std::int64_t n = 0;
    double dsc_a = 0.0;
    double dsc_b = 0.0;
    std::string congruence = "median";
    SdFlags sd;
    std::uint64_t mc_check = 0;
};

int check_seg(const CheckSegArgs& a, std::ostream& out) {
    const double div = a.common.scale_divisor();
    SegmentationComparison cmp{a.n, a.dsc_a / div, a.dsc_b / div, std::nullopt, std::nullopt};
    if (a.sd.sd_a) cmp.sd_a = *a.sd.sd_a / div;
    if (a.sd.sd_b) cmp.sd_b = *a.sd.sd_b / div;
    cmp.validate();
    const auto r = parse_congruence(a.congruence, Task::segmentation);
    const auto source = a.sd.source();
    const auto model = a.sd.model();
    const auto sds = resolve_sds(cmp, source, model);
    const auto est = pfc_segmentation(cmp, r, sds);

    RunConfig cfg;
    cfg.command = "check-seg";
    cfg.seed = resolve_seed(a.common.seed);
    cfg.k = a.mc_check;
    cfg.congruence = congruence_label(a.congruence);
    cfg.sd_source = std::string(to_string(source));
    cfg.output_format = a.common.json ? "json" : "text";
    cfg.set("n", std::to_string(a.n))
        .set("dsc_a", fmt::format("{}", a.dsc_a))
        .set("dsc_b", fmt::format("{}", a.dsc_b))
        .set("scale", a.common.scale);
    if (source != SdSource::reported) {
        cfg.set("sd_coef", fmt::format("{}", model.coefficient))
            .set("pi_q1", fmt::format("{}", model.q1_multiplier))
            .set("pi_q3", fmt::format("{}", model.q3_multiplier));
    }

    std::optional<PfcEstimate> check;
    if (a.mc_check > 0) {
        const RngStream stream{cfg.seed, hash_words({static_cast<std::uint64_t>(cmp.n),
                                                     word_of(cmp.dsc_a), word_of(cmp.dsc_b),
                                                     word_of(sds.a), word_of(sds.b),
                                                     word_of(r.value)})};
        check = pfc_segmentation_mc_check(cmp, r, sds, a.mc_check, stream);
    }

    if (a.common.json) {
        ojson j;
        j["run_config"] = cfg.to_json();
        j["input"] = {{"n", cmp.n}, {"dsc_a", cmp.dsc_a}, {"dsc_b", cmp.dsc_b}};
        j["sds"] = {{"a", sds.a}, {"b", sds.b}, {"source", to_string(source)}};
        j["congruence"] = {{"value", r.value}, {"provenance", to_string(r.provenance)}};
        j["result"] = {{"probability", est.probability},
                       {"method", to_string(est.method)},
                       {"degenerate", est.degenerate}};
        if (check) {
            j["mc_check"] = {{"probability", check->probability},
                             {"std_err", check->std_err},
                             {"k", check->k}};
        }
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    out << fmt::format("probability of false claims: {:.6g}\n", est.probability);
    out << fmt::format("method: {}{}\n", to_string(est.method),
                       est.degenerate ? " (degenerate: zero variance, limit value)" : "");
    out << fmt::format("sd: a={} b={} ({})\n", sds.a, sds.b, to_string(source));
    out << fmt::format("congruence r_ab: {} ({})\n", r.value, to_string(r.provenance));
    if (check) {
        out << fmt::format("monte-carlo check: {:.6f} +/- {:.6f} (k={}, seed={})\n",
                           check->probability, check->std_err, check->k, cfg.seed);
    }
    return kExitOk;
}

// --------------------------------------------------------------------------
// corpus
// --------------------------------------------------------------------------
struct CorpusArgs {
    Common common;
    std::string input;
    std::string task = "all";
    std::string presets = "all";
    std::string thresholds;
    std::string out_dir = "claimgate-corpus";
    std::string sd_source = "imputed-point";
    bool ignore_reported_sd = false;
};

int corpus(const CorpusArgs& a, std::ostream& out) {
    std::optional<Task> only_task;
    if (a.task != "all") {
        only_task = parse_task(a.task);
        if (!only_task) throw UsageError("--task must be classification, segmentation or all");
    }
    std::vector<Preset> presets;
    if (a.presets == "all") {
        presets = {Preset::median, Preset::q1, Preset::q3};
    } else if (auto p = parse_preset(a.presets)) {
        presets = {*p};
    } else {
        throw UsageError("--presets must be all, median, q1 or q3");
    }
    const auto thresholds =
        a.thresholds.empty() ? default_thresholds() : parse_list<double>(a.thresholds, "--thresholds");
    const auto sd_source = parse_sd_source(a.sd_source);
    if (!sd_source) throw UsageError("unknown --sd-source");

    CorpusPfcOptions opts;
    opts.sd_source = *sd_source;
    opts.prefer_reported_sd = !a.ignore_reported_sd;
    opts.k = a.common.k;
    opts.seed = resolve_seed(a.common.seed);
    opts.workers = a.common.workers();

    RunConfig cfg;
    cfg.command = "corpus";
    cfg.seed = opts.seed;
    cfg.k = opts.k;
    cfg.congruence = a.presets;
    cfg.sd_source = a.sd_source;
    cfg.output_format = "bundle";
    cfg.output_path = "";
    const std::filesystem::path input(a.input);
    cfg.set("input", input.filename().string())
        .set("input_digest", content_digest(input))
        .set("task", a.task)
        .set("thresholds", join(thresholds))
        .set("prefer_reported_sd", opts.prefer_reported_sd ? "true" : "false")
        .set("schema_version", std::to_string(kCorpusSchemaVersion));

    auto ingest = ingest_corpus(input);
    const auto analysis = analyze_corpus(std::move(ingest), presets, thresholds, opts, only_task);
    const auto files = write_corpus_bundle(analysis, cfg, a.out_dir);

    if (a.common.json) {
        out << corpus_report_json(analysis, cfg).dump(2) << "\n";
        return kExitOk;
    }
    out << fmt::format("records: {} parsed, {} rejected, {} eligible, {} excluded\n",
                       analysis.ingest.records.size(), analysis.ingest.rejections.size(),
                       analysis.split.eligible.size(), analysis.split.excluded.size());
    for (const auto& pr : analysis.presets) {
        for (const auto& [name, curve] : pr.curves) {
            if (name.find("/row") == std::string::npos) continue;
            for (std::size_t i = 0; i < curve.thresholds.size(); ++i) {
                if (curve.thresholds[i] == 0.05 || curve.thresholds[i] == 0.3) {
                    out << fmt::format("{} [{}]: {:.1f}% of {} rows with probability > {}\n",
                                       name.substr(0, name.find('/')), to_string(pr.preset),
                                       curve.cumulative_pct[i], curve.total, curve.thresholds[i]);
                }
            }
        }
    }
    for (const auto& f : files) out << "wrote " << f.string() << "\n";
    return kExitOk;
}

// --------------------------------------------------------------------------
// grid
// --------------------------------------------------------------------------
struct GridArgs {
    Common common;
    std::string task;
    std::string n_list;
    std::string delta_list;
    double base = kDefaultBasePerformance;
    std::string out_path;
    std::string svg_path;
    SdFlags sd;
};

int grid(const GridArgs& a, std::ostream& out) {
    const auto task = parse_task(a.task);
    if (!task) throw UsageError("--task must be classification or segmentation");
    const double div = a.common.scale_divisor();
    const auto n_values = parse_list<std::int64_t>(a.n_list, "--n-list");
    auto deltas = parse_list<double>(a.delta_list, "--delta-list");
    for (double& d : deltas) d /= div;

    PlannerOptions opts;
    opts.k = a.common.k;
    opts.seed = resolve_seed(a.common.seed);
    opts.workers = a.common.workers();
    opts.sd_source = a.sd.source();
    opts.sd_model = a.sd.model();
    if (opts.sd_source == SdSource::reported) opts.sds = SdPair{*a.sd.sd_a / div, *a.sd.sd_b / div};

    RunConfig cfg;
    cfg.command = "grid";
    cfg.seed = opts.seed;
    cfg.k = opts.k;
    cfg.congruence = "q1,median,q3";
    cfg.sd_source = *task == Task::segmentation ? std::string(to_string(opts.sd_source)) : "n/a";
    cfg.output_format = a.common.json ? "json" : "csv";
    cfg.output_path = std::filesystem::path(a.out_path).filename().string();
    cfg.set("n_list", join(n_values))
        .set("delta_list", join(deltas))
        .set("svg", std::filesystem::path(a.svg_path).filename().string());
    if (opts.sds) {
        cfg.set("sd_a", fmt::format("{}", opts.sds->a)).set("sd_b", fmt::format("{}", opts.sds->b));
    }

    const auto g = build_grid(*task, n_values, deltas, a.base / div, opts);
    const std::string body =
        a.common.json ? grid_json(g, cfg).dump(2) + "\n" : grid_csv(g, cfg);
    if (a.out_path.empty()) {
        out << body;
    } else {
        write_text_file(a.out_path, body);
        out << "wrote " << a.out_path << "\n";
    }
    if (!a.svg_path.empty()) {
        write_text_file(a.svg_path, grid_svg(g, cfg));
        if (!a.out_path.empty()) out << "wrote " << a.svg_path << "\n";
    }
    return kExitOk;
}

// --------------------------------------------------------------------------
// required-n
// --------------------------------------------------------------------------
struct RequiredNArgs {
    Common common;
    std::string task;
    double delta = 0.0;
    double base = kDefaultBasePerformance;
    std::string congruence = "median";
    double target = 0.05;
    std::int64_t cap = kDefaultRequiredNCap;
    SdFlags sd;
};

int required_n_cmd(const RequiredNArgs& a, std::ostream& out) {
    const auto task = parse_task(a.task);
    if (!task) throw UsageError("--task must be classification or segmentation");
    const double div = a.common.scale_divisor();
    const auto congruence = parse_congruence(a.congruence, *task);

    PlannerOptions opts;
    opts.k = a.common.k;
    opts.seed = resolve_seed(a.common.seed);
    opts.sd_source = a.sd.source();
    opts.sd_model = a.sd.model();
    if (opts.sd_source == SdSource::reported) opts.sds = SdPair{*a.sd.sd_a / div, *a.sd.sd_b / div};

    const auto res =
        required_n(*task, a.delta / div, a.base / div, congruence, a.target, opts, a.cap);

    RunConfig cfg;
    cfg.command = "required-n";
    cfg.seed = opts.seed;
    cfg.k = opts.k;
    cfg.congruence = a.congruence;
    cfg.sd_source = *task == Task::segmentation ? std::string(to_string(opts.sd_source)) : "n/a";
    cfg.output_format = a.common.json ? "json" : "text";
    cfg.set("task", std::string(to_string(*task)))
        .set("delta", fmt::format("{}", a.delta / div))
        .set("base", fmt::format("{}", a.base / div))
        .set("target", fmt::format("{}", a.target))
        .set("cap", std::to_string(a.cap));

    if (a.common.json) {
        ojson j;
        j["run_config"] = cfg.to_json();
        j["required_n"] = res.n ? ojson(*res.n) : ojson(nullptr);
        j["exceeds_cap"] = res.exceeds_cap;
        j["probability"] = res.probability;
        j["k_used"] = res.k_used;
        j["evaluations"] = res.evaluations;
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (res.exceeds_cap) {
        out << fmt::format("exceeds-cap: probability still {:.6g} at n = {}\n", res.probability,
                           a.cap);
    } else {
        out << fmt::format("required n: {}\n", *res.n);
        out << fmt::format("probability at n: {:.6g}\n", res.probability);
    }
    if (res.k_used > 0) out << fmt::format("monte-carlo draws per probe: {}\n", res.k_used);
    return kExitOk;
}

// --------------------------------------------------------------------------
// congruence
// --------------------------------------------------------------------------
struct CongruenceArgs {
    Common common;
    std::string task;
    std::vector<std::string> inputs;
};

int congruence_cmd(const CongruenceArgs& a, std::ostream& out) {
    const auto task = parse_task(a.task);
    if (!task) throw UsageError("--task must be classification or segmentation");
    std::vector<CongruenceAssumption> values;
    ojson files = ojson::array();
    for (const auto& path : a.inputs) {
        ojson f;
        f["input"] = std::filesystem::path(path).filename().string();
        if (*task == Task::classification) {
            const auto outcomes = read_paired_classification_csv(path);
            const auto c = congruence_classification(outcomes);
            const double n = static_cast<double>(outcomes.correct_a.size());
            const double acc_a =
                static_cast<double>(std::count(outcomes.correct_a.begin(), outcomes.correct_a.end(), true)) / n;
            const double acc_b =
                static_cast<double>(std::count(outcomes.correct_b.begin(), outcomes.correct_b.end(), true)) / n;
            f["n"] = outcomes.correct_a.size();
            f["acc_a"] = acc_a;
            f["acc_b"] = acc_b;
            f["congruence"] = c.value;
            values.push_back(c);
            if (!a.common.json) {
                out << fmt::format("{}: p11 = {} (n={}, acc_a={}, acc_b={})\n", path, c.value,
                                   outcomes.correct_a.size(), acc_a, acc_b);
            }
        } else {
            const auto vectors = read_paired_dsc_csv(path);
            const auto c = congruence_segmentation(vectors);
            f["n"] = vectors.dsc_a.size();
            f["congruence"] = c.value;
            values.push_back(c);
            if (!a.common.json) {
                out << fmt::format("{}: r_ab = {} (n={})\n", path, c.value, vectors.dsc_a.size());
            }
        }
        files.push_back(std::move(f));
    }
    const auto q = congruence_quantiles(values);
    if (a.common.json) {
        RunConfig cfg;
        cfg.command = "congruence";
        cfg.k = 0;
        cfg.congruence = "empirical";
        cfg.sd_source = "n/a";
        cfg.output_format = "json";
        cfg.set("task", std::string(to_string(*task)));
        ojson j;
        j["run_config"] = cfg.to_json();
        j["files"] = std::move(files);
        j["quartiles"] = {{"q1", q.q1}, {"median", q.median}, {"q3", q.q3}};
        out << j.dump(2) << "\n";
        return kExitOk;
    }
    if (values.size() > 1) {
        out << fmt::format("quartiles: q1 = {}, median = {}, q3 = {}\n", q.q1, q.median, q.q3);
    }
    return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Probability that a reported outperformance claim is false", "claimgate"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kToolName) + " " + kToolVersion);

    CheckClsArgs cls;
    auto* c1 = app.add_subcommand("check-cls", "single classification (Accuracy) comparison");
    c1->add_option("--n", cls.n, "test-set size")->required();
    c1->add_option("--acc-a", cls.acc_a, "accuracy of the reported winner")->required();
    c1->add_option("--acc-b", cls.acc_b, "accuracy of the runner-up")->required();
    c1->add_option("--congruence", cls.congruence, "median | q1 | q3 | p11 value");
    c1->add_flag("--round-counts", cls.round_counts, "round x1, x2 to integers");
    add_common(c1, cls.common, true);

    CheckSegArgs seg;
    auto* c2 = app.add_subcommand("check-seg", "single segmentation (mean DSC) comparison");
    c2->add_option("--n", seg.n, "test-set size")->required();
    c2->add_option("--dsc-a", seg.dsc_a, "mean DSC of the reported winner")->required();
    c2->add_option("--dsc-b", seg.dsc_b, "mean DSC of the runner-up")->required();
    c2->add_option("--congruence", seg.congruence, "median | q1 | q3 | r_ab value");
    c2->add_option("--mc-check", seg.mc_check, "also run the Monte Carlo check with this many draws");
    c2->add_option("--seed", seg.common.seed, "RNG seed for --mc-check");
    seg.sd.add(c2);
    add_common(c2, seg.common, false);

    CorpusArgs corp;
    auto* c3 = app.add_subcommand("corpus", "analyse a corpus of extracted comparisons");
    c3->add_option("input", corp.input, "corpus CSV")->required();
    c3->add_option("--task", corp.task, "classification | segmentation | all");
    c3->add_option("--presets", corp.presets, "all | median | q1 | q3");
    c3->add_option("--thresholds", corp.thresholds, "comma-separated cutoffs in (0, 0.5]");
    c3->add_option("--out-dir", corp.out_dir, "output directory");
    c3->add_option("--sd-source", corp.sd_source,
                   "imputed-point | imputed-q1 | imputed-q3 | reported");
    c3->add_flag("--ignore-reported-sd", corp.ignore_reported_sd,
                 "impute SDs even where they are reported");
    add_common(c3, corp.common, true);

    GridArgs grd;
    auto* c4 = app.add_subcommand("grid", "probability grid over test-set size and delta");
    c4->add_option("--task", grd.task, "classification | segmentation")->required();
    c4->add_option("--n-list", grd.n_list, "comma-separated test-set sizes")->required();
    c4->add_option("--delta-list", grd.delta_list, "comma-separated metric deltas")->required();
    c4->add_option("--base", grd.base, "runner-up metric level");
    c4->add_option("--out", grd.out_path, "CSV (or JSON with --json) output file");
    c4->add_option("--svg", grd.svg_path, "SVG heatmap output file");
    grd.sd.add(c4);
    add_common(c4, grd.common, true);

    RequiredNArgs req;
    auto* c5 = app.add_subcommand("required-n", "minimum test-set size for a target probability");
    c5->add_option("--task", req.task, "classification | segmentation")->required();
    c5->add_option("--delta", req.delta, "metric delta")->required();
    c5->add_option("--base", req.base, "runner-up metric level");
    c5->add_option("--congruence", req.congruence, "median | q1 | q3 | value");
    c5->add_option("--target", req.target, "target probability of false claims");
    c5->add_option("--cap", req.cap, "largest n searched");
    req.sd.add(c5);
    add_common(c5, req.common, true);

    CongruenceArgs con;
    auto* c6 = app.add_subcommand("congruence", "empirical congruence from paired-output CSVs");
    c6->add_option("--task", con.task, "classification | segmentation")->required();
    c6->add_option("inputs", con.inputs, "paired-output CSV files (id,a,b)")->required();
    add_common(c6, con.common, false);

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*c1) return check_cls(cls, out);
        if (*c2) return check_seg(seg, out);
        if (*c3) return corpus(corp, out);
        if (*c4) return grid(grd, out);
        if (*c5) return required_n_cmd(req, out);
        if (*c6) return congruence_cmd(con, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ArgumentError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DegenerateError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    return kExitUsage;
}

}  // namespace claimgate::cli
