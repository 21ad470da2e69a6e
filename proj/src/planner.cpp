#include "claimgate/planner.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "claimgate/errors.hpp"
#include "claimgate/parallel.hpp"

namespace claimgate {

Band band_of(double probability) noexcept {
    if (probability > 0.10) return Band::red;
    if (probability > 0.05) return Band::orange;
    return Band::green;
}

std::string_view to_string(Band b) noexcept {
    switch (b) {
        case Band::green: return "green";
        case Band::orange: return "orange";
        case Band::red: return "red";
    }
    return "red";
}

GridCongruence GridCongruence::presets(Task task) {
    return GridCongruence{preset_value(task, Preset::q1), preset_value(task, Preset::median),
                          preset_value(task, Preset::q3)};
}

const std::optional<PfcEstimate>& GridCell::at(Preset p) const {
    switch (p) {
        case Preset::q1: return estimates[0];
        case Preset::median: return estimates[1];
        case Preset::q3: return estimates[2];
    }
    return estimates[1];
}

const GridCell& PlanningGrid::cell(std::size_t delta_index, std::size_t n_index) const {
    return cells.at(delta_index * n_values.size() + n_index);
}

std::uint64_t draws_for_target(double target_pfc) noexcept {
    return static_cast<std::uint64_t>(std::floor(900.0 * (1.0 - target_pfc) / target_pfc)) + 1;
}

namespace {

constexpr double kMetricTolerance = 1e-12;

double winner_metric(double base, double delta) {
    double v = base + delta;
    if (v > 1.0 && v <= 1.0 + kMetricTolerance) v = 1.0;
    if (v > 1.0) throw ArgumentError("base performance + delta exceeds 1");
    return v;
}

// `stream_id` overrides the content-derived stream for classification.
PfcEstimate evaluate_point(Task task, std::int64_t n, double delta, double base,
                           const CongruenceAssumption& congruence, const PlannerOptions& options,
                           std::optional<std::uint64_t> stream_id, std::uint64_t k) {
    const double winner = winner_metric(base, delta);
    if (task == Task::classification) {
        const ClassificationComparison cmp{n, winner, base};
        const auto assumed = clamp_congruence(cmp, congruence);
        const RngStream stream{options.seed,
                               stream_id ? *stream_id : comparison_stream_id(cmp, assumed.value)};
        return pfc_classification(cmp, assumed, k, stream, {options.round_counts, 1});
    }
    const SegmentationComparison cmp{n, winner, base, std::nullopt, std::nullopt};
    const SdPair sds = options.sds ? *options.sds : resolve_sds(cmp, options.sd_source, options.sd_model);
    return pfc_segmentation(cmp, congruence, sds);
}

template <class T>
void check_ascending(std::span<const T> values, const char* what) {
    if (values.empty()) throw ArgumentError(std::string(what) + " list is empty");
    for (std::size_t i = 1; i < values.size(); ++i) {
        if (!(values[i] > values[i - 1])) {
            throw ArgumentError(std::string(what) + " values must be strictly ascending");
        }
    }
}

}  // namespace

PfcEstimate planning_pfc(Task task, std::int64_t n, double delta, double base_performance,
                         const CongruenceAssumption& congruence, const PlannerOptions& options) {
    return evaluate_point(task, n, delta, base_performance, congruence, options, std::nullopt,
                          options.k);
}

PlanningGrid build_grid(Task task, std::span<const std::int64_t> n_values,
                        std::span<const double> delta_values, double base_performance,
                        const PlannerOptions& options, std::optional<GridCongruence> congruence) {
    check_ascending(n_values, "n");
    check_ascending(delta_values, "delta");
    if (n_values.front() < 1) throw ArgumentError("test-set sizes must be >= 1");
    if (delta_values.front() < 0.0) throw ArgumentError("deltas must be >= 0");
    if (!(base_performance >= 0.0 && base_performance <= 1.0)) {
        throw ArgumentError("base performance must lie in [0, 1]");
    }
    if (options.k == 0) throw ArgumentError("Monte Carlo draw count k must be >= 1");

    PlanningGrid grid;
    grid.task = task;
    grid.n_values.assign(n_values.begin(), n_values.end());
    grid.delta_values.assign(delta_values.begin(), delta_values.end());
    grid.base_performance = base_performance;
    grid.congruence = congruence ? *congruence : GridCongruence::presets(task);
    grid.cells.resize(n_values.size() * delta_values.size());

    const std::array<CongruenceAssumption, 3> assumptions{
        CongruenceAssumption{grid.congruence.q1,
                             congruence ? Provenance::user_supplied : Provenance::preset_q1, false},
        CongruenceAssumption{grid.congruence.median,
                             congruence ? Provenance::user_supplied : Provenance::preset_median,
                             false},
        CongruenceAssumption{grid.congruence.q3,
                             congruence ? Provenance::user_supplied : Provenance::preset_q3, false}};

    std::vector<std::string> errors(grid.cells.size() * 3);
    parallel_for(grid.cells.size() * 3, options.workers, [&](std::size_t job) {
        const std::size_t c = job / 3;
        const std::size_t entry = job % 3;
        const std::int64_t n = grid.n_values[c % grid.n_values.size()];
        const double delta = grid.delta_values[c / grid.n_values.size()];
        try {
            if (task == Task::segmentation && n < 2) {
                throw ArgumentError("segmentation needs n >= 2");
            }
            grid.cells[c].estimates[entry] =
                evaluate_point(task, n, delta, base_performance, assumptions[entry], options,
                               std::nullopt, options.k);
        } catch (const ArgumentError& e) {
            errors[job] = e.what();
        } catch (const DegenerateError& e) {
            errors[job] = e.what();
        } catch (const DomainError& e) {
            errors[job] = e.what();
        }
    });

    for (std::size_t c = 0; c < grid.cells.size(); ++c) {
        auto& cell = grid.cells[c];
        cell.n = grid.n_values[c % grid.n_values.size()];
        cell.delta = grid.delta_values[c / grid.n_values.size()];
        for (std::size_t entry = 0; entry < 3; ++entry) {
            if (!errors[c * 3 + entry].empty()) {
                cell.infeasible = true;
                if (cell.note.empty()) cell.note = errors[c * 3 + entry];
            }
        }
        if (cell.infeasible) {
            for (auto& e : cell.estimates) e.reset();
        } else {
            cell.band = band_of(cell.estimates[1]->probability);
        }
    }
    return grid;
}

RequiredN required_n(Task task, double delta, double base_performance,
                     const CongruenceAssumption& congruence, double target_pfc,
                     const PlannerOptions& options, std::int64_t cap) {
    if (!(delta > 0.0)) throw ArgumentError("required_n needs delta > 0");
    if (!(target_pfc > 0.0 && target_pfc < 0.5)) {
        throw ArgumentError("target probability must lie in (0, 0.5)");
    }
    if (!(base_performance >= 0.0 && base_performance <= 1.0)) {
        throw ArgumentError("base performance must lie in [0, 1]");
    }
    if (options.k == 0) throw ArgumentError("Monte Carlo draw count k must be >= 1");
    const std::int64_t n_min = task == Task::segmentation ? 2 : 1;
    if (cap < n_min) throw ArgumentError("n cap below the minimum test-set size");
    const double winner = winner_metric(base_performance, delta);

    RequiredN result;
    std::optional<std::uint64_t> stream_id;
    std::uint64_t k = 0;
    if (task == Task::classification) {
        k = std::max(options.k, draws_for_target(target_pfc));
        const ClassificationComparison probe{1, winner, base_performance};
        const auto assumed = clamp_congruence(probe, congruence);
        // Common random numbers across probes keep the estimated curve in n smooth.
        stream_id = hash_words({word_of(winner), word_of(base_performance),
                                word_of(assumed.value), 0x524551ULL});
    }
    result.k_used = k;

    auto pfc = [&](std::int64_t n) {
        ++result.evaluations;
        return evaluate_point(task, n, delta, base_performance, congruence, options, stream_id, k)
            .probability;
    };

    std::int64_t lo = n_min - 1;  // largest n known to miss the target
    std::int64_t hi = n_min;
    double p_hi = pfc(hi);
    while (p_hi > target_pfc) {
        if (hi >= cap) {
            result.exceeds_cap = true;
            result.probability = p_hi;
            return result;
        }
        lo = hi;
        hi = std::min(cap, hi * 2);
        p_hi = pfc(hi);
    }
    while (hi - lo > 1) {
        const std::int64_t mid = lo + (hi - lo) / 2;
        const double p_mid = pfc(mid);
        if (p_mid <= target_pfc) {
            hi = mid;
            p_hi = p_mid;
        } else {
            lo = mid;
        }
    }
    result.n = hi;
    result.probability = p_hi;
    return result;
}

}  // namespace claimgate
