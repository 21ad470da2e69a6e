#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "claimgate/classification.hpp"
#include "claimgate/pfc_types.hpp"
#include "claimgate/segmentation.hpp"

namespace claimgate {

// Colour bands of a planning grid: red above 10 %, orange in (5 %, 10 %],
// green at or below 5 %.
enum class Band { green, orange, red };

Band band_of(double probability) noexcept;
std::string_view to_string(Band b) noexcept;

inline constexpr double kDefaultBasePerformance = 0.80;
inline constexpr std::int64_t kDefaultRequiredNCap = 10'000'000;

struct PlannerOptions {
    std::uint64_t k = kDefaultDraws;
    std::uint64_t seed = 42;
    unsigned workers = 1;
    SdSource sd_source = SdSource::imputed_point;
    SdImputationModel sd_model;
    // Fixed SDs for segmentation instead of imputing them from the means.
    std::optional<SdPair> sds;
    bool round_counts = false;
};

// Congruence assumed for the three entries of every grid cell.
struct GridCongruence {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;

    static GridCongruence presets(Task task);
};

struct GridCell {
    std::int64_t n = 0;
    double delta = 0.0;
    // Indexed q1, median, q3. Empty when the cell is infeasible.
    std::array<std::optional<PfcEstimate>, 3> estimates;
    bool infeasible = false;
    std::string note;
    Band band = Band::red;  // from the median entry; meaningless when infeasible

    const std::optional<PfcEstimate>& at(Preset p) const;
};

// Probabilities over test-set sizes (columns) and metric deltas (rows). The
// runner-up sits at base_performance and the winner at base_performance + delta.
struct PlanningGrid {
    Task task = Task::classification;
    std::vector<std::int64_t> n_values;
    std::vector<double> delta_values;
    double base_performance = kDefaultBasePerformance;
    GridCongruence congruence;
    std::vector<GridCell> cells;  // row-major: delta index, then n index

    const GridCell& cell(std::size_t delta_index, std::size_t n_index) const;
};

// n_values and delta_values must be strictly ascending, n >= 1, delta >= 0 and
// base_performance in [0, 1]. Cells whose winner would exceed the metric range
// (or whose inputs are otherwise unusable) are flagged infeasible.
PlanningGrid build_grid(Task task, std::span<const std::int64_t> n_values,
                        std::span<const double> delta_values, double base_performance,
                        const PlannerOptions& options,
                        std::optional<GridCongruence> congruence = std::nullopt);

// Probability for one (n, delta) planning point at the given congruence.
// Classification congruence is clamped into the feasible bounds.
PfcEstimate planning_pfc(Task task, std::int64_t n, double delta, double base_performance,
                         const CongruenceAssumption& congruence, const PlannerOptions& options);

struct RequiredN {
    std::optional<std::int64_t> n;  // empty when the cap is exceeded
    bool exceeds_cap = false;
    double probability = 0.0;       // at n (or at the cap)
    std::uint64_t k_used = 0;       // Monte Carlo draws per probe; 0 for closed form
    int evaluations = 0;
};

// Smallest test-set size whose probability is <= target_pfc, by doubling to
// bracket and bisecting. Monte Carlo probes share one stream and use
// max(k, the draw count that keeps 3 standard errors below 0.1 * target).
RequiredN required_n(Task task, double delta, double base_performance,
                     const CongruenceAssumption& congruence, double target_pfc,
                     const PlannerOptions& options, std::int64_t cap = kDefaultRequiredNCap);

// Draw count at which 3 standard errors at p = target stay below 0.1 * target.
std::uint64_t draws_for_target(double target_pfc) noexcept;

}  // namespace claimgate
