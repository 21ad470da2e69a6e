#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace claimgate {

enum class Task { classification, segmentation };

// Which published congruence quartile to assume.
enum class Preset { q1, median, q3 };

enum class Provenance { preset_median, preset_q1, preset_q3, user_supplied, empirical };

// Assumed agreement between the two compared models: the joint-correct
// proportion p11 for classification, the Pearson correlation of per-image DSC
// for segmentation.
struct CongruenceAssumption {
    double value = 0.0;
    Provenance provenance = Provenance::user_supplied;
    bool clamped = false;

    static CongruenceAssumption preset(Task task, Preset which);
    static CongruenceAssumption user(double value);
};

// Published quartiles of empirically measured congruence.
inline constexpr double kClassificationCongruenceQ1 = 0.47;
inline constexpr double kClassificationCongruenceMedian = 0.67;
inline constexpr double kClassificationCongruenceQ3 = 0.83;
inline constexpr double kSegmentationCongruenceQ1 = 0.44;
inline constexpr double kSegmentationCongruenceMedian = 0.67;
inline constexpr double kSegmentationCongruenceQ3 = 0.82;

double preset_value(Task task, Preset which) noexcept;

enum class EstimateMethod { monte_carlo, closed_form, grid_oracle };

// Posterior probability that the reported runner-up is at least as good as
// the reported winner.
struct PfcEstimate {
    double probability = 0.0;
    EstimateMethod method = EstimateMethod::closed_form;
    std::uint64_t k = 0;     // Monte Carlo draws; 0 otherwise
    double std_err = 0.0;    // Monte Carlo standard error; 0 otherwise
    CongruenceAssumption congruence_used;
    bool degenerate = false; // limit value returned for a zero-variance case
};

std::string_view to_string(Task t) noexcept;
std::string_view to_string(Preset p) noexcept;
std::string_view to_string(Provenance p) noexcept;
std::string_view to_string(EstimateMethod m) noexcept;

std::optional<Task> parse_task(std::string_view s) noexcept;
std::optional<Preset> parse_preset(std::string_view s) noexcept;

Provenance provenance_of(Preset p) noexcept;

}  // namespace claimgate
