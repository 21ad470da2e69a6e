#include "claimgate/pfc_types.hpp"

namespace claimgate {

double preset_value(Task task, Preset which) noexcept {
    if (task == Task::classification) {
        switch (which) {
            case Preset::q1: return kClassificationCongruenceQ1;
            case Preset::median: return kClassificationCongruenceMedian;
            case Preset::q3: return kClassificationCongruenceQ3;
        }
    }
    switch (which) {
        case Preset::q1: return kSegmentationCongruenceQ1;
        case Preset::median: return kSegmentationCongruenceMedian;
        case Preset::q3: return kSegmentationCongruenceQ3;
    }
    return kSegmentationCongruenceMedian;
}

Provenance provenance_of(Preset p) noexcept {
    switch (p) {
        case Preset::q1: return Provenance::preset_q1;
        case Preset::median: return Provenance::preset_median;
        case Preset::q3: return Provenance::preset_q3;
    }
    return Provenance::preset_median;
}

CongruenceAssumption CongruenceAssumption::preset(Task task, Preset which) {
    return CongruenceAssumption{preset_value(task, which), provenance_of(which), false};
}

CongruenceAssumption CongruenceAssumption::user(double value) {
    return CongruenceAssumption{value, Provenance::user_supplied, false};
}

std::string_view to_string(Task t) noexcept {
    return t == Task::classification ? "classification" : "segmentation";
}

std::string_view to_string(Preset p) noexcept {
    switch (p) {
        case Preset::q1: return "q1";
        case Preset::median: return "median";
        case Preset::q3: return "q3";
    }
    return "median";
}

std::string_view to_string(Provenance p) noexcept {
    switch (p) {
        case Provenance::preset_median: return "preset-median";
        case Provenance::preset_q1: return "preset-q1";
        case Provenance::preset_q3: return "preset-q3";
        case Provenance::user_supplied: return "user-supplied";
        case Provenance::empirical: return "empirical";
    }
    return "user-supplied";
}

std::string_view to_string(EstimateMethod m) noexcept {
    switch (m) {
        case EstimateMethod::monte_carlo: return "monte-carlo";
        case EstimateMethod::closed_form: return "closed-form";
        case EstimateMethod::grid_oracle: return "grid-oracle";
    }
    return "closed-form";
}

std::optional<Task> parse_task(std::string_view s) noexcept {
    if (s == "classification" || s == "cls") return Task::classification;
    if (s == "segmentation" || s == "seg") return Task::segmentation;
    return std::nullopt;
}

std::optional<Preset> parse_preset(std::string_view s) noexcept {
    if (s == "q1") return Preset::q1;
    if (s == "median") return Preset::median;
    if (s == "q3") return Preset::q3;
    return std::nullopt;
}

}  // namespace claimgate
