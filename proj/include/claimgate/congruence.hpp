#pragma once

#include <filesystem>
#include <span>
#include <vector>

#include "claimgate/pfc_types.hpp"

namespace claimgate {

// Per-image correctness of two classifiers on the same test set.
struct PairedClassificationOutcomes {
    std::vector<bool> correct_a;
    std::vector<bool> correct_b;
};

// Per-image DSC of two segmentation models on the same test set.
struct PairedDscVectors {
    std::vector<double> dsc_a;
    std::vector<double> dsc_b;
};

// Fraction of images both models classify correctly.
// Throws ArgumentError for empty or unequal-length vectors.
CongruenceAssumption congruence_classification(const PairedClassificationOutcomes& outcomes);

// Pearson correlation of the paired DSC vectors.
// Throws ArgumentError for fewer than 3 pairs or unequal lengths, and
// DegenerateError when either vector has zero variance.
CongruenceAssumption congruence_segmentation(const PairedDscVectors& vectors);

struct Quartiles {
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
};

// Linear-interpolation quantile (Hyndman & Fan type 7) of unsorted values.
double quantile(std::span<const double> values, double prob);

// Type-7 quartiles. Throws ArgumentError on empty input.
Quartiles quartiles(std::span<const double> values);
Quartiles congruence_quantiles(std::span<const CongruenceAssumption> values);

// Paired-output CSV with header `id,a,b`: 0/1 correctness flags for
// classification, per-image DSC for segmentation. Throws ArgumentError naming
// the offending line on malformed input.
PairedClassificationOutcomes read_paired_classification_csv(const std::filesystem::path& path);
PairedDscVectors read_paired_dsc_csv(const std::filesystem::path& path);

}  // namespace claimgate
