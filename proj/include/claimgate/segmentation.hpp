#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "claimgate/pfc_types.hpp"
#include "claimgate/rng.hpp"

namespace claimgate {

// Reported mean DSC of the two top-ranked methods over n test images, with
// optional per-image SDs. Values are on the unit scale.
struct SegmentationComparison {
    std::int64_t n = 0;
    double dsc_a = 0.0;
    double dsc_b = 0.0;
    std::optional<double> sd_a;
    std::optional<double> sd_b;

    // Throws ArgumentError on n < 2, DSCs outside [0,1], dsc_b > dsc_a or a
    // negative SD.
    void validate() const;
};

enum class SdVariant { point, q1, q3 };
enum class SdSource { reported, imputed_point, imputed_q1, imputed_q3 };

std::string_view to_string(SdVariant v) noexcept;
std::string_view to_string(SdSource s) noexcept;
std::optional<SdVariant> parse_sd_variant(std::string_view s) noexcept;
std::optional<SdSource> parse_sd_source(std::string_view s) noexcept;

// Predicts the per-image DSC standard deviation from a mean DSC.
//
// parametric_default: sd = coefficient * sqrt(mean (1 - mean)).
// user_table: piecewise-linear interpolation through (mean, sd) knots, held
// flat beyond the first and last knot.
// The q1/q3 variants scale the point prediction by the prediction-interval
// multipliers.
struct SdImputationModel {
    enum class Kind { parametric_default, user_table };

    Kind kind = Kind::parametric_default;
    double coefficient = 0.4;
    double q1_multiplier = 0.7;
    double q3_multiplier = 1.3;
    std::vector<std::pair<double, double>> table;

    // Knots must have strictly increasing means in [0,1] and positive SDs.
    static SdImputationModel from_table(std::vector<std::pair<double, double>> knots,
                                        double q1_multiplier = 0.7, double q3_multiplier = 1.3);
    void validate() const;
};

// Throws DegenerateError for a mean of exactly 0 or 1 and DomainError outside [0,1].
double impute_sd(double mean_dsc, const SdImputationModel& model, SdVariant variant);

struct SdPair {
    double a = 0.0;
    double b = 0.0;
};

// Picks the SDs used for a comparison. `reported` requires both SDs to be
// present (ArgumentError otherwise); the imputed sources ignore reported SDs.
SdPair resolve_sds(const SegmentationComparison& cmp, SdSource source,
                   const SdImputationModel& model);

// Closed-form posterior probability
//   t_{n-1}( sqrt(n) (dsc_b - dsc_a) / sqrt(s_a^2 + s_b^2 - 2 s_a s_b r) ).
// A zero denominator yields the limit value (0, or 0.5 for equal means) with
// `degenerate` set.
PfcEstimate pfc_segmentation(const SegmentationComparison& cmp, const CongruenceAssumption& r_ab,
                             SdSource sd_source, const SdImputationModel& model = {});

// Same quantity with explicit SDs.
PfcEstimate pfc_segmentation(const SegmentationComparison& cmp, const CongruenceAssumption& r_ab,
                             const SdPair& sds);

// Independent Monte Carlo check of the closed form: draws from the joint
// posterior of the paired-difference model under the p(mu, sigma^2) ~ 1/sigma^2
// prior (sigma^2 | data scaled inverse chi-square, mu | sigma^2 normal) and
// counts draws with mu <= 0.
PfcEstimate pfc_segmentation_mc_check(const SegmentationComparison& cmp,
                                      const CongruenceAssumption& r_ab, const SdPair& sds,
                                      std::uint64_t k, const RngStream& rng);

}  // namespace claimgate
