#pragma once

#include <cstdint>

#include "claimgate/pfc_types.hpp"
#include "claimgate/rng.hpp"
#include "claimgate/stats_kernels.hpp"

namespace claimgate {

// Reported Accuracy of the two top-ranked methods on a test set of n images.
// Method A is the reported winner: 0 <= acc_b <= acc_a <= 1.
struct ClassificationComparison {
    std::int64_t n = 0;
    double acc_a = 0.0;
    double acc_b = 0.0;

    // Throws ArgumentError on n < 1, accuracies outside [0,1] or acc_b > acc_a.
    void validate() const;
};

// Feasible range of the joint-correct proportion p11 implied by the 2x2
// agreement table: max(0, acc_a + acc_b - 1) <= p11 <= min(acc_a, acc_b).
struct CongruenceBounds {
    double lower = 0.0;
    double upper = 0.0;

    bool contains(double v) const noexcept;
};

CongruenceBounds congruence_bounds(const ClassificationComparison& cmp);

// Projects an assumed p11 onto the feasible range. Values inside the bounds
// are returned unchanged; otherwise the nearer bound is taken (ties go to the
// lower bound) and `clamped` is set.
CongruenceAssumption clamp_congruence(const ClassificationComparison& cmp,
                                      CongruenceAssumption assumed);

inline constexpr std::uint64_t kDefaultDraws = 200'000;

struct ClassificationOptions {
    // Round x1, x2 to the nearest integer before forming the posterior.
    bool round_counts = false;
    unsigned workers = 1;
};

// Posterior over (p1, p2, rest) where p1 (p2) is the probability that only A
// (only B) classifies an image correctly: Dirichlet(x1 + 1, x2 + 1, n - x1 - x2 + 2)
// with x1 = n (acc_a - p11), x2 = n (acc_b - p11).
DirichletParams classification_posterior(const ClassificationComparison& cmp, double p11,
                                         bool round_counts = false);

// Monte Carlo estimate M / k of P(p1 <= p2). `assumed` must already lie within
// the congruence bounds (see clamp_congruence).
//
// Draws are split into fixed-size shards, each with its own substream of
// `rng`, so the result does not depend on options.workers.
PfcEstimate pfc_classification(const ClassificationComparison& cmp,
                               const CongruenceAssumption& assumed, std::uint64_t k,
                               const RngStream& rng, const ClassificationOptions& options = {});

inline constexpr std::int64_t kOracleMaxN = 2000;

struct OracleOptions {
    double step = 1e-3;
    bool round_counts = false;
};

// Deterministic reference for pfc_classification: trapezoid-rule double
// integral of the marginal posterior density over {p1 <= p2, p1 + p2 <= 1}.
// Refuses n > kOracleMaxN.
PfcEstimate pfc_classification_oracle(const ClassificationComparison& cmp,
                                      const CongruenceAssumption& assumed,
                                      const OracleOptions& options = {});

// Stream id derived from the inputs of a classification estimate, so equal
// comparisons draw equal samples wherever they appear.
std::uint64_t comparison_stream_id(const ClassificationComparison& cmp, double p11);

}  // namespace claimgate
