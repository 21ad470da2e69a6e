#include "claimgate/classification.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "claimgate/errors.hpp"
#include "claimgate/parallel.hpp"

namespace claimgate {

namespace {

// Slack for floating-point noise in bound arithmetic (0.9 + 0.8 - 1 != 0.7).
constexpr double kBoundTolerance = 1e-12;
constexpr std::uint64_t kShardDraws = 16384;

bool in_unit_interval(double v) { return v >= 0.0 && v <= 1.0; }

}  // namespace

void ClassificationComparison::validate() const {
    if (n < 1) throw ArgumentError("test-set size n must be >= 1");
    if (!in_unit_interval(acc_a) || !in_unit_interval(acc_b)) {
        throw ArgumentError("accuracies must lie in [0, 1]");
    }
    if (acc_b > acc_a) {
        throw ArgumentError(
            "rank-order violation: acc_b must not exceed acc_a (method A is the reported winner)");
    }
}

bool CongruenceBounds::contains(double v) const noexcept {
    return v >= lower - kBoundTolerance && v <= upper + kBoundTolerance;
}

CongruenceBounds congruence_bounds(const ClassificationComparison& cmp) {
    cmp.validate();
    return CongruenceBounds{std::max(0.0, cmp.acc_a + cmp.acc_b - 1.0),
                            std::min(cmp.acc_a, cmp.acc_b)};
}

CongruenceAssumption clamp_congruence(const ClassificationComparison& cmp,
                                      CongruenceAssumption assumed) {
    if (!in_unit_interval(assumed.value)) {
        throw ArgumentError("classification congruence must lie in [0, 1]");
    }
    const auto bounds = congruence_bounds(cmp);
    if (bounds.contains(assumed.value)) {
        assumed.clamped = false;
        return assumed;
    }
    const double to_lower = std::fabs(assumed.value - bounds.lower);
    const double to_upper = std::fabs(assumed.value - bounds.upper);
    assumed.value = to_upper < to_lower ? bounds.upper : bounds.lower;
    assumed.clamped = true;
    return assumed;
}

DirichletParams classification_posterior(const ClassificationComparison& cmp, double p11,
                                         bool round_counts) {
    const double n = static_cast<double>(cmp.n);
    double x1 = n * (cmp.acc_a - p11);
    double x2 = n * (cmp.acc_b - p11);
    const double slack = n * 1e-9;
    if (x1 < -slack || x2 < -slack) {
        throw InvariantViolation("negative contingency count after clamping (x1=" +
                                 std::to_string(x1) + ", x2=" + std::to_string(x2) + ")");
    }
    x1 = std::max(0.0, x1);
    x2 = std::max(0.0, x2);
    if (round_counts) {
        x1 = std::round(x1);
        x2 = std::round(x2);
    }
    return DirichletParams({x1 + 1.0, x2 + 1.0, n - x1 - x2 + 2.0});
}

std::uint64_t comparison_stream_id(const ClassificationComparison& cmp, double p11) {
    return hash_words({static_cast<std::uint64_t>(cmp.n), word_of(cmp.acc_a), word_of(cmp.acc_b),
                       word_of(p11)});
}

PfcEstimate pfc_classification(const ClassificationComparison& cmp,
                               const CongruenceAssumption& assumed, std::uint64_t k,
                               const RngStream& rng, const ClassificationOptions& options) {
    if (k == 0) throw ArgumentError("Monte Carlo draw count k must be >= 1");
    const auto bounds = congruence_bounds(cmp);
    if (assumed.value < bounds.lower - kBoundTolerance) {
        throw ArgumentError("assumed congruence below the feasible lower bound; clamp it first");
    }
    const auto params = classification_posterior(cmp, assumed.value, options.round_counts);

    const std::uint64_t shards = (k + kShardDraws - 1) / kShardDraws;
    std::vector<std::uint64_t> hits(shards, 0);
    parallel_for(shards, options.workers, [&](std::size_t s) {
        Sampler sampler(rng.substream(s));
        const std::uint64_t begin = s * kShardDraws;
        const std::uint64_t end = std::min(k, begin + kShardDraws);
        std::array<double, 3> p{};
        std::uint64_t m = 0;
        for (std::uint64_t i = begin; i < end; ++i) {
            sample_dirichlet(params, sampler, p);
            if (p[0] <= p[1]) ++m;
        }
        hits[s] = m;
    });

    std::uint64_t total = 0;
    for (auto h : hits) total += h;

    PfcEstimate est;
    est.method = EstimateMethod::monte_carlo;
    est.k = k;
    est.probability = static_cast<double>(total) / static_cast<double>(k);
    est.std_err = std::sqrt(est.probability * (1.0 - est.probability) / static_cast<double>(k));
    est.congruence_used = assumed;
    return est;
}

namespace {

class LogDirichletDensity {
public:
    explicit LogDirichletDensity(const DirichletParams& params) {
        const auto& a = params.alphas();
        e1_ = a[0] - 1.0;
        e2_ = a[1] - 1.0;
        e3_ = a[2] - 1.0;
        log_norm_ = ln_gamma(a[0] + a[1] + a[2]) - ln_gamma(a[0]) - ln_gamma(a[1]) - ln_gamma(a[2]);
    }

    double operator()(double p1, double p2) const {
        const double rest = 1.0 - p1 - p2;
        double log_f = log_norm_;
        if (!add_term(log_f, e1_, p1) || !add_term(log_f, e2_, p2) || !add_term(log_f, e3_, rest)) {
            return 0.0;
        }
        return std::exp(log_f);
    }

private:
    // Adds e * log(p); p^0 is 1 even at p = 0. Returns false when the term is zero.
    static bool add_term(double& acc, double e, double p) {
        if (e == 0.0) return true;
        if (p <= 0.0) return false;
        acc += e * std::log(p);
        return true;
    }

    double e1_, e2_, e3_, log_norm_;
};

// Composite trapezoid of f(p1, p2) over p1 in [0, upper] with spacing <= step.
double inner_trapezoid(const LogDirichletDensity& f, double p2, double upper, double step) {
    if (upper <= 0.0) return 0.0;
    const auto m = static_cast<std::int64_t>(std::ceil(upper / step - 1e-9));
    const double h = upper / static_cast<double>(m);
    double acc = 0.5 * (f(0.0, p2) + f(upper, p2));
    for (std::int64_t i = 1; i < m; ++i) acc += f(h * static_cast<double>(i), p2);
    return acc * h;
}

}  // namespace

PfcEstimate pfc_classification_oracle(const ClassificationComparison& cmp,
                                      const CongruenceAssumption& assumed,
                                      const OracleOptions& options) {
    cmp.validate();
    if (cmp.n > kOracleMaxN) {
        throw ArgumentError("grid oracle is limited to n <= " + std::to_string(kOracleMaxN));
    }
    if (!(options.step > 0.0 && options.step <= 0.1)) {
        throw ArgumentError("grid oracle step must be in (0, 0.1]");
    }
    const auto params = classification_posterior(cmp, assumed.value, options.round_counts);
    const LogDirichletDensity density(params);

    const auto steps = static_cast<std::int64_t>(std::llround(1.0 / options.step));
    const double h = 1.0 / static_cast<double>(steps);
    double region = 0.0;
    double total = 0.0;
    for (std::int64_t j = 0; j <= steps; ++j) {
        const double p2 = h * static_cast<double>(j);
        const double w = (j == 0 || j == steps) ? 0.5 : 1.0;
        region += w * inner_trapezoid(density, p2, std::min(p2, 1.0 - p2), h);
        total += w * inner_trapezoid(density, p2, 1.0 - p2, h);
    }

    PfcEstimate est;
    est.method = EstimateMethod::grid_oracle;
    // Dividing by the integral over the whole simplex cancels most of the
    // discretization bias.
    est.probability = region / total;
    est.congruence_used = assumed;
    return est;
}

}  // namespace claimgate
