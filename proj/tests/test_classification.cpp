#include <doctest.h>

#include <cmath>
#include <random>

#include "claimgate/classification.hpp"
#include "claimgate/errors.hpp"
#include "oracles.hpp"

using namespace claimgate;

namespace {

PfcEstimate mc(std::int64_t n, double a, double b, double p11, std::uint64_t k = kDefaultDraws,
               std::uint64_t seed = 42, unsigned workers = 1) {
    const ClassificationComparison cmp{n, a, b};
    const auto c = clamp_congruence(cmp, CongruenceAssumption::user(p11));
    return pfc_classification(cmp, c, k, RngStream{seed, comparison_stream_id(cmp, c.value)},
                              {false, workers});
}

double beta_identity(std::int64_t n, double a, double b, double p11) {
    const double x1 = static_cast<double>(n) * (a - p11);
    const double x2 = static_cast<double>(n) * (b - p11);
    return static_cast<double>(oracle::dirichlet_order_probability(x1 + 1, x2 + 1));
}

}  // namespace

TEST_SUITE("classification-pfc") {

TEST_CASE("comparison validation") {
    CHECK_NOTHROW((ClassificationComparison{10, 0.8, 0.8}.validate()));
    CHECK_THROWS_AS((ClassificationComparison{0, 0.8, 0.7}.validate()), ArgumentError);
    CHECK_THROWS_AS((ClassificationComparison{10, 1.2, 0.7}.validate()), ArgumentError);
    CHECK_THROWS_AS((ClassificationComparison{10, 0.8, -0.1}.validate()), ArgumentError);
    try {
        ClassificationComparison{10, 0.7, 0.8}.validate();
        FAIL("expected rank-order rejection");
    } catch (const ArgumentError& e) {
        CHECK(std::string(e.what()).find("rank-order") != std::string::npos);
    }
}

TEST_CASE("congruence bounds") {
    auto b = congruence_bounds({100, 0.9, 0.8});
    CHECK(b.lower == doctest::Approx(0.7));
    CHECK(b.upper == 0.8);
    b = congruence_bounds({100, 0.5, 0.4});
    CHECK(b.lower == 0.0);
    CHECK(b.upper == 0.4);
    b = congruence_bounds({100, 1.0, 1.0});
    CHECK(b.lower == 1.0);
    CHECK(b.upper == 1.0);
}

TEST_CASE("clamping") {
    auto c = clamp_congruence({500, 0.81, 0.80}, CongruenceAssumption::preset(Task::classification, Preset::median));
    CHECK(c.value == 0.67);
    CHECK_FALSE(c.clamped);
    CHECK(c.provenance == Provenance::preset_median);

    c = clamp_congruence({100, 0.95, 0.90}, CongruenceAssumption::user(0.67));
    CHECK(c.value == doctest::Approx(0.85));
    CHECK(c.clamped);

    c = clamp_congruence({100, 0.40, 0.30}, CongruenceAssumption::user(0.83));
    CHECK(c.value == 0.30);
    CHECK(c.clamped);

    CHECK_THROWS_AS((clamp_congruence({100, 0.4, 0.3}, CongruenceAssumption::user(1.5))), ArgumentError);
}

TEST_CASE("clamping is idempotent") {
    std::mt19937_64 gen(3);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 500; ++i) {
        double a = u(gen), b = u(gen);
        if (a < b) std::swap(a, b);
        const ClassificationComparison cmp{100, a, b};
        const auto once = clamp_congruence(cmp, CongruenceAssumption::user(u(gen)));
        const auto twice = clamp_congruence(cmp, once);
        CHECK(twice.value == once.value);
        CHECK_FALSE(twice.clamped);
        CHECK(congruence_bounds(cmp).contains(once.value));
    }
}

TEST_CASE("posterior parameters") {
    const auto p = classification_posterior({500, 0.81, 0.80}, 0.67);
    CHECK(p.alphas()[0] == doctest::Approx(71.0));
    CHECK(p.alphas()[1] == doctest::Approx(66.0));
    CHECK(p.alphas()[2] == doctest::Approx(367.0));
    const auto r = classification_posterior({7, 0.5, 0.4}, 0.25, true);
    CHECK(r.alphas()[0] == 3.0);  // 7 * 0.25 = 1.75 rounds to 2
    CHECK(r.alphas()[1] == 2.0);  // 7 * 0.15 = 1.05 rounds to 1
    CHECK_THROWS_AS((classification_posterior({100, 0.8, 0.7}, 0.75)), InvariantViolation);
}

TEST_CASE("argument errors") {
    const ClassificationComparison cmp{100, 0.8, 0.7};
    CHECK_THROWS_AS((pfc_classification(cmp, CongruenceAssumption::user(0.6), 0, RngStream{})), ArgumentError);
    CHECK_THROWS_AS((pfc_classification(cmp, CongruenceAssumption::user(0.3), 10, RngStream{})), ArgumentError);
    CHECK_THROWS_AS((pfc_classification_oracle({5000, 0.8, 0.7}, CongruenceAssumption::user(0.6))), ArgumentError);
}

TEST_CASE("symmetric case") {
    const auto e = mc(100, 0.8, 0.8, 0.7);
    CHECK(std::fabs(e.probability - 0.5) < 0.005);
    CHECK(e.method == EstimateMethod::monte_carlo);
    CHECK(e.k == kDefaultDraws);
    CHECK(e.std_err == doctest::Approx(std::sqrt(e.probability * (1 - e.probability) / 200000.0)));
    const auto o = pfc_classification_oracle({100, 0.8, 0.8}, CongruenceAssumption::user(0.7));
    CHECK(std::fabs(o.probability - 0.5) < 1e-4);
}

TEST_CASE("median test size with a one-point delta is not significant") {
    const auto e = mc(500, 0.81, 0.80, 0.67);
    CHECK(e.probability > 0.05);
    CHECK(std::fabs(e.probability - beta_identity(500, 0.81, 0.80, 0.67)) < 3 * e.std_err);
    // closed-form reference I_0.5(71, 66)
    CHECK(beta_identity(500, 0.81, 0.80, 0.67) == doctest::Approx(0.3341329261565906).epsilon(1e-10));
}

TEST_CASE("grid oracle against the exact Beta identity") {
    auto o = pfc_classification_oracle({10, 0.9, 0.7}, CongruenceAssumption::user(0.6));
    CHECK(o.method == EstimateMethod::grid_oracle);
    CHECK(std::fabs(o.probability - 0.1875) < 1e-4);

    o = pfc_classification_oracle({50, 0.9, 0.88}, CongruenceAssumption::user(0.83));
    CHECK(o.probability > 0.3);
    CHECK(o.probability < 0.5);
    CHECK(std::fabs(o.probability - 0.3544869091731243) < 1e-4);
}

TEST_CASE("monte carlo matches the grid oracle on the small example") {
    const auto e = mc(10, 0.9, 0.7, 0.6);
    const auto o = pfc_classification_oracle({10, 0.9, 0.7}, CongruenceAssumption::user(0.6));
    CHECK(std::fabs(e.probability - o.probability) < 3 * e.std_err);
}

TEST_CASE("monte carlo matches the Beta identity on random instances") {
    std::mt19937_64 gen(2024);
    std::uniform_int_distribution<int> nd(20, 3000);
    std::uniform_real_distribution<double> u(0.3, 0.98);
    std::uniform_real_distribution<double> d(0.0, 0.05);
    std::uniform_real_distribution<double> w(0.0, 1.0);
    for (int i = 0; i < 20; ++i) {
        const int n = nd(gen);
        const double a = u(gen);
        const double b = std::max(0.0, a - d(gen));
        const auto bounds = congruence_bounds({n, a, b});
        const double p11 = bounds.lower + w(gen) * (bounds.upper - bounds.lower);
        const auto e = mc(n, a, b, p11, 100000, 9);
        const double ref = beta_identity(n, a, b, p11);
        CAPTURE(n);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(std::fabs(e.probability - ref) < std::max(4 * e.std_err, 1e-4));
    }
}

TEST_CASE("determinism and worker independence") {
    const auto a = mc(800, 0.9, 0.885, 0.8, 100000, 77, 1);
    const auto b = mc(800, 0.9, 0.885, 0.8, 100000, 77, 1);
    const auto c = mc(800, 0.9, 0.885, 0.8, 100000, 77, 4);
    CHECK(a.probability == b.probability);
    CHECK(a.probability == c.probability);
    const auto d = mc(800, 0.9, 0.885, 0.8, 100000, 78, 1);
    CHECK(a.probability != d.probability);
}

TEST_CASE("monotone in delta, n and congruence") {
    const auto base = mc(500, 0.82, 0.80, 0.7);
    const auto wider = mc(500, 0.84, 0.80, 0.7);
    CHECK(wider.probability <= base.probability + 3 * base.std_err);
    const auto bigger = mc(5000, 0.82, 0.80, 0.7);
    CHECK(bigger.probability <= base.probability + 3 * base.std_err);
    const auto aligned = mc(500, 0.82, 0.80, 0.78);
    CHECK(aligned.probability <= base.probability + 3 * base.std_err);
}

TEST_CASE("stream id depends on content only") {
    CHECK(comparison_stream_id({100, 0.8, 0.7}, 0.6) == comparison_stream_id({100, 0.8, 0.7}, 0.6));
    CHECK(comparison_stream_id({100, 0.8, 0.7}, 0.6) != comparison_stream_id({101, 0.8, 0.7}, 0.6));
}

}
