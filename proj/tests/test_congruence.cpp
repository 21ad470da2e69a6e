#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>

#include "claimgate/classification.hpp"
#include "claimgate/congruence.hpp"
#include "claimgate/errors.hpp"
#include "oracles.hpp"

using namespace claimgate;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& body) {
    const auto dir = std::filesystem::temp_directory_path() / "claimgate-tests";
    std::filesystem::create_directories(dir);
    const auto p = dir / name;
    std::ofstream(p) << body;
    return p;
}

}  // namespace

TEST_SUITE("congruence") {

TEST_CASE("classification congruence") {
    auto c = congruence_classification({{true, true, false, false}, {true, false, true, false}});
    CHECK(c.value == 0.25);
    CHECK(c.provenance == Provenance::empirical);

    c = congruence_classification({{true, false, true, true, false}, {true, false, true, true, false}});
    CHECK(c.value == doctest::Approx(0.6));

    c = congruence_classification({{true, false, true, false}, {false, true, false, true}});
    CHECK(c.value == 0.0);

    CHECK_THROWS_AS((congruence_classification({{}, {}})), ArgumentError);
    CHECK_THROWS_AS((congruence_classification({{true}, {true, false}})), ArgumentError);
}

TEST_CASE("classification congruence lies within its bounds") {
    std::mt19937_64 gen(1);
    std::bernoulli_distribution coin(0.7);
    for (int t = 0; t < 200; ++t) {
        PairedClassificationOutcomes o;
        const int n = 1 + t % 37;
        for (int i = 0; i < n; ++i) {
            o.correct_a.push_back(coin(gen));
            o.correct_b.push_back(coin(gen));
        }
        const double a = static_cast<double>(std::count(o.correct_a.begin(), o.correct_a.end(), true)) / n;
        const double b = static_cast<double>(std::count(o.correct_b.begin(), o.correct_b.end(), true)) / n;
        const double v = congruence_classification(o).value;
        CHECK(v >= std::max(0.0, a + b - 1.0) - 1e-12);
        CHECK(v <= std::min(a, b) + 1e-12);
    }
}

TEST_CASE("segmentation congruence") {
    const std::vector<double> a{0.8, 0.9, 0.7, 0.6};
    CHECK(congruence_segmentation({a, a}).value == doctest::Approx(1.0).epsilon(1e-15));
    std::vector<double> neg;
    for (double x : a) neg.push_back(1.0 - 0.5 * x);
    CHECK(congruence_segmentation({a, neg}).value == doctest::Approx(-1.0).epsilon(1e-15));

    const std::vector<double> b{0.75, 0.85, 0.72, 0.65};
    const double expected = 0.9797218468620894;
    CHECK(static_cast<double>(oracle::pearson({0.8L, 0.9L, 0.7L, 0.6L}, {0.75L, 0.85L, 0.72L, 0.65L})) ==
          doctest::Approx(expected).epsilon(1e-15));
    CHECK(congruence_segmentation({a, b}).value == doctest::Approx(expected).epsilon(1e-14));

    CHECK_THROWS_AS((congruence_segmentation({{0.5, 0.5, 0.5}, {0.1, 0.2, 0.3}})), DegenerateError);
    CHECK_THROWS_AS((congruence_segmentation({{0.5, 0.6}, {0.1, 0.2}})), ArgumentError);
}

TEST_CASE("pearson is invariant under positive affine maps") {
    std::mt19937_64 gen(8);
    std::uniform_real_distribution<double> u(0.3, 0.95);
    std::vector<double> a(50), b(50);
    for (int i = 0; i < 50; ++i) {
        a[i] = u(gen);
        b[i] = 0.5 * a[i] + 0.5 * u(gen);
    }
    const double r = congruence_segmentation({a, b}).value;
    std::vector<double> scaled;
    for (double x : b) scaled.push_back(0.1 + 0.3 * x);
    CHECK(congruence_segmentation({a, scaled}).value == doctest::Approx(r).epsilon(1e-12));
}

TEST_CASE("quantiles") {
    const std::vector<double> one{0.5};
    auto q = quartiles(one);
    CHECK(q.q1 == 0.5);
    CHECK(q.median == 0.5);
    CHECK(q.q3 == 0.5);

    std::vector<double> four{0.3, 0.1, 0.4, 0.2};
    q = quartiles(four);
    CHECK(q.q1 == doctest::Approx(0.175).epsilon(1e-15));
    CHECK(q.median == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(q.q3 == doctest::Approx(0.325).epsilon(1e-15));

    std::mt19937_64 gen(4);
    for (int i = 0; i < 20; ++i) {
        std::shuffle(four.begin(), four.end(), gen);
        const auto p = quartiles(four);
        CHECK(p.q1 == q.q1);
        CHECK(p.median == q.median);
        CHECK(p.q3 == q.q3);
    }
    CHECK(quantile(four, 0.0) == 0.1);
    CHECK(quantile(four, 1.0) == 0.4);
    CHECK_THROWS_AS((quartiles(std::vector<double>{})), ArgumentError);
    CHECK_THROWS_AS(quantile(four, 1.5), ArgumentError);
}

TEST_CASE("quantiles are monotone under pointwise increase") {
    std::mt19937_64 gen(6);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        std::vector<double> x(1 + t), y;
        for (auto& v : x) v = u(gen);
        for (double v : x) y.push_back(v + u(gen) * 0.1);
        const auto qx = quartiles(x);
        const auto qy = quartiles(y);
        CHECK(qx.q1 <= qy.q1);
        CHECK(qx.median <= qy.median);
        CHECK(qx.q3 <= qy.q3);
        CHECK(qx.q1 <= qx.median);
        CHECK(qx.median <= qx.q3);
    }
}

TEST_CASE("congruence quantiles") {
    std::vector<CongruenceAssumption> v;
    for (double x : {0.1, 0.2, 0.3, 0.4}) v.push_back(CongruenceAssumption{x, Provenance::empirical, false});
    const auto q = congruence_quantiles(v);
    CHECK(q.median == doctest::Approx(0.25));
    CHECK_THROWS_AS((congruence_quantiles(std::vector<CongruenceAssumption>{})), ArgumentError);
}

TEST_CASE("paired csv readers") {
    auto p = write_temp("cls.csv", "id,a,b\n1,1,1\n2,1,0\n3,0,1\n4,0,0\n");
    const auto o = read_paired_classification_csv(p);
    REQUIRE(o.correct_a.size() == 4);
    CHECK(congruence_classification(o).value == 0.25);

    p = write_temp("seg.csv", "id,a,b\r\nx1,0.8,0.75\r\nx2,0.9,0.85\r\nx3,0.7,0.72\r\nx4,0.6,0.65\r\n");
    const auto d = read_paired_dsc_csv(p);
    REQUIRE(d.dsc_a.size() == 4);
    CHECK(congruence_segmentation(d).value == doctest::Approx(0.9797218468620894));

    CHECK_THROWS_AS(read_paired_classification_csv(write_temp("bad1.csv", "id,x,y\n1,1,1\n")), ArgumentError);
    CHECK_THROWS_AS(read_paired_classification_csv(write_temp("bad2.csv", "id,a,b\n1,2,1\n")), ArgumentError);
    CHECK_THROWS_AS(read_paired_dsc_csv(write_temp("bad3.csv", "id,a,b\n1,0.5\n")), ArgumentError);
    CHECK_THROWS_AS(read_paired_dsc_csv(write_temp("bad4.csv", "id,a,b\n1,0.5,1.5\n")), ArgumentError);
    CHECK_THROWS_AS(read_paired_dsc_csv("/nonexistent/file.csv"), ArgumentError);
}

}
