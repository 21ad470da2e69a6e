#include <doctest.h>

#include <fmt/format.h>

#include <cmath>

#include "claimgate/errors.hpp"
#include "claimgate/grid_report.hpp"
#include "claimgate/planner.hpp"

using namespace claimgate;

namespace {

PlannerOptions fast(std::uint64_t k = 20000) {
    PlannerOptions o;
    o.k = k;
    return o;
}

}  // namespace

TEST_SUITE("study-planner") {

TEST_CASE("bands") {
    CHECK(band_of(0.5) == Band::red);
    CHECK(band_of(0.1000001) == Band::red);
    CHECK(band_of(0.10) == Band::orange);
    CHECK(band_of(0.0500001) == Band::orange);
    CHECK(band_of(0.05) == Band::green);
    CHECK(band_of(0.0) == Band::green);
    CHECK(to_string(Band::orange) == "orange");
}

TEST_CASE("draw count for a target") {
    CHECK(draws_for_target(0.05) == 17101);
    // 3 * sqrt(t (1 - t) / k) < 0.1 t
    for (double t : {0.01, 0.05, 0.1, 0.3}) {
        const double k = static_cast<double>(draws_for_target(t));
        CHECK(3 * std::sqrt(t * (1 - t) / k) < 0.1 * t);
    }
}

TEST_CASE("zero delta column is one half") {
    const std::vector<std::int64_t> n{10, 100, 1000};
    const std::vector<double> d{0.0, 0.02};
    auto g = build_grid(Task::segmentation, n, d, 0.8, fast());
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (const auto& e : g.cell(0, i).estimates) CHECK(e->probability == 0.5);
    }
    g = build_grid(Task::classification, n, d, 0.8, fast(200000));
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (const auto& e : g.cell(0, i).estimates) CHECK(std::fabs(e->probability - 0.5) < 3 * e->std_err);
    }
}

TEST_CASE("grid monotonicity along rows and columns") {
    const std::vector<std::int64_t> n{25, 50, 100, 200, 400, 800};
    const std::vector<double> d{0.005, 0.01, 0.02, 0.04};
    for (Task task : {Task::classification, Task::segmentation}) {
        const auto g = build_grid(task, n, d, 0.8, fast(50000));
        for (std::size_t di = 0; di < d.size(); ++di) {
            for (std::size_t ni = 0; ni < n.size(); ++ni) {
                for (std::size_t e = 0; e < 3; ++e) {
                    const auto& here = *g.cell(di, ni).estimates[e];
                    const double tol = task == Task::segmentation ? 0.0 : 3 * std::max(here.std_err, 1e-4);
                    if (ni + 1 < n.size()) {
                        CHECK(g.cell(di, ni + 1).estimates[e]->probability <= here.probability + tol);
                    }
                    if (di + 1 < d.size()) {
                        CHECK(g.cell(di + 1, ni).estimates[e]->probability <= here.probability + tol);
                    }
                }
            }
        }
    }
}

TEST_CASE("bands follow the median probability") {
    const std::vector<std::int64_t> n{50, 500, 5000};
    const std::vector<double> d{0.01, 0.05};
    const auto g = build_grid(Task::classification, n, d, 0.8, fast());
    for (const auto& c : g.cells) {
        REQUIRE_FALSE(c.infeasible);
        CHECK(c.band == band_of(c.at(Preset::median)->probability));
    }
}

TEST_CASE("larger test set lowers the probability at a one-point delta") {
    const std::vector<std::int64_t> n{500, 4000};
    const std::vector<double> d{0.01};
    // at the default base of 0.80 both cells stay red, but the ordering holds
    auto g = build_grid(Task::classification, n, d, kDefaultBasePerformance, fast(200000));
    const auto& small = *g.cell(0, 0).at(Preset::median);
    const auto& large = *g.cell(0, 1).at(Preset::median);
    CHECK(large.probability < small.probability - 3 * small.std_err);
    CHECK(static_cast<int>(g.cell(0, 0).band) >= static_cast<int>(g.cell(0, 1).band));
    // at a base of 0.70 the bounds leave room for the median congruence and the band drops
    g = build_grid(Task::classification, n, d, 0.70, fast(200000));
    CHECK(static_cast<int>(g.cell(0, 0).band) > static_cast<int>(g.cell(0, 1).band));
}

TEST_CASE("infeasible cells are flagged") {
    const std::vector<std::int64_t> n{1, 100};
    const std::vector<double> d{0.1, 0.3};
    const auto g = build_grid(Task::segmentation, n, d, 0.8, fast());
    CHECK(g.cell(0, 0).infeasible);  // n = 1
    CHECK_FALSE(g.cell(0, 1).infeasible);
    CHECK(g.cell(1, 1).infeasible);  // 0.8 + 0.3 > 1
    CHECK_FALSE(g.cell(1, 1).note.empty());
    const auto csv = grid_csv(g, RunConfig{});
    CHECK(csv.find("infeasible") != std::string::npos);
}

TEST_CASE("grid argument checks") {
    const std::vector<std::int64_t> n{100, 50};
    const std::vector<double> d{0.01};
    CHECK_THROWS_AS(build_grid(Task::classification, n, d, 0.8, fast()), ArgumentError);
    const std::vector<std::int64_t> ok{50, 100};
    CHECK_THROWS_AS(build_grid(Task::classification, ok, d, 1.5, fast()), ArgumentError);
    const std::vector<double> neg{-0.01};
    CHECK_THROWS_AS(build_grid(Task::classification, ok, neg, 0.8, fast()), ArgumentError);
}

TEST_CASE("grid is independent of worker count") {
    const std::vector<std::int64_t> n{30, 300};
    const std::vector<double> d{0.01, 0.03};
    auto o = fast();
    const auto a = build_grid(Task::classification, n, d, 0.8, o);
    o.workers = 4;
    const auto b = build_grid(Task::classification, n, d, 0.8, o);
    CHECK(grid_csv(a, RunConfig{}) == grid_csv(b, RunConfig{}));
}

TEST_CASE("required n brackets") {
    const auto cls = required_n(Task::classification, 0.01, kDefaultBasePerformance,
                                CongruenceAssumption::preset(Task::classification, Preset::median), 0.05, {});
    REQUIRE(cls.n);
    CHECK(*cls.n >= 2000);
    CHECK(*cls.n <= 8000);
    CHECK(cls.probability <= 0.05);
    CHECK(cls.k_used >= 17101);

    const auto seg = required_n(Task::segmentation, 0.01, kDefaultBasePerformance,
                                CongruenceAssumption::preset(Task::segmentation, Preset::median), 0.05, {});
    REQUIRE(seg.n);
    CHECK(*seg.n >= 310);
    CHECK(*seg.n <= 1240);
    CHECK(seg.k_used == 0);
}

TEST_CASE("required n is the smallest passing size for the closed form") {
    const auto r = CongruenceAssumption::user(0.67);
    const auto res = required_n(Task::segmentation, 0.01, 0.8, r, 0.05, {});
    REQUIRE(res.n);
    PlannerOptions o;
    CHECK(planning_pfc(Task::segmentation, *res.n, 0.01, 0.8, r, o).probability <= 0.05);
    CHECK(planning_pfc(Task::segmentation, *res.n - 1, 0.01, 0.8, r, o).probability > 0.05);
}

TEST_CASE("large delta needs few samples") {
    const auto cls = required_n(Task::classification, 0.3, 0.6,
                                CongruenceAssumption::preset(Task::classification, Preset::median), 0.05, fast());
    REQUIRE(cls.n);
    CHECK(*cls.n <= 50);
    PlannerOptions o;
    o.sds = SdPair{0.15, 0.15};
    const auto seg = required_n(Task::segmentation, 0.3, 0.6, CongruenceAssumption::user(0.67), 0.05, o);
    REQUIRE(seg.n);
    CHECK(*seg.n <= 50);
}

TEST_CASE("tighter target needs more samples") {
    const auto r = CongruenceAssumption::user(0.67);
    std::int64_t prev = 0;
    for (double t : {0.3, 0.2, 0.1, 0.05, 0.01, 0.001}) {
        const auto res = required_n(Task::segmentation, 0.02, 0.8, r, t, {});
        REQUIRE(res.n);
        CHECK(*res.n >= prev);
        prev = *res.n;
    }
    std::int64_t prev_cls = 0;
    for (double t : {0.3, 0.1, 0.05}) {
        const auto res = required_n(Task::classification, 0.02, 0.8, r, t, fast());
        REQUIRE(res.n);
        CHECK(*res.n >= prev_cls);
        prev_cls = *res.n;
    }
}

TEST_CASE("cap is reported") {
    const auto res = required_n(Task::segmentation, 1e-6, 0.8, CongruenceAssumption::user(0.0), 0.01, {}, 1000);
    CHECK(res.exceeds_cap);
    CHECK_FALSE(res.n);
    CHECK(res.probability > 0.01);
    CHECK_THROWS_AS((required_n(Task::segmentation, 0.0, 0.8, CongruenceAssumption::user(0.5), 0.05, {})),
                    ArgumentError);
    CHECK_THROWS_AS((required_n(Task::segmentation, 0.01, 0.8, CongruenceAssumption::user(0.5), 0.5, {})),
                    ArgumentError);
}

TEST_CASE("svg encodes the same bands as the csv") {
    const std::vector<std::int64_t> n{20, 200, 2000};
    const std::vector<double> d{0.0, 0.02, 0.1};
    const auto g = build_grid(Task::segmentation, n, d, 0.8, fast());
    const auto svg = grid_svg(g, RunConfig{});
    const auto csv = grid_csv(g, RunConfig{});
    for (const auto& c : g.cells) {
        const std::string rect = fmt::format("class=\"band-{}\" data-n=\"{}\" data-delta=\"{}\"",
                                             to_string(c.band), c.n, c.delta);
        CHECK(svg.find(rect) != std::string::npos);
        const std::string row = fmt::format("{},{},median,", c.n, c.delta);
        const auto at = csv.find(row);
        REQUIRE(at != std::string::npos);
        const auto line = csv.substr(at, csv.find('\n', at) - at);
        CHECK(line.find("," + std::string(to_string(c.band)) + ",") != std::string::npos);
    }
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
    CHECK(csv.find("median") != std::string::npos);
}

}
