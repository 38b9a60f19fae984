#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <vector>

#include "privgraph/influence.hpp"
#include "support/helpers.hpp"

using namespace privgraph;

TEST_CASE("degree discount hand cases", "[influence]") {
    SECTION("single seed is the highest-degree node") {
        auto seeds = degree_discount(test_support::star_graph(5), 1);
        REQUIRE(seeds == std::vector<NodeId>{0});
    }
    SECTION("k = n selects everyone exactly once") {
        auto seeds = degree_discount(test_support::complete_graph(4), 4);
        std::sort(seeds.begin(), seeds.end());
        REQUIRE(seeds == std::vector<NodeId>{0, 1, 2, 3});
    }
    SECTION("ties break toward the lower id") {
        Graph g(4, {{0, 1}, {2, 3}});
        auto seeds = degree_discount(g, 2);
        REQUIRE(seeds == std::vector<NodeId>{0, 2});
    }
    SECTION("discounting demotes the hub's neighbor") {
        // hub 0 over leaves 1-4 plus node 5; triangle 5-6-7. Raw degrees
        // would pick node 5 (degree 3) second, but its hub edge discounts it
        // below the untouched triangle nodes.
        Graph g(8, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}, {5, 6}, {6, 7}, {5, 7}});
        auto seeds = degree_discount(g, 2, 0.01);
        REQUIRE(seeds == std::vector<NodeId>{0, 6});
    }
    SECTION("argument validation") {
        auto g = test_support::path_graph(3);
        CHECK_THROWS_AS(degree_discount(g, 4), std::invalid_argument);
        CHECK_THROWS_AS(degree_discount(g, 1, -0.1), std::invalid_argument);
        CHECK_THROWS_AS(degree_discount(g, 1, 1.1), std::invalid_argument);
        CHECK(degree_discount(g, 0).empty());
    }
}

TEST_CASE("cascade spread degenerate probabilities are exact", "[influence]") {
    RandomSource rng(701);
    auto g = test_support::two_cliques(5, true);
    SECTION("p = 0 activates only the seeds") {
        auto est = ic_spread(g, {0, 7}, 0.0, 500, rng);
        CHECK(est.mean == 2.0);
        CHECK(est.stddev == 0.0);
        CHECK(est.trials == 500);
    }
    SECTION("p = 1 on a connected graph activates everyone") {
        auto est = ic_spread(g, {3}, 1.0, 200, rng);
        CHECK(est.mean == 10.0);
        CHECK(est.stddev == 0.0);
    }
    SECTION("duplicate seeds count once") {
        auto est = ic_spread(g, {4, 4, 4}, 0.0, 50, rng);
        CHECK(est.mean == 1.0);
    }
}

TEST_CASE("cascade spread matches the two-node closed form", "[influence]") {
    RandomSource rng(702);
    Graph g(2, {{0, 1}});
    auto est = ic_spread(g, {0}, 0.3, 100000, rng);
    CHECK(est.mean == Catch::Approx(1.3).margin(0.005));          // 3.4 SE
    CHECK(est.stddev == Catch::Approx(std::sqrt(0.21)).margin(0.01));
}

TEST_CASE("cascade spread sanity properties", "[influence]") {
    auto g = test_support::cycle_graph(10);
    SECTION("monotone in the activation probability") {
        double prev = -1.0;
        for (double p : {0.0, 0.1, 0.5, 1.0}) {
            RandomSource rng(703);
            auto est = ic_spread(g, {0}, p, 2000, rng);
            REQUIRE(est.mean > prev);
            REQUIRE(est.mean >= 1.0);
            REQUIRE(est.mean <= 10.0);
            prev = est.mean;
        }
    }
    SECTION("monotone in the seed set") {
        RandomSource r1(704), r2(705);
        auto small = ic_spread(g, {0}, 0.2, 5000, r1);
        auto large = ic_spread(g, {0, 5}, 0.2, 5000, r2);
        REQUIRE(large.mean >= small.mean);
    }
    SECTION("argument validation") {
        RandomSource rng(706);
        CHECK_THROWS_AS(ic_spread(g, {0}, 0.5, 0, rng), std::invalid_argument);
        CHECK_THROWS_AS(ic_spread(g, {10}, 0.5, 10, rng), std::invalid_argument);
        CHECK_THROWS_AS(ic_spread(g, {0}, -0.5, 10, rng), std::invalid_argument);
        CHECK_THROWS_AS(ic_spread(g, {0}, 1.5, 10, rng), std::invalid_argument);
    }
}

TEST_CASE("degree discount is competitive with the best pair", "[influence]") {
    RandomSource setup(707);
    const double p = 0.05;
    for (int instance = 0; instance < 3; ++instance) {
        auto g = test_support::random_connected_graph(15, 0.2, setup);
        auto seeds = degree_discount(g, 2, p);
        RandomSource rng_dd(800 + instance);
        double dd_spread = ic_spread(g, seeds, p, 4000, rng_dd).mean;
        double best = 0.0;
        for (NodeId u = 0; u < 15; ++u) {
            for (NodeId w = u + 1; w < 15; ++w) {
                RandomSource rng(900 + instance * 1000 + u * 16 + w);
                best = std::max(best, ic_spread(g, {u, w}, p, 1000, rng).mean);
            }
        }
        REQUIRE(dd_spread >= 0.9 * best);
    }
}
