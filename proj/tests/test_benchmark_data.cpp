#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "privgraph/benchmark_data.hpp"
#include "privgraph/community.hpp"

using namespace privgraph;

namespace {

std::size_t degree_sum(const Graph& g) {
    std::size_t total = 0;
    for (NodeId u = 0; u < g.node_count(); ++u) total += g.degree(u);
    return total;
}

std::size_t min_degree(const Graph& g) {
    std::size_t lo = g.node_count();
    for (NodeId u = 0; u < g.node_count(); ++u) lo = std::min(lo, g.degree(u));
    return lo;
}

}  // namespace

TEST_CASE("chameleon-scale stand-in hits its exact size", "[benchdata]") {
    auto g = make_benchmark_graph(chameleon_scale_spec());
    REQUIRE(g.node_count() == 2277);
    REQUIRE(g.edge_count() == 31421);
    CHECK(degree_sum(g) == 62842);
    CHECK(min_degree(g) >= 1);
}

TEST_CASE("facebook-scale stand-in hits its exact size", "[benchdata]") {
    auto g = make_benchmark_graph(facebook_scale_spec());
    REQUIRE(g.node_count() == 4039);
    REQUIRE(g.edge_count() == 88234);
    CHECK(degree_sum(g) == 176468);
    CHECK(min_degree(g) >= 1);
}

TEST_CASE("stand-in generation is deterministic", "[benchdata]") {
    BenchmarkSpec spec{"small", 200, 800, 4, 0.9, 0.8, 12345};
    auto a = make_benchmark_graph(spec);
    auto b = make_benchmark_graph(spec);
    REQUIRE(a.edges() == b.edges());
    spec.seed = 54321;
    auto c = make_benchmark_graph(spec);
    CHECK(a.edges() != c.edges());
}

TEST_CASE("custom specs hit exact counts too", "[benchdata]") {
    BenchmarkSpec spec{"tiny", 60, 180, 3, 0.85, 0.7, 99};
    auto g = make_benchmark_graph(spec);
    REQUIRE(g.node_count() == 60);
    REQUIRE(g.edge_count() == 180);
    CHECK(min_degree(g) >= 1);
}

TEST_CASE("invalid specs are rejected", "[benchdata]") {
    BenchmarkSpec too_dense{"x", 5, 100, 1, 0.9, 0.8, 1};
    CHECK_THROWS_AS(make_benchmark_graph(too_dense), std::invalid_argument);
    BenchmarkSpec no_comm{"x", 10, 5, 0, 0.9, 0.8, 1};
    CHECK_THROWS_AS(make_benchmark_graph(no_comm), std::invalid_argument);
    BenchmarkSpec too_many_comm{"x", 10, 5, 11, 0.9, 0.8, 1};
    CHECK_THROWS_AS(make_benchmark_graph(too_many_comm), std::invalid_argument);
    BenchmarkSpec bad_frac{"x", 10, 5, 2, 1.5, 0.8, 1};
    CHECK_THROWS_AS(make_benchmark_graph(bad_frac), std::invalid_argument);
}

TEST_CASE("stand-ins carry detectable community structure", "[benchdata]") {
    auto g = make_benchmark_graph(chameleon_scale_spec());
    RandomSource rng(777);
    auto part = louvain(g, 1.0, rng);
    CHECK(modularity(g, part, 1.0) >= 0.2);
    CHECK(part.community_count >= 2);
}
