#include <catch2/catch_amalgamated.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "privgraph/graph.hpp"
#include "support/helpers.hpp"

using privgraph::Edge;
using privgraph::Graph;
using privgraph::LabelMap;
using privgraph::NodeId;
using privgraph::ParseError;
using privgraph::parse_edge_list;
using privgraph::write_edge_list;

TEST_CASE("parsing a triangle edge list", "[graph]") {
    auto parsed = parse_edge_list("0 1\n1 2\n2 0\n");
    CHECK(parsed.graph.node_count() == 3);
    CHECK(parsed.graph.edge_count() == 3);
    CHECK(parsed.graph.has_edge(0, 1));
    CHECK(parsed.graph.has_edge(1, 2));
    CHECK(parsed.graph.has_edge(0, 2));
}

TEST_CASE("duplicate and self edges collapse during parse", "[graph]") {
    auto parsed = parse_edge_list("a b\nb a\na a\n");
    CHECK(parsed.graph.node_count() == 2);
    CHECK(parsed.graph.edge_count() == 1);
    CHECK(parsed.graph.has_edge(0, 1));
}

TEST_CASE("construction canonicalizes edges", "[graph]") {
    Graph g(4, {{1, 0}, {0, 1}, {2, 2}, {3, 1}});
    REQUIRE(g.edges() == std::vector<Edge>{{0, 1}, {1, 3}});
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(2) == 0);
}

TEST_CASE("out-of-range endpoints are rejected", "[graph]") {
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), std::invalid_argument);
    CHECK_THROWS_AS(Graph(0, {{0, 0}}), std::invalid_argument);
}

TEST_CASE("has_edge is symmetric and safe on bad queries", "[graph]") {
    Graph g(3, {{0, 1}});
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(1, 0));
    CHECK_FALSE(g.has_edge(1, 1));
    CHECK_FALSE(g.has_edge(0, 2));
    CHECK_FALSE(g.has_edge(5, 0));  // out of range: false, not UB
}

TEST_CASE("degree sum equals twice the edge count", "[graph]") {
    privgraph::RandomSource rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        auto g = test_support::random_graph(30, 0.2, rng);
        std::size_t total = 0;
        for (NodeId u = 0; u < g.node_count(); ++u) total += g.degree(u);
        REQUIRE(total == 2 * g.edge_count());
        auto seq = privgraph::degree_sequence(g);
        std::size_t total2 = 0;
        for (auto d : seq) total2 += d;
        REQUIRE(total2 == total);
    }
}

TEST_CASE("parse errors carry line numbers", "[graph]") {
    auto line_of = [](const std::string& text) -> std::size_t {
        try {
            parse_edge_list(text);
        } catch (const ParseError& e) {
            return e.line();
        }
        return 0;  // no throw
    };
    CHECK(line_of("0 1\nlonely\n") == 2);
    CHECK(line_of("0 1 2\n") == 1);
    CHECK(line_of("n=x2\n") == 1);
    CHECK(line_of("0 1\n\nn=5 3\n") == 3);
    CHECK(line_of("n=1\n0 1\n") == 2);  // header smaller than label count
    CHECK_THROWS_AS(parse_edge_list("a\n"), ParseError);
}

TEST_CASE("node-count header preserves isolated nodes", "[graph]") {
    auto parsed = parse_edge_list("n=5\n0 1\n");
    CHECK(parsed.graph.node_count() == 5);
    CHECK(parsed.graph.edge_count() == 1);
    // header accumulates by max when repeated
    auto parsed2 = parse_edge_list("n=3\nn=7\n0 1\n");
    CHECK(parsed2.graph.node_count() == 7);
}

TEST_CASE("comments and blank lines are skipped", "[graph]") {
    auto parsed = parse_edge_list("# a comment\n\n0 1 # trailing\n  \n1 2\n");
    CHECK(parsed.graph.node_count() == 3);
    CHECK(parsed.graph.edge_count() == 2);
}

TEST_CASE("write then parse round-trips the structure", "[graph]") {
    privgraph::RandomSource rng(32);
    auto g = test_support::random_graph(12, 0.3, rng);
    std::ostringstream out;
    write_edge_list(out, g);
    auto back = parse_edge_list(out.str());
    REQUIRE(back.graph.node_count() == g.node_count());
    REQUIRE(back.graph.edge_count() == g.edge_count());
    // labels fall back to decimal ids, so map each parsed edge back by value
    for (const auto& [u, w] : back.graph.edges()) {
        NodeId a = static_cast<NodeId>(std::stoul(back.labels.label(u)));
        NodeId b = static_cast<NodeId>(std::stoul(back.labels.label(w)));
        REQUIRE(g.has_edge(a, b));
    }
}

TEST_CASE("label map interns in first-appearance order", "[graph]") {
    auto parsed = parse_edge_list("zed alpha\nalpha beta\n");
    CHECK(parsed.labels.label(0) == "zed");
    CHECK(parsed.labels.label(1) == "alpha");
    CHECK(parsed.labels.label(2) == "beta");
    CHECK(parsed.labels.label(9) == "9");  // unknown ids fall back to decimal
}
