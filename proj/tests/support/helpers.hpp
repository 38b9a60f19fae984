#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace test_support {

using privgraph::Edge;
using privgraph::Graph;
using privgraph::NodeId;

inline Graph path_graph(std::size_t n) {
    std::vector<Edge> e;
    for (NodeId u = 0; u + 1 < n; ++u) e.push_back({u, static_cast<NodeId>(u + 1)});
    return Graph(n, std::move(e));
}

inline Graph cycle_graph(std::size_t n) {
    std::vector<Edge> e;
    for (NodeId u = 0; u + 1 < n; ++u) e.push_back({u, static_cast<NodeId>(u + 1)});
    if (n > 2) e.push_back({0, static_cast<NodeId>(n - 1)});
    return Graph(n, std::move(e));
}

/// Node 0 is the hub.
inline Graph star_graph(std::size_t leaves) {
    std::vector<Edge> e;
    for (NodeId u = 1; u <= leaves; ++u) e.push_back({0, u});
    return Graph(leaves + 1, std::move(e));
}

inline Graph complete_graph(std::size_t n) {
    std::vector<Edge> e;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId w = u + 1; w < n; ++w) e.push_back({u, w});
    return Graph(n, std::move(e));
}

/// Two disjoint cliques on [0, size) and [size, 2*size); `bridged` adds the
/// single edge (size-1, size) between them.
inline Graph two_cliques(std::size_t size, bool bridged) {
    std::vector<Edge> e;
    for (NodeId u = 0; u < size; ++u)
        for (NodeId w = u + 1; w < size; ++w) {
            e.push_back({u, w});
            e.push_back({static_cast<NodeId>(size + u), static_cast<NodeId>(size + w)});
        }
    if (bridged)
        e.push_back({static_cast<NodeId>(size - 1), static_cast<NodeId>(size)});
    return Graph(2 * size, std::move(e));
}

/// Planted labels for two_cliques: 0 for the first clique, 1 for the second.
inline std::vector<std::uint32_t> two_clique_labels(std::size_t size) {
    std::vector<std::uint32_t> labels(2 * size, 0);
    for (std::size_t u = size; u < 2 * size; ++u) labels[u] = 1;
    return labels;
}

/// Erdos-Renyi G(n, p).
inline Graph random_graph(std::size_t n, double p, privgraph::RandomSource& rng) {
    std::vector<Edge> e;
    for (NodeId u = 0; u < n; ++u)
        for (NodeId w = u + 1; w < n; ++w)
            if (rng.uniform01() < p) e.push_back({u, w});
    return Graph(n, std::move(e));
}

/// Random spanning tree plus G(n, extra_p) edges; always connected.
inline Graph random_connected_graph(std::size_t n, double extra_p,
                                    privgraph::RandomSource& rng) {
    std::vector<Edge> e;
    for (NodeId u = 1; u < n; ++u)
        e.push_back({static_cast<NodeId>(rng.uniform_below(u)), u});
    for (NodeId u = 0; u < n; ++u)
        for (NodeId w = u + 1; w < n; ++w)
            if (rng.uniform01() < extra_p) e.push_back({u, w});
    return Graph(n, std::move(e));
}

/// Like random_graph but guaranteed to have at least one edge.
inline Graph random_graph_with_edge(std::size_t n, double p, privgraph::RandomSource& rng) {
    Graph g = random_graph(n, p, rng);
    if (g.edge_count() > 0) return g;
    std::vector<Edge> e{{0, 1}};
    return Graph(n, std::move(e));
}

}  // namespace test_support
