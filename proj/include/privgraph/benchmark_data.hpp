#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <vector>

#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

// Deterministic generator for community-structured benchmark graphs with an
// exact node and edge count. Stands in for real-world social/web graphs when
// those files are not on disk: planted dense communities, mildly heavy-tailed
// degrees, sparse inter-community wiring.
struct BenchmarkSpec {
    std::string name;
    std::size_t nodes = 0;
    std::size_t edges = 0;
    std::size_t communities = 1;
    double intra_fraction = 0.85;  // share of edges aimed inside communities
    double degree_exponent = 0.75;  // within-community weight decay; higher = heavier hub tail
    std::uint64_t seed = 0;
};

/// Same scale as the Wikipedia chameleon page network: 2,277 nodes and
/// 31,421 edges. Few large hub-heavy communities, like the real network.
inline BenchmarkSpec chameleon_scale_spec() {
    return {"chameleon-scale", 2277, 31421, 6, 0.92, 0.8, 0xc4a3e1e0ULL};
}

/// Same scale as the Facebook ego-network collection: 4,039 nodes and
/// 88,234 edges (16 ego circles).
inline BenchmarkSpec facebook_scale_spec() {
    return {"facebook-scale", 4039, 88234, 16, 0.9, 0.75, 0xfacebe01ULL};
}

namespace detail {

inline std::uint64_t pack_edge(NodeId u, NodeId w) {
    if (u > w) std::swap(u, w);
    return (static_cast<std::uint64_t>(u) << 32) | w;
}

}  // namespace detail

inline Graph make_benchmark_graph(const BenchmarkSpec& spec) {
    const std::size_t n = spec.nodes;
    const std::size_t target = spec.edges;
    const std::uint64_t max_edges = n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (target > max_edges)
        throw std::invalid_argument("benchmark spec: more edges than node pairs");
    if (spec.communities < 1 || spec.communities > std::max<std::size_t>(n, 1))
        throw std::invalid_argument("benchmark spec: bad community count");
    if (!(spec.intra_fraction >= 0.0) || !(spec.intra_fraction <= 1.0))
        throw std::invalid_argument("benchmark spec: intra fraction out of [0, 1]");
    RandomSource rng(spec.seed);

    // Community sizes: power-law-ish weights, rounded to sum exactly n.
    const std::size_t c = spec.communities;
    std::vector<double> weight(c);
    double wsum = 0.0;
    for (std::size_t i = 0; i < c; ++i) {
        weight[i] = std::pow(static_cast<double>(i + 1), -0.7);
        wsum += weight[i];
    }
    std::vector<std::size_t> size(c);
    std::size_t assigned = 0;
    for (std::size_t i = 0; i < c; ++i) {
        size[i] = static_cast<std::size_t>(weight[i] / wsum * static_cast<double>(n));
        assigned += size[i];
    }
    for (std::size_t i = 0; assigned < n; i = (i + 1) % c) {
        ++size[i];
        ++assigned;
    }
    while (assigned > n) {  // possible only via rounding; shave the largest
        auto it = std::max_element(size.begin(), size.end());
        --*it;
        --assigned;
    }
    std::vector<NodeId> first(c + 1, 0);  // community i owns ids [first[i], first[i+1])
    for (std::size_t i = 0; i < c; ++i)
        first[i + 1] = first[i] + static_cast<NodeId>(size[i]);

    std::unordered_set<std::uint64_t> edge_set;
    edge_set.reserve(target * 2);

    // Intra-community edges: Chung-Lu with ranks as soft degree weights and a
    // bisected scale so the expected count matches the community's share.
    const double intra_total = spec.intra_fraction * static_cast<double>(target);
    double share_sum = 0.0;
    std::vector<double> share(c);
    for (std::size_t i = 0; i < c; ++i) {
        share[i] = std::pow(static_cast<double>(size[i]), 1.15);
        share_sum += share[i];
    }
    for (std::size_t ci = 0; ci < c; ++ci) {
        const std::size_t s = size[ci];
        if (s < 2) continue;
        double pairs = static_cast<double>(s) * (s - 1) / 2.0;
        double want = std::min(intra_total * share[ci] / share_sum, 0.95 * pairs);
        if (want < 1.0) continue;
        std::vector<double> nw(s);
        for (std::size_t r = 0; r < s; ++r)
            nw[r] = std::pow(static_cast<double>(r + 1), -spec.degree_exponent);
        auto expected = [&](double theta) {
            double acc = 0.0;
            for (std::size_t i = 0; i < s; ++i)
                for (std::size_t j = i + 1; j < s; ++j)
                    acc += std::min(1.0, theta * nw[i] * nw[j]);
            return acc;
        };
        double lo = 0.0, hi = 4.0;
        while (expected(hi) < want && hi < 1e12) hi *= 2.0;
        for (int iter = 0; iter < 60; ++iter) {
            double mid = 0.5 * (lo + hi);
            (expected(mid) < want ? lo : hi) = mid;
        }
        double theta = 0.5 * (lo + hi);
        for (std::size_t i = 0; i < s; ++i)
            for (std::size_t j = i + 1; j < s; ++j)
                if (rng.uniform01() < std::min(1.0, theta * nw[i] * nw[j]))
                    edge_set.insert(detail::pack_edge(first[ci] + static_cast<NodeId>(i),
                                                      first[ci] + static_cast<NodeId>(j)));
    }

    // Inter-community edges: random cross pairs, communities picked by size.
    auto random_node = [&](std::size_t ci) {
        return first[ci] + static_cast<NodeId>(rng.uniform_below(size[ci]));
    };
    if (c > 1) {
        std::size_t want_total = target > edge_set.size() ? target - edge_set.size() : 0;
        std::size_t attempts = 30 * want_total + 100;
        while (edge_set.size() < target && attempts-- > 0) {
            NodeId u = static_cast<NodeId>(rng.uniform_below(n));
            NodeId w = static_cast<NodeId>(rng.uniform_below(n));
            if (u == w) continue;
            edge_set.insert(detail::pack_edge(u, w));
        }
    }

    // Every node should occur in at least one edge (when the budget allows).
    std::vector<std::size_t> deg(n, 0);
    auto recount = [&]() {
        std::fill(deg.begin(), deg.end(), 0);
        for (std::uint64_t key : edge_set) {
            ++deg[key >> 32];
            ++deg[key & 0xffffffffu];
        }
    };
    recount();
    if (target >= (n + 1) / 2) {
        for (NodeId u = 0; u < n; ++u) {
            if (deg[u] > 0) continue;
            std::size_t ci = 0;
            while (first[ci + 1] <= u) ++ci;
            for (int tries = 0; tries < 64; ++tries) {
                NodeId w = size[ci] > 1 ? random_node(ci)
                                        : static_cast<NodeId>(rng.uniform_below(n));
                if (w == u) continue;
                if (edge_set.insert(detail::pack_edge(u, w)).second) {
                    ++deg[u];
                    ++deg[w];
                    break;
                }
            }
        }
    }

    // Trim or pad to the exact edge count.
    if (edge_set.size() > target) {
        std::vector<std::uint64_t> keys(edge_set.begin(), edge_set.end());
        std::sort(keys.begin(), keys.end());  // set order is not deterministic
        rng.shuffle(keys);
        for (std::uint64_t key : keys) {
            if (edge_set.size() <= target) break;
            NodeId u = static_cast<NodeId>(key >> 32), w = static_cast<NodeId>(key & 0xffffffffu);
            if (deg[u] <= 1 || deg[w] <= 1) continue;
            edge_set.erase(key);
            --deg[u];
            --deg[w];
        }
    }
    std::size_t stall = 0;
    while (edge_set.size() < target && stall < 1000000) {
        NodeId u = static_cast<NodeId>(rng.uniform_below(n));
        NodeId w = static_cast<NodeId>(rng.uniform_below(n));
        if (u == w) {
            ++stall;
            continue;
        }
        if (!edge_set.insert(detail::pack_edge(u, w)).second) ++stall;
    }
    if (edge_set.size() != target)
        throw std::runtime_error("benchmark generator failed to hit the edge target");

    std::vector<Edge> edges;
    edges.reserve(edge_set.size());
    for (std::uint64_t key : edge_set)
        edges.emplace_back(static_cast<NodeId>(key >> 32),
                           static_cast<NodeId>(key & 0xffffffffu));
    return Graph(n, std::move(edges));
}

}  // namespace privgraph
