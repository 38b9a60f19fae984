#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

struct TmfConfig {
    double count_fraction = 0.1;          // budget share for the edge count
    std::size_t max_cells = 1'000'000'000;  // refuse adjacency matrices beyond this

    void validate() const {
        if (!(count_fraction > 0.0) || !(count_fraction < 1.0))
            throw std::invalid_argument("tmf: count fraction must be in (0, 1)");
    }
};

struct TmfResult {
    Graph graph;
    std::size_t noisy_edge_target = 0;  // the privatized edge count actually used
    double eps_count = 0.0;
    double eps_matrix = 0.0;
};

/// Top-m filter baseline: privatize the edge count with a slice of the
/// budget, add Laplace noise to every upper-triangle adjacency cell with the
/// rest, keep the noisiest-looking m cells as edges. Deliberately dense —
/// O(n^2) cells — which is the point of comparison; the cell cap guards
/// against accidental huge inputs.
inline TmfResult tmf_synthesize(const Graph& g, double eps, RandomSource& rng,
                                const TmfConfig& config = {}) {
    config.validate();
    if (!(eps > 0.0)) throw std::invalid_argument("tmf: eps must be positive");
    const std::size_t n = g.node_count();
    const std::uint64_t cells =
        n < 2 ? 0 : static_cast<std::uint64_t>(n) * (n - 1) / 2;
    if (cells > config.max_cells)
        throw std::length_error("tmf: adjacency matrix exceeds the cell cap");

    TmfResult res;
    res.eps_count = config.count_fraction * eps;
    res.eps_matrix = eps - res.eps_count;

    double noisy_count =
        static_cast<double>(g.edge_count()) + sample_laplace(1.0 / res.eps_count, rng);
    long long m = std::llround(noisy_count);
    m = std::clamp<long long>(m, 0, static_cast<long long>(cells));
    res.noisy_edge_target = static_cast<std::size_t>(m);
    if (n == 0) {
        res.graph = Graph(0, {});
        return res;
    }

    // Noisy upper triangle; ties between equal scores break by a salted hash
    // of the cell so the order is deterministic but not id-biased.
    struct Cell {
        double score;
        std::uint64_t key;  // (i << 32) | j
    };
    std::vector<Cell> grid;
    grid.reserve(cells);
    const double scale = 1.0 / res.eps_matrix;
    const std::uint64_t tie_salt = rng.next_u64();
    std::vector<char> row(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        for (NodeId w : g.neighbors(i)) row[w] = 1;
        for (std::uint32_t j = i + 1; j < n; ++j) {
            double base = row[j] ? 1.0 : 0.0;
            grid.push_back({base + sample_laplace(scale, rng),
                            (static_cast<std::uint64_t>(i) << 32) | j});
        }
        for (NodeId w : g.neighbors(i)) row[w] = 0;
    }

    auto better = [tie_salt](const Cell& a, const Cell& b) {
        if (a.score != b.score) return a.score > b.score;
        return mix64(a.key ^ tie_salt) < mix64(b.key ^ tie_salt);
    };
    const std::size_t keep = std::min<std::size_t>(res.noisy_edge_target, grid.size());
    std::nth_element(grid.begin(), grid.begin() + keep, grid.end(), better);
    std::vector<Edge> edges;
    edges.reserve(keep);
    for (std::size_t idx = 0; idx < keep; ++idx)
        edges.emplace_back(static_cast<NodeId>(grid[idx].key >> 32),
                           static_cast<NodeId>(grid[idx].key & 0xffffffffu));
    res.graph = Graph(n, std::move(edges));
    return res;
}

}  // namespace privgraph
