#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <limits>
#include <stdexcept>
#include <vector>

#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

/// Degree-discount seed selection for independent-cascade influence spread.
/// Repeatedly takes the node with the highest discounted degree
/// dd(v) = d(v) - 2 t(v) - (d(v) - t(v)) t(v) p, where t(v) counts already
/// selected neighbors. Ties go to the lower node id.
inline std::vector<NodeId> degree_discount(const Graph& g, std::size_t k, double p = 0.01) {
    const std::size_t n = g.node_count();
    if (k > n) throw std::invalid_argument("degree_discount: k exceeds node count");
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("degree_discount: p must be in [0, 1]");
    std::vector<double> dd(n);
    std::vector<double> t(n, 0.0);
    std::vector<char> chosen(n, 0);
    for (NodeId u = 0; u < n; ++u) dd[u] = static_cast<double>(g.degree(u));
    std::vector<NodeId> seeds;
    seeds.reserve(k);
    for (std::size_t round = 0; round < k; ++round) {
        NodeId best = 0;
        double best_dd = -std::numeric_limits<double>::infinity();
        for (NodeId u = 0; u < n; ++u) {
            if (chosen[u]) continue;
            if (dd[u] > best_dd) {
                best_dd = dd[u];
                best = u;
            }
        }
        chosen[best] = 1;
        seeds.push_back(best);
        for (NodeId w : g.neighbors(best)) {
            if (chosen[w]) continue;
            double d = static_cast<double>(g.degree(w));
            t[w] += 1.0;
            dd[w] = d - 2.0 * t[w] - (d - t[w]) * t[w] * p;
        }
    }
    return seeds;
}

struct SpreadEstimate {
    double mean = 0.0;
    double stddev = 0.0;  // sample standard deviation across trials
    std::size_t trials = 0;
};

/// Monte-Carlo estimate of independent-cascade spread: starting from the
/// seed set, each newly activated node gets one chance to activate each
/// inactive neighbor with probability p. Reports mean and sample standard
/// deviation of the final activated count.
inline SpreadEstimate ic_spread(const Graph& g, const std::vector<NodeId>& seeds, double p,
                                std::size_t trials, RandomSource& rng) {
    if (trials < 1) throw std::invalid_argument("ic_spread: need at least one trial");
    if (!(p >= 0.0) || !(p <= 1.0))
        throw std::invalid_argument("ic_spread: p must be in [0, 1]");
    for (NodeId s : seeds)
        if (s >= g.node_count()) throw std::invalid_argument("ic_spread: seed out of range");

    std::vector<std::uint32_t> active(g.node_count(), 0);  // trial stamp, avoids clearing
    std::deque<NodeId> frontier;
    double sum = 0.0, sum_sq = 0.0;
    for (std::size_t trial = 1; trial <= trials; ++trial) {
        const std::uint32_t stamp = static_cast<std::uint32_t>(trial);
        std::size_t activated = 0;
        frontier.clear();
        for (NodeId s : seeds) {
            if (active[s] != stamp) {
                active[s] = stamp;
                frontier.push_back(s);
                ++activated;
            }
        }
        while (!frontier.empty()) {
            NodeId u = frontier.front();
            frontier.pop_front();
            for (NodeId w : g.neighbors(u)) {
                if (active[w] == stamp) continue;
                if (rng.uniform01() < p) {
                    active[w] = stamp;
                    frontier.push_back(w);
                    ++activated;
                }
            }
        }
        double x = static_cast<double>(activated);
        sum += x;
        sum_sq += x * x;
    }
    SpreadEstimate est;
    est.trials = trials;
    est.mean = sum / static_cast<double>(trials);
    if (trials > 1) {
        double var = (sum_sq - sum * sum / static_cast<double>(trials)) /
                     static_cast<double>(trials - 1);
        est.stddev = std::sqrt(std::max(0.0, var));
    }
    return est;
}

}  // namespace privgraph
