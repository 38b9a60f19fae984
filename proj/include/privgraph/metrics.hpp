#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "privgraph/community.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

inline constexpr double kRelErrDelta = 1e-9;  // keeps relative errors finite at 0

/// |x_hat - x| / max(delta, x): relative error against reference value x.
inline double relative_error(double x, double x_hat) {
    return std::fabs(x_hat - x) / std::max(kRelErrDelta, x);
}

/// Normalized mutual information between two partitions of the same nodes,
/// natural log, 0*log(0) = 0. Two trivial single-community partitions are
/// identical, hence NMI 1.
inline double nmi(const Partition& a, const Partition& b) {
    if (a.labels.size() != b.labels.size())
        throw std::invalid_argument("nmi: partitions cover different node sets");
    const double n = static_cast<double>(a.labels.size());
    if (a.labels.empty()) return 1.0;
    std::vector<double> row(a.community_count, 0.0), col(b.community_count, 0.0);
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> joint;
    for (std::size_t u = 0; u < a.labels.size(); ++u) {
        row[a.labels[u]] += 1.0;
        col[b.labels[u]] += 1.0;
        joint[{a.labels[u], b.labels[u]}] += 1.0;
    }
    double num = 0.0;
    for (const auto& [key, nij] : joint)
        num += -2.0 * nij * std::log(nij * n / (row[key.first] * col[key.second]));
    double den = 0.0;
    for (double ai : row) den += ai * std::log(ai / n);
    for (double bj : col) den += bj * std::log(bj / n);
    if (den == 0.0) return 1.0;  // both partitions are a single community
    return num / den;
}

struct EvcResult {
    std::vector<double> scores;
    bool converged = true;
};

/// Eigenvector centrality by power iteration on I + A (the shift keeps the
/// dominant eigenvalue positive and unique in sign). Uniform start, L2
/// normalization, stop when the max component change is <= tol.
inline EvcResult eigenvector_centrality(const Graph& g, double tol = 1e-10,
                                        std::size_t max_iter = 10000) {
    const std::size_t n = g.node_count();
    EvcResult res;
    if (n == 0) return res;
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    res.converged = false;
    for (std::size_t it = 0; it < max_iter; ++it) {
        for (std::size_t u = 0; u < n; ++u) {
            double acc = x[u];
            for (NodeId w : g.neighbors(static_cast<NodeId>(u))) acc += x[w];
            next[u] = acc;
        }
        double norm = std::sqrt(std::inner_product(next.begin(), next.end(), next.begin(), 0.0));
        if (norm > 0.0)
            for (double& v : next) v /= norm;
        double diff = 0.0;
        for (std::size_t u = 0; u < n; ++u) diff = std::max(diff, std::fabs(next[u] - x[u]));
        x.swap(next);
        if (diff <= tol) {
            res.converged = true;
            break;
        }
    }
    res.scores = std::move(x);
    return res;
}

struct EvcComparison {
    double overlap;  // fraction of the top-k node sets shared
    double mae;      // mean absolute difference of the rank-aligned top-k scores
    bool converged;  // false if either power iteration hit the cap
};

/// Compares eigenvector centralities over the top max(1, floor(fraction*n))
/// nodes: overlap of the two top-k node sets, plus the MAE between the
/// rank-aligned top-k scores (i-th largest vs i-th largest).
inline EvcComparison evc_compare(const Graph& orig, const Graph& synth,
                                 double fraction = 0.01) {
    if (orig.node_count() != synth.node_count())
        throw std::invalid_argument("evc_compare: node counts differ");
    const std::size_t n = orig.node_count();
    EvcComparison cmp{1.0, 0.0, true};
    if (n == 0) return cmp;
    EvcResult a = eigenvector_centrality(orig);
    EvcResult b = eigenvector_centrality(synth);
    cmp.converged = a.converged && b.converged;

    auto top_k = [n](const std::vector<double>& scores, std::size_t k) {
        std::vector<NodeId> ids(n);
        for (std::size_t i = 0; i < n; ++i) ids[i] = static_cast<NodeId>(i);
        std::sort(ids.begin(), ids.end(), [&](NodeId x, NodeId y) {
            if (scores[x] != scores[y]) return scores[x] > scores[y];
            return x < y;
        });
        ids.resize(k);
        std::sort(ids.begin(), ids.end());
        return ids;
    };
    const std::size_t k =
        std::max<std::size_t>(1, static_cast<std::size_t>(fraction * static_cast<double>(n)));
    auto ta = top_k(a.scores, k), tb = top_k(b.scores, k);
    std::vector<NodeId> common;
    std::set_intersection(ta.begin(), ta.end(), tb.begin(), tb.end(),
                          std::back_inserter(common));
    cmp.overlap = static_cast<double>(common.size()) / static_cast<double>(k);

    std::sort(a.scores.begin(), a.scores.end(), std::greater<>());
    std::sort(b.scores.begin(), b.scores.end(), std::greater<>());
    double acc = 0.0;
    for (std::size_t i = 0; i < k; ++i) acc += std::fabs(a.scores[i] - b.scores[i]);
    cmp.mae = acc / static_cast<double>(k);
    return cmp;
}

/// KL divergence between degree distributions, KL(original || synthetic).
/// The synthetic side is smoothed by 1e-9 on the union support and
/// renormalized, so it never has a zero where the original has mass.
inline double degree_kl(const Graph& orig, const Graph& synth) {
    auto histo = [](const Graph& g) {
        std::map<std::size_t, double> h;
        for (NodeId u = 0; u < g.node_count(); ++u) h[g.degree(u)] += 1.0;
        for (auto& [d, c] : h) c /= static_cast<double>(g.node_count());
        return h;
    };
    if (orig.node_count() == 0 || synth.node_count() == 0)
        throw std::invalid_argument("degree_kl: empty graph");
    auto p = histo(orig), q = histo(synth);
    std::map<std::size_t, double> support = p;
    for (const auto& [d, c] : q) support.try_emplace(d, 0.0);
    constexpr double kSmooth = 1e-9;
    double qmass = 1.0 + kSmooth * static_cast<double>(support.size());
    double kl = 0.0;
    for (const auto& [d, pd] : support) {
        if (pd == 0.0) continue;
        auto it = q.find(d);
        double qd = ((it != q.end() ? it->second : 0.0) + kSmooth) / qmass;
        kl += pd * std::log(pd / qd);
    }
    return kl;
}

namespace detail {

/// BFS eccentricity of src within its component; fills dist (-1 = unreached).
inline std::size_t bfs_ecc(const Graph& g, NodeId src, std::vector<std::int64_t>& dist) {
    dist.assign(g.node_count(), -1);
    std::deque<NodeId> queue{src};
    dist[src] = 0;
    std::size_t ecc = 0;
    while (!queue.empty()) {
        NodeId u = queue.front();
        queue.pop_front();
        for (NodeId w : g.neighbors(u)) {
            if (dist[w] < 0) {
                dist[w] = dist[u] + 1;
                ecc = std::max(ecc, static_cast<std::size_t>(dist[w]));
                queue.push_back(w);
            }
        }
    }
    return ecc;
}

}  // namespace detail

struct DiameterResult {
    std::size_t value = 0;
    bool exact = true;
};

/// Diameter of the largest connected component. Exact all-pairs BFS up to
/// 10k nodes in the component; beyond that, iFUB (double sweep for a lower
/// bound, then eccentricities by descending BFS level until the bound
/// certifies) with a BFS budget — if the budget runs out the result is the
/// best lower bound and `exact` is false.
inline DiameterResult graph_diameter(const Graph& g) {
    DiameterResult res;
    const std::size_t n = g.node_count();
    if (n == 0) return res;

    // largest connected component
    std::vector<std::int64_t> comp(n, -1);
    std::int64_t ncomp = 0;
    std::vector<std::size_t> comp_size;
    std::deque<NodeId> queue;
    for (NodeId s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        comp[s] = ncomp;
        comp_size.push_back(1);
        queue.push_back(s);
        while (!queue.empty()) {
            NodeId u = queue.front();
            queue.pop_front();
            for (NodeId w : g.neighbors(u)) {
                if (comp[w] < 0) {
                    comp[w] = ncomp;
                    ++comp_size.back();
                    queue.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::int64_t big = static_cast<std::int64_t>(
        std::max_element(comp_size.begin(), comp_size.end()) - comp_size.begin());
    std::vector<NodeId> cc;
    for (NodeId u = 0; u < n; ++u)
        if (comp[u] == big) cc.push_back(u);
    if (cc.size() <= 1) return res;  // single node: diameter 0, exact

    std::vector<std::int64_t> dist;
    if (cc.size() <= 10000) {
        std::size_t best = 0;
        for (NodeId u : cc) best = std::max(best, detail::bfs_ecc(g, u, dist));
        res.value = best;
        return res;
    }

    // double sweep from the max-degree node for a lower bound and a midpoint
    NodeId start = cc[0];
    for (NodeId u : cc)
        if (g.degree(u) > g.degree(start)) start = u;
    detail::bfs_ecc(g, start, dist);
    NodeId far1 = start;
    for (NodeId u : cc)
        if (dist[u] > dist[far1]) far1 = u;
    std::size_t ecc1 = detail::bfs_ecc(g, far1, dist);
    NodeId far2 = far1;
    for (NodeId u : cc)
        if (dist[u] > dist[far2]) far2 = u;
    std::size_t lb = ecc1;
    // midpoint of the far1 -> far2 path: walk parents via distance levels
    NodeId mid = far2;
    {
        std::size_t steps = static_cast<std::size_t>(dist[far2]) / 2;
        NodeId cur = far2;
        for (std::size_t s = 0; s < steps; ++s) {
            for (NodeId w : g.neighbors(cur)) {
                if (dist[w] == dist[cur] - 1) {
                    cur = w;
                    break;
                }
            }
        }
        mid = cur;
    }
    std::vector<std::int64_t> level;
    detail::bfs_ecc(g, mid, level);
    std::vector<NodeId> by_level = cc;
    std::sort(by_level.begin(), by_level.end(),
              [&](NodeId x, NodeId y) { return level[x] > level[y]; });
    std::size_t budget = 5000;
    res.exact = false;
    for (NodeId u : by_level) {
        if (lb >= 2 * static_cast<std::size_t>(level[u])) {
            res.exact = true;  // remaining eccentricities cannot exceed lb
            break;
        }
        if (budget-- == 0) break;
        lb = std::max(lb, detail::bfs_ecc(g, u, dist));
    }
    res.value = lb;
    return res;
}

/// Global clustering coefficient: 3 * triangles / wedges. Wedge-free graphs
/// score 0.
inline double global_clustering(const Graph& g) {
    double wedges = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        double d = static_cast<double>(g.degree(u));
        wedges += d * (d - 1.0) / 2.0;
    }
    if (wedges == 0.0) return 0.0;
    double closed = 0.0;  // per edge: common neighbors; sums to 3 * triangles
    for (const auto& [u, w] : g.edges()) {
        const auto& nu = g.neighbors(u);
        const auto& nw = g.neighbors(w);
        std::size_t i = 0, j = 0;
        while (i < nu.size() && j < nw.size()) {
            if (nu[i] == nw[j]) {
                ++closed;
                ++i;
                ++j;
            } else if (nu[i] < nw[j]) {
                ++i;
            } else {
                ++j;
            }
        }
    }
    return closed / wedges;
}

/// Mean of per-node local clustering coefficients (degree < 2 counts 0).
inline double average_local_clustering(const Graph& g) {
    if (g.node_count() == 0) return 0.0;
    double acc = 0.0;
    for (NodeId u = 0; u < g.node_count(); ++u) {
        std::size_t d = g.degree(u);
        if (d < 2) continue;
        const auto& nbrs = g.neighbors(u);
        std::size_t links = 0;
        for (std::size_t i = 0; i < nbrs.size(); ++i)
            for (std::size_t j = i + 1; j < nbrs.size(); ++j)
                if (g.has_edge(nbrs[i], nbrs[j])) ++links;
        acc += 2.0 * static_cast<double>(links) /
               (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    return acc / static_cast<double>(g.node_count());
}

struct MetricsReport {
    double nmi = 0.0;
    double evc_overlap = 0.0;
    double evc_mae = 0.0;
    double degree_kl = 0.0;
    double diameter_re = 0.0;
    double cc_re = 0.0;
    double modularity_re = 0.0;
    bool evc_converged = true;
    bool diameter_exact = true;
};

struct MetricsOptions {
    double evc_fraction = 0.01;
    bool clustering_average_local = false;
    double resolution = 1.0;  // for the community detection behind nmi / modularity_re
};

/// All seven comparison metrics between an original graph and a synthetic
/// stand-in over the same node set. Community detection runs with identical
/// child RNG streams on both graphs, so comparing a graph against itself is
/// exact: NMI 1, every error metric 0.
inline MetricsReport evaluate_graphs(const Graph& orig, const Graph& synth, RandomSource& rng,
                                     const MetricsOptions& opt = {}) {
    if (orig.node_count() != synth.node_count())
        throw std::invalid_argument("evaluate_graphs: node counts differ");
    MetricsReport rep;

    RandomSource rng_orig = rng.split(0x6f726967);  // same salt on purpose:
    RandomSource rng_syn = rng.split(0x6f726967);   // identical inputs -> identical runs
    Partition part_orig = louvain(orig, opt.resolution, rng_orig);
    Partition part_syn = louvain(synth, opt.resolution, rng_syn);
    rep.nmi = nmi(part_orig, part_syn);
    rep.modularity_re = relative_error(modularity(orig, part_orig, opt.resolution),
                                       modularity(synth, part_syn, opt.resolution));

    EvcComparison evc = evc_compare(orig, synth, opt.evc_fraction);
    rep.evc_overlap = evc.overlap;
    rep.evc_mae = evc.mae;
    rep.evc_converged = evc.converged;

    rep.degree_kl = degree_kl(orig, synth);

    DiameterResult da = graph_diameter(orig);
    DiameterResult db = graph_diameter(synth);
    rep.diameter_re = relative_error(static_cast<double>(da.value),
                                     static_cast<double>(db.value));
    rep.diameter_exact = da.exact && db.exact;

    double ca = opt.clustering_average_local ? average_local_clustering(orig)
                                             : global_clustering(orig);
    double cb = opt.clustering_average_local ? average_local_clustering(synth)
                                             : global_clustering(synth);
    rep.cc_re = relative_error(ca, cb);
    return rep;
}

}  // namespace privgraph
