#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <stdexcept>
#include <utility>
#include <vector>

#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

// Assignment of nodes (or super-nodes) to communities, labels densified
// to 0..community_count-1 in order of first appearance.
struct Partition {
    std::vector<std::uint32_t> labels;
    std::uint32_t community_count = 0;

    static Partition from_labels(std::vector<std::uint32_t> raw) {
        Partition p;
        p.labels.resize(raw.size());
        std::map<std::uint32_t, std::uint32_t> remap;
        for (std::size_t i = 0; i < raw.size(); ++i) {
            auto [it, inserted] = remap.emplace(raw[i], p.community_count);
            if (inserted) ++p.community_count;
            p.labels[i] = it->second;
        }
        return p;
    }

    std::vector<std::vector<NodeId>> members() const {
        std::vector<std::vector<NodeId>> out(community_count);
        for (std::size_t u = 0; u < labels.size(); ++u)
            out[labels[u]].push_back(static_cast<NodeId>(u));
        return out;
    }

    std::vector<std::size_t> sizes() const {
        std::vector<std::size_t> out(community_count, 0);
        for (auto l : labels) ++out[l];
        return out;
    }
};

/// Uniformly random partition into blocks of (at most) `block_size` nodes:
/// shuffle the nodes, then cut into ceil(n / block_size) consecutive chunks.
inline Partition random_partition(const Graph& g, std::size_t block_size, RandomSource& rng) {
    if (block_size < 1) throw std::invalid_argument("random_partition: block size must be >= 1");
    const std::size_t n = g.node_count();
    std::vector<NodeId> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<NodeId>(i);
    rng.shuffle(perm);
    Partition p;
    p.labels.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        p.labels[perm[i]] = static_cast<std::uint32_t>(i / block_size);
    p.community_count = static_cast<std::uint32_t>((n + block_size - 1) / block_size);
    return p;
}

// Weighted graph over super-nodes. `inner[i]` is the degree sum contributed
// by edges internal to super-node i (each internal edge counts twice);
// `adj` holds the symmetric positive inter-super-node weights.
struct WeightedSuperGraph {
    std::vector<double> inner;
    std::vector<std::vector<std::pair<std::uint32_t, double>>> adj;

    std::size_t size() const { return inner.size(); }

    double weighted_degree(std::size_t i) const {
        double d = inner[i];
        for (const auto& [j, w] : adj[i]) d += w;
        return d;
    }

    double total_weight() const {  // = 2m for the weighted graph
        double t = 0.0;
        for (std::size_t i = 0; i < size(); ++i) t += weighted_degree(i);
        return t;
    }
};

/// Collapses g along the partition: inner weights are twice the internal
/// edge counts, outer weights are the cross-community edge counts.
inline WeightedSuperGraph build_weighted_supergraph(const Graph& g, const Partition& p) {
    WeightedSuperGraph sg;
    sg.inner.assign(p.community_count, 0.0);
    sg.adj.assign(p.community_count, {});
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> outer;
    for (const auto& [u, w] : g.edges()) {
        std::uint32_t a = p.labels[u], b = p.labels[w];
        if (a == b) {
            sg.inner[a] += 2.0;
        } else {
            outer[{std::min(a, b), std::max(a, b)}] += 1.0;
        }
    }
    for (const auto& [key, weight] : outer) {
        sg.adj[key.first].emplace_back(key.second, weight);
        sg.adj[key.second].emplace_back(key.first, weight);
    }
    return sg;
}

/// Each node its own super-node, unit edge weights, no inner weight.
inline WeightedSuperGraph unit_supergraph(const Graph& g) {
    WeightedSuperGraph sg;
    sg.inner.assign(g.node_count(), 0.0);
    sg.adj.assign(g.node_count(), {});
    for (NodeId u = 0; u < g.node_count(); ++u)
        for (NodeId w : g.neighbors(u)) sg.adj[u].emplace_back(w, 1.0);
    return sg;
}

namespace detail {

inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t n) {
    // linear index of (i, j), i < j, in row-major upper-triangle order
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

}  // namespace detail

/// Applies the Laplace mechanism to all super-graph weights (sensitivity 2
/// for inner degree sums, 1 for outer edge counts — the two are disjoint
/// views of the edge set, so they compose in parallel), then calibrates each
/// family with NormSub. Inter-super-node weights that calibrate to zero drop
/// out of the returned graph.
inline WeightedSuperGraph perturb_supergraph(const WeightedSuperGraph& sg, double eps,
                                             RandomSource& rng,
                                             BudgetLedger* ledger = nullptr) {
    const std::size_t m = sg.size();
    constexpr std::size_t kMaxDensePairs = 500'000'000;  // ~4 GB of doubles
    if (m > 0 && (m - 1) / 2 > kMaxDensePairs / std::max<std::size_t>(m, 1))
        throw std::length_error("perturb_supergraph: too many super-node pairs");
    const std::size_t pairs = m == 0 ? 0 : m * (m - 1) / 2;

    std::vector<double> inner_noisy =
        laplace_perturb(sg.inner, Sensitivity{2.0}, eps, rng);

    std::vector<double> outer(pairs, 0.0);
    for (std::size_t i = 0; i < m; ++i)
        for (const auto& [j, w] : sg.adj[i])
            if (i < j) outer[detail::pair_index(i, j, m)] = w;
    std::vector<double> outer_noisy = laplace_perturb(outer, Sensitivity{1.0}, eps, rng);

    if (ledger) {
        ledger->record(Phase::community_init, "supergraph inner weights", eps,
                       CompositionKind::parallel);
        ledger->record(Phase::community_init, "supergraph outer weights", eps,
                       CompositionKind::parallel);
    }

    WeightedSuperGraph out;
    out.inner = norm_sub(inner_noisy);
    out.adj.assign(m, {});
    std::vector<double> outer_cal = norm_sub(outer_noisy);
    for (std::size_t i = 0, idx = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j, ++idx) {
            if (outer_cal[idx] > 0.0) {
                out.adj[i].emplace_back(static_cast<std::uint32_t>(j), outer_cal[idx]);
                out.adj[j].emplace_back(static_cast<std::uint32_t>(i), outer_cal[idx]);
            }
        }
    }
    return out;
}

/// Modularity with resolution t: sum over communities of
/// (internal degree sum / 2m) * t - (total degree sum / 2m)^2.
inline double modularity(const WeightedSuperGraph& sg, const Partition& p, double t) {
    const double two_m = sg.total_weight();
    if (!(two_m > 0.0)) throw std::domain_error("modularity undefined: graph has no weight");
    std::vector<double> in_c(p.community_count, 0.0), tot_c(p.community_count, 0.0);
    for (std::size_t i = 0; i < sg.size(); ++i) {
        std::uint32_t c = p.labels[i];
        in_c[c] += sg.inner[i];
        tot_c[c] += sg.weighted_degree(i);
        for (const auto& [j, w] : sg.adj[i])
            if (p.labels[j] == c) in_c[c] += w;  // visits each internal edge twice
    }
    double q = 0.0;
    for (std::uint32_t c = 0; c < p.community_count; ++c) {
        double frac = tot_c[c] / two_m;
        q += (in_c[c] / two_m) * t - frac * frac;
    }
    return q;
}

inline double modularity(const Graph& g, const Partition& p, double t) {
    if (g.edge_count() == 0) throw std::domain_error("modularity undefined: graph has no edges");
    const double two_m = 2.0 * static_cast<double>(g.edge_count());
    std::vector<double> in_c(p.community_count, 0.0), tot_c(p.community_count, 0.0);
    for (NodeId u = 0; u < g.node_count(); ++u) tot_c[p.labels[u]] += g.degree(u);
    for (const auto& [u, w] : g.edges())
        if (p.labels[u] == p.labels[w]) in_c[p.labels[u]] += 2.0;
    double q = 0.0;
    for (std::uint32_t c = 0; c < p.community_count; ++c) {
        double frac = tot_c[c] / two_m;
        q += (in_c[c] / two_m) * t - frac * frac;
    }
    return q;
}

namespace detail {

// One pass of local moves. Gains are evaluated exactly: moving node u into
// community C changes modularity by (t*k_uC - tot(C)*k_u/2m) / m relative to
// u sitting alone, so comparing these insert gains across candidate
// communities (u's own included) reproduces the exact modularity delta.
inline Partition louvain_one_level(const WeightedSuperGraph& g, double t, RandomSource& rng) {
    const std::size_t n = g.size();
    std::vector<std::uint32_t> label(n);
    for (std::size_t i = 0; i < n; ++i) label[i] = static_cast<std::uint32_t>(i);
    const double two_m = g.total_weight();
    if (!(two_m > 0.0)) return Partition::from_labels(std::move(label));

    std::vector<double> comm_tot(n);
    for (std::size_t i = 0; i < n; ++i) comm_tot[i] = g.weighted_degree(i);

    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
    rng.shuffle(order);

    std::vector<double> k_to(n, 0.0);  // scratch: weight from u to each community
    std::vector<std::uint32_t> touched;
    bool improved = true;
    while (improved) {
        improved = false;
        double pass_gain = 0.0;  // total modularity improvement this pass
        for (NodeId u : order) {
            const std::uint32_t cu = label[u];
            const double k_u = g.weighted_degree(u);
            touched.clear();
            for (const auto& [v, w] : g.adj[u]) {
                std::uint32_t cv = label[v];
                if (k_to[cv] == 0.0) touched.push_back(cv);
                k_to[cv] += w;
            }
            if (k_to[cu] == 0.0) touched.push_back(cu);  // staying is a candidate
            std::sort(touched.begin(), touched.end());

            comm_tot[cu] -= k_u;  // evaluate with u removed
            std::uint32_t best_c = cu;
            double best_gain = -std::numeric_limits<double>::infinity();
            double stay_gain = 0.0;
            for (std::uint32_t c : touched) {
                double gain = t * k_to[c] - comm_tot[c] * k_u / two_m;
                if (c == cu) stay_gain = gain;
                if (gain > best_gain) {  // ties keep the lowest label
                    best_gain = gain;
                    best_c = c;
                }
            }
            if (best_c != cu && best_gain > stay_gain) {
                label[u] = best_c;
                comm_tot[best_c] += k_u;
                improved = true;
                pass_gain += 2.0 * (best_gain - stay_gain) / two_m;
            } else {
                comm_tot[cu] += k_u;
            }
            for (std::uint32_t c : touched) k_to[c] = 0.0;
        }
        if (pass_gain < 1e-7) break;
    }
    return Partition::from_labels(std::move(label));
}

inline WeightedSuperGraph aggregate(const WeightedSuperGraph& g, const Partition& p) {
    WeightedSuperGraph out;
    out.inner.assign(p.community_count, 0.0);
    out.adj.assign(p.community_count, {});
    std::map<std::pair<std::uint32_t, std::uint32_t>, double> outer;
    for (std::size_t u = 0; u < g.size(); ++u) {
        std::uint32_t cu = p.labels[u];
        out.inner[cu] += g.inner[u];
        for (const auto& [v, w] : g.adj[u]) {
            std::uint32_t cv = p.labels[v];
            if (cu == cv)
                out.inner[cu] += w;  // both directions visited: weight doubles
            else if (cu < cv)
                outer[{cu, cv}] += w;  // each edge visited once with cu < cv
        }
    }
    for (const auto& [key, weight] : outer) {
        out.adj[key.first].emplace_back(key.second, weight);
        out.adj[key.second].emplace_back(key.first, weight);
    }
    return out;
}

}  // namespace detail

namespace detail {

inline Partition louvain_run(const WeightedSuperGraph& sg, double t, RandomSource& rng) {
    const std::size_t n = sg.size();
    std::vector<std::uint32_t> assign(n);
    for (std::size_t i = 0; i < n; ++i) assign[i] = static_cast<std::uint32_t>(i);
    WeightedSuperGraph cur = sg;
    while (cur.size() > 0) {
        Partition level = detail::louvain_one_level(cur, t, rng);
        if (level.community_count == cur.size()) break;
        for (auto& a : assign) a = level.labels[a];
        cur = detail::aggregate(cur, level);
    }
    return Partition::from_labels(std::move(assign));
}

}  // namespace detail

/// Louvain community detection on a weighted super-graph: repeated local
/// moves followed by aggregation, until a level stops merging anything.
/// The greedy search depends on the node order, so a few independently
/// shuffled runs are taken and the highest-modularity partition wins
/// (ties keep the earliest run).
inline Partition louvain(const WeightedSuperGraph& sg, double t, RandomSource& rng) {
    constexpr int kRestarts = 3;
    Partition best = detail::louvain_run(sg, t, rng);
    if (sg.total_weight() <= 0.0) return best;  // edgeless: nothing to score
    double best_q = modularity(sg, best, t);
    for (int run = 1; run < kRestarts; ++run) {
        Partition cand = detail::louvain_run(sg, t, rng);
        double q = modularity(sg, cand, t);
        if (q > best_q) {
            best_q = q;
            best = std::move(cand);
        }
    }
    return best;
}

inline Partition louvain(const Graph& g, double t, RandomSource& rng) {
    return louvain(unit_supergraph(g), t, rng);
}

/// Phase 1: random blocks -> weighted super-graph -> Laplace + NormSub ->
/// Louvain on the noisy super-graph -> labels pushed back down to nodes.
inline Partition community_initialize(const Graph& g, std::size_t block_size, double eps1,
                                      double t, RandomSource& rng,
                                      BudgetLedger* ledger = nullptr) {
    Partition blocks = random_partition(g, block_size, rng);
    WeightedSuperGraph sg = build_weighted_supergraph(g, blocks);
    WeightedSuperGraph noisy = perturb_supergraph(sg, eps1, rng, ledger);
    Partition grouped = louvain(noisy, t, rng);
    std::vector<std::uint32_t> labels(g.node_count());
    for (std::size_t u = 0; u < g.node_count(); ++u)
        labels[u] = grouped.labels[blocks.labels[u]];
    return Partition::from_labels(std::move(labels));
}

/// Phase 2: every node, in random order, is privately reassigned among the
/// currently non-empty communities via the exponential mechanism with
/// quality = edges into the candidate community. The node is removed from
/// its community first, so each of a node pair's two mechanisms sees at most
/// one endpoint of the protected edge; two rounds of eps2/2 compose to eps2.
inline Partition community_adjust(const Graph& g, const Partition& p, double eps2,
                                  RandomSource& rng, BudgetLedger* ledger = nullptr) {
    if (p.labels.size() != g.node_count())
        throw std::invalid_argument("community_adjust: partition does not match graph");
    if (!(eps2 > 0.0)) throw std::invalid_argument("community_adjust: eps must be positive");
    if (ledger) {
        ledger->record(Phase::community_adjust, "node reassignment (edge endpoint a)",
                       0.5 * eps2, CompositionKind::sequential);
        ledger->record(Phase::community_adjust, "node reassignment (edge endpoint b)",
                       0.5 * eps2, CompositionKind::sequential);
    }
    const std::size_t n = g.node_count();
    const std::uint32_t m = p.community_count;
    constexpr std::uint32_t kUnassigned = 0xffffffffu;
    std::vector<std::uint32_t> label = p.labels;
    std::vector<std::size_t> count(m, 0);
    for (auto l : label) ++count[l];

    std::vector<NodeId> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = static_cast<NodeId>(i);
    rng.shuffle(order);

    std::vector<double> k_to(m, 0.0);
    std::vector<std::uint32_t> touched;
    std::vector<std::uint32_t> cand;
    std::vector<double> qual;
    for (NodeId u : order) {
        const std::uint32_t cu = label[u];
        --count[cu];
        label[u] = kUnassigned;
        touched.clear();
        for (NodeId v : g.neighbors(u)) {
            std::uint32_t cv = label[v];
            if (cv == kUnassigned) continue;
            if (k_to[cv] == 0.0) touched.push_back(cv);
            k_to[cv] += 1.0;
        }
        cand.clear();
        qual.clear();
        for (std::uint32_t c = 0; c < m; ++c) {
            if (count[c] == 0) continue;  // vanished communities leave the pool
            cand.push_back(c);
            qual.push_back(k_to[c]);
        }
        std::uint32_t chosen = cu;
        if (!cand.empty())
            chosen = cand[em_select(qual, Sensitivity{1.0}, 0.5 * eps2, rng)];
        label[u] = chosen;
        ++count[chosen];
        for (std::uint32_t c : touched) k_to[c] = 0.0;
    }
    return Partition::from_labels(std::move(label));
}

}  // namespace privgraph
