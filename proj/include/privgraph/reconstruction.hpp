#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privgraph/community.hpp"
#include "privgraph/dp.hpp"
#include "privgraph/extraction.hpp"
#include "privgraph/graph.hpp"
#include "privgraph/random.hpp"

namespace privgraph {

/// How inter-community edges are realized from a calibrated pair count:
/// an independent Bernoulli coin per node pair, or exactly round(count)
/// distinct pairs drawn uniformly.
enum class InterSampling { bernoulli, exact_count };

struct SynthesisConfig {
    std::size_t community_size = 20;  // target block size for the random partition
    double resolution = 1.0;          // modularity resolution for community detection
    NormSubScope norm_sub_scope = NormSubScope::global;
    InterSampling inter_sampling = InterSampling::bernoulli;

    void validate() const {
        if (community_size < 1)
            throw std::invalid_argument("config: community size must be >= 1");
        if (!(resolution > 0.0))
            throw std::invalid_argument("config: resolution must be positive");
    }
};

/// Chung-Lu style generation inside one community: pair (u, w) becomes an
/// edge with probability min(1, d_u * d_w / sum(d)). A zero degree sum
/// yields no edges.
inline std::vector<Edge> reconstruct_intra(std::span<const double> degrees,
                                           std::span<const NodeId> members,
                                           RandomSource& rng) {
    if (degrees.size() != members.size())
        throw std::invalid_argument("reconstruct_intra: degree/member size mismatch");
    std::vector<Edge> edges;
    double sum = 0.0;
    for (double d : degrees) sum += d;
    if (!(sum > 0.0)) return edges;
    for (std::size_t i = 0; i < members.size(); ++i) {
        if (degrees[i] <= 0.0) continue;
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            double p = std::min(1.0, degrees[i] * degrees[j] / sum);
            if (rng.uniform01() < p) edges.emplace_back(members[i], members[j]);
        }
    }
    return edges;
}

/// Realizes `count` expected edges between two communities. Bernoulli mode
/// flips one coin per cross pair with p = min(1, count / (|A|*|B|)), walked
/// with geometric jumps so the cost is proportional to the edges produced.
/// Exact-count mode samples round(count) distinct pairs uniformly.
inline std::vector<Edge> reconstruct_inter(double count, std::span<const NodeId> side_a,
                                           std::span<const NodeId> side_b, RandomSource& rng,
                                           InterSampling mode = InterSampling::bernoulli) {
    std::vector<Edge> edges;
    const std::size_t na = side_a.size(), nb = side_b.size();
    if (na == 0 || nb == 0 || !(count > 0.0)) return edges;
    const double total_pairs = static_cast<double>(na) * static_cast<double>(nb);
    auto emit = [&](std::uint64_t idx) {
        edges.emplace_back(side_a[idx / nb], side_b[idx % nb]);
    };
    if (mode == InterSampling::bernoulli) {
        const double p = std::min(1.0, count / total_pairs);
        const std::uint64_t total = static_cast<std::uint64_t>(na) * nb;
        if (p >= 1.0) {
            for (std::uint64_t idx = 0; idx < total; ++idx) emit(idx);
            return edges;
        }
        // skip-sampling: gaps between successes are geometric with rate p
        const double log_q = std::log1p(-p);
        double pos = -1.0;
        while (true) {
            double gap = std::floor(std::log(rng.uniform_open()) / log_q);
            pos += 1.0 + gap;
            if (pos >= total_pairs) break;
            emit(static_cast<std::uint64_t>(pos));
        }
    } else {
        const std::uint64_t total = static_cast<std::uint64_t>(na) * nb;
        std::uint64_t want = static_cast<std::uint64_t>(std::llround(count));
        if (want > total) want = total;
        // Floyd's sampling: uniform subset of `want` distinct pair indices.
        std::vector<std::uint64_t> picked;
        picked.reserve(want);
        auto contains = [&](std::uint64_t x) {
            for (std::uint64_t v : picked)
                if (v == x) return true;
            return false;
        };
        for (std::uint64_t j = total - want; j < total; ++j) {
            std::uint64_t t = rng.uniform_below(j + 1);
            picked.push_back(contains(t) ? j : t);
        }
        for (std::uint64_t idx : picked) emit(idx);
    }
    return edges;
}

struct SynthesisResult {
    Graph graph;
    BudgetLedger ledger;
    Partition communities;         // final private partition
    ExtractedInfo calibrated_info;  // noisy, calibrated counts the graph was built from
};

/// Full pipeline: private community initialization (eps1), private node
/// reassignment (eps2), private degree/edge-count extraction (eps3), then
/// noise-free reconstruction. The returned ledger accounts for every
/// mechanism invocation; an accountant failure here is a programming error.
inline SynthesisResult synthesize(const Graph& g, const SynthesisConfig& config,
                                  const PrivacyBudget& budget, RandomSource& rng) {
    config.validate();
    SynthesisResult result;
    BudgetLedger& ledger = result.ledger;

    Partition initial = community_initialize(g, config.community_size, budget.eps1,
                                             config.resolution, rng, &ledger);
    Partition communities = community_adjust(g, initial, budget.eps2, rng, &ledger);
    ExtractedInfo info = extract_info(g, communities);
    ExtractedInfo cal =
        perturb_info(info, budget.eps3, rng, config.norm_sub_scope, &ledger);

    std::vector<Edge> edges;
    const std::size_t m = cal.community_count();
    for (std::size_t c = 0; c < m; ++c) {
        auto part = reconstruct_intra(cal.intra_degrees[c], cal.members[c], rng);
        edges.insert(edges.end(), part.begin(), part.end());
    }
    for (std::size_t a = 0; a < m; ++a) {
        for (std::size_t b = a + 1; b < m; ++b) {
            auto part = reconstruct_inter(cal.inter(a, b), cal.members[a], cal.members[b],
                                          rng, config.inter_sampling);
            edges.insert(edges.end(), part.begin(), part.end());
        }
    }
    ledger.record(Phase::reconstruction, "edge generation (post-processing)", 0.0,
                  CompositionKind::sequential);

    const std::size_t produced = edges.size();
    result.graph = Graph(g.node_count(), std::move(edges));
    if (result.graph.edge_count() != produced)
        throw InternalInvariantError("synthesize: reconstruction produced duplicate edges");

    AccountantVerdict verdict = accountant_check(budget, ledger);
    if (!verdict.pass)
        throw InternalInvariantError("synthesize: budget accountant failed: " +
                                     verdict.violation);
    result.communities = std::move(communities);
    result.calibrated_info = std::move(cal);
    return result;
}

}  // namespace privgraph
