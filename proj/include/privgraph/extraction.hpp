#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "privgraph/community.hpp"
#include "privgraph/dp.hpp"
#include "privgraph/graph.hpp"

namespace privgraph {

/// Whether NormSub runs once over the concatenated intra-community degree
/// vector (global) or separately per community.
enum class NormSubScope { global, per_community };

// Degree/edge-count summary of a partitioned graph: per community the
// intra-community degree of each member, plus one edge count per community
// pair. `calibrated` marks post-noise values (non-negative reals); raw
// extraction yields exact counts.
struct ExtractedInfo {
    std::vector<std::vector<NodeId>> members;          // ascending node ids
    std::vector<std::vector<double>> intra_degrees;    // aligned with members
    std::vector<double> inter_counts;                  // packed pairs, a < b
    bool calibrated = false;

    std::size_t community_count() const { return members.size(); }

    double& inter(std::size_t a, std::size_t b) {
        return inter_counts[detail::pair_index(std::min(a, b), std::max(a, b),
                                               community_count())];
    }
    double inter(std::size_t a, std::size_t b) const {
        return inter_counts[detail::pair_index(std::min(a, b), std::max(a, b),
                                               community_count())];
    }
};

/// Exact intra-community degree sequences and inter-community edge counts.
inline ExtractedInfo extract_info(const Graph& g, const Partition& p) {
    if (p.labels.size() != g.node_count())
        throw std::invalid_argument("extract_info: partition does not match graph");
    ExtractedInfo info;
    info.members = p.members();
    const std::size_t m = info.community_count();
    info.intra_degrees.resize(m);
    for (std::size_t c = 0; c < m; ++c)
        info.intra_degrees[c].assign(info.members[c].size(), 0.0);
    info.inter_counts.assign(m == 0 ? 0 : m * (m - 1) / 2, 0.0);

    std::vector<std::size_t> pos(g.node_count());  // node -> index inside its community
    for (std::size_t c = 0; c < m; ++c)
        for (std::size_t i = 0; i < info.members[c].size(); ++i)
            pos[info.members[c][i]] = i;

    for (const auto& [u, w] : g.edges()) {
        std::uint32_t a = p.labels[u], b = p.labels[w];
        if (a == b) {
            info.intra_degrees[a][pos[u]] += 1.0;
            info.intra_degrees[a][pos[w]] += 1.0;
        } else {
            info.inter(a, b) += 1.0;
        }
    }
    return info;
}

/// Laplace-perturbs the extracted counts and calibrates with NormSub.
/// Degree sequences (sensitivity 2: one edge shifts two degrees) and the
/// inter-community edge vector (sensitivity 1) cover disjoint edge sets, so
/// both run at the full eps3 under parallel composition.
inline ExtractedInfo perturb_info(const ExtractedInfo& info, double eps3, RandomSource& rng,
                                  NormSubScope scope = NormSubScope::global,
                                  BudgetLedger* ledger = nullptr) {
    if (!(eps3 > 0.0)) throw std::invalid_argument("perturb_info: eps must be positive");
    ExtractedInfo out;
    out.members = info.members;
    out.calibrated = true;
    const std::size_t m = info.community_count();

    std::vector<double> flat;
    for (const auto& degs : info.intra_degrees)
        flat.insert(flat.end(), degs.begin(), degs.end());
    std::vector<double> flat_noisy = laplace_perturb(flat, Sensitivity{2.0}, eps3, rng);
    std::vector<double> inter_noisy =
        laplace_perturb(info.inter_counts, Sensitivity{1.0}, eps3, rng);

    if (ledger) {
        ledger->record(Phase::info_extraction, "intra-community degree sequences", eps3,
                       CompositionKind::parallel);
        ledger->record(Phase::info_extraction, "inter-community edge counts", eps3,
                       CompositionKind::parallel);
    }

    out.intra_degrees.resize(m);
    if (scope == NormSubScope::global) {
        std::vector<double> flat_cal = norm_sub(flat_noisy);
        std::size_t off = 0;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t sz = info.intra_degrees[c].size();
            out.intra_degrees[c].assign(flat_cal.begin() + off, flat_cal.begin() + off + sz);
            off += sz;
        }
    } else {
        std::size_t off = 0;
        for (std::size_t c = 0; c < m; ++c) {
            std::size_t sz = info.intra_degrees[c].size();
            out.intra_degrees[c] = norm_sub(
                std::span<const double>(flat_noisy.data() + off, sz));
            off += sz;
        }
    }
    out.inter_counts = norm_sub(inter_noisy);
    return out;
}

}  // namespace privgraph
