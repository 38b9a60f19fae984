#pragma once

#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <json.hpp>

#include "privgraph/dp.hpp"
#include "privgraph/extraction.hpp"
#include "privgraph/metrics.hpp"

namespace privgraph {

/// Shortest exact decimal for a double; CSV cells round-trip bit-for-bit.
inline std::string format_double(double v) {
    std::ostringstream os;
    os << std::setprecision(std::numeric_limits<double>::max_digits10) << v;
    return os.str();
}

inline const char* metrics_csv_header() {
    return "nmi,evc_overlap,evc_mae,degree_kl,diameter_re,cc_re,modularity_re";
}

inline std::string metrics_csv_row(const MetricsReport& r) {
    return format_double(r.nmi) + "," + format_double(r.evc_overlap) + "," +
           format_double(r.evc_mae) + "," + format_double(r.degree_kl) + "," +
           format_double(r.diameter_re) + "," + format_double(r.cc_re) + "," +
           format_double(r.modularity_re);
}

inline nlohmann::json metrics_to_json(const MetricsReport& r) {
    return nlohmann::json{
        {"nmi", r.nmi},
        {"evc_overlap", r.evc_overlap},
        {"evc_mae", r.evc_mae},
        {"degree_kl", r.degree_kl},
        {"diameter_re", r.diameter_re},
        {"cc_re", r.cc_re},
        {"modularity_re", r.modularity_re},
        {"warnings",
         {{"evc_converged", r.evc_converged}, {"diameter_exact", r.diameter_exact}}},
    };
}

inline nlohmann::json ledger_to_json(const BudgetLedger& ledger, const PrivacyBudget& budget) {
    AccountantVerdict verdict = accountant_check(budget, ledger);
    nlohmann::json entries = nlohmann::json::array();
    for (const auto& e : ledger.entries) {
        entries.push_back({
            {"phase", phase_name(e.phase)},
            {"label", e.label},
            {"eps", e.eps},
            {"composition",
             e.kind == CompositionKind::sequential ? "sequential" : "parallel"},
        });
    }
    return nlohmann::json{
        {"budget",
         {{"eps1", budget.eps1},
          {"eps2", budget.eps2},
          {"eps3", budget.eps3},
          {"total", budget.total()}}},
        {"entries", entries},
        {"phase_spend",
         {{phase_name(Phase::community_init), ledger.phase_spend(Phase::community_init)},
          {phase_name(Phase::community_adjust), ledger.phase_spend(Phase::community_adjust)},
          {phase_name(Phase::info_extraction), ledger.phase_spend(Phase::info_extraction)},
          {phase_name(Phase::reconstruction), ledger.phase_spend(Phase::reconstruction)}}},
        {"total_spent", verdict.total_spent},
        {"verdict", verdict.pass ? "pass" : "fail"},
        {"violation", verdict.violation},
    };
}

/// Serialized community summary. Raw (uncalibrated) extractions hold exact
/// private counts; dumping those is gated at the CLI behind an explicit
/// unsafe flag and marked in the payload.
inline nlohmann::json extracted_info_to_json(const ExtractedInfo& info) {
    nlohmann::json communities = nlohmann::json::array();
    for (std::size_t c = 0; c < info.community_count(); ++c) {
        nlohmann::json members = nlohmann::json::array();
        for (NodeId u : info.members[c]) members.push_back(u);
        communities.push_back({
            {"members", members},
            {"intra_degrees", info.intra_degrees[c]},
        });
    }
    nlohmann::json inter = nlohmann::json::array();
    for (std::size_t a = 0; a < info.community_count(); ++a)
        for (std::size_t b = a + 1; b < info.community_count(); ++b)
            inter.push_back({{"a", a}, {"b", b}, {"count", info.inter(a, b)}});
    return nlohmann::json{
        {"calibrated", info.calibrated},
        {"community_count", info.community_count()},
        {"communities", communities},
        {"inter_community_counts", inter},
    };
}

}  // namespace privgraph
