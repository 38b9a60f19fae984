#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "privgraph/random.hpp"

namespace privgraph {

/// Thrown when an internal guarantee is violated (e.g. the budget accountant
/// rejects a ledger the pipeline itself produced). Distinct from input errors.
class InternalInvariantError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Global sensitivity of the query a mechanism protects. Strong type so call
// sites spell out which query they are calibrating for.
struct Sensitivity {
    double value;
    explicit Sensitivity(double v) : value(v) {
        if (!(v > 0.0)) throw std::invalid_argument("sensitivity must be positive");
    }
};

struct PrivacyBudget {
    double eps1;  // community initialization
    double eps2;  // community adjustment
    double eps3;  // information extraction

    PrivacyBudget(double e1, double e2, double e3) : eps1(e1), eps2(e2), eps3(e3) {
        if (!(e1 > 0.0) || !(e2 > 0.0) || !(e3 > 0.0))
            throw std::invalid_argument("privacy budget parts must be positive");
    }

    static PrivacyBudget split(double total, double f1, double f2, double f3) {
        if (!(total > 0.0)) throw std::invalid_argument("total privacy budget must be positive");
        if (!(f1 > 0.0) || !(f2 > 0.0) || !(f3 > 0.0))
            throw std::invalid_argument("budget fractions must be positive");
        if (std::fabs(f1 + f2 + f3 - 1.0) > 1e-9)
            throw std::invalid_argument("budget fractions must sum to 1");
        return PrivacyBudget(total * f1, total * f2, total * f3);
    }

    double total() const { return eps1 + eps2 + eps3; }
};

/// Laplace(0, scale) sample via inverse CDF on a uniform from (0,1).
inline double sample_laplace(double scale, RandomSource& rng) {
    double u = rng.uniform_open();
    return u < 0.5 ? scale * std::log(2.0 * u) : -scale * std::log(2.0 * (1.0 - u));
}

/// Adds i.i.d. Laplace(sensitivity/eps) noise to each value.
inline std::vector<double> laplace_perturb(std::span<const double> values, Sensitivity s,
                                           double eps, RandomSource& rng) {
    if (!(eps > 0.0)) throw std::invalid_argument("laplace_perturb: eps must be positive");
    const double scale = s.value / eps;
    std::vector<double> out(values.begin(), values.end());
    for (double& v : out) v += sample_laplace(scale, rng);
    return out;
}

/// Exponential mechanism: selects index i with probability proportional to
/// exp(eps * quality[i] / (2 * sensitivity)). Numerically stabilized by
/// subtracting the max quality.
inline std::size_t em_select(std::span<const double> qualities, Sensitivity s, double eps,
                             RandomSource& rng) {
    if (qualities.empty()) throw std::invalid_argument("em_select: empty candidate set");
    if (!(eps > 0.0)) throw std::invalid_argument("em_select: eps must be positive");
    const double scale = eps / (2.0 * s.value);
    double qmax = *std::max_element(qualities.begin(), qualities.end());
    std::vector<double> weights(qualities.size());
    double total = 0.0;
    for (std::size_t i = 0; i < qualities.size(); ++i) {
        weights[i] = std::exp(scale * (qualities[i] - qmax));
        total += weights[i];
    }
    double u = rng.uniform01() * total;
    double cum = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        cum += weights[i];
        if (u < cum) return i;
    }
    return weights.size() - 1;  // guard against accumulated rounding
}

namespace detail {

inline double shifted_clamped_sum(std::span<const double> xs, double delta) {
    double s = 0.0;
    for (double x : xs) s += std::max(x + delta, 0.0);
    return s;
}

}  // namespace detail

// NormSub calibration: find the integer shift delta minimizing
// |sum(max(x_i + delta, 0)) - sum(x_i)| over the window
// [-(ceil(10*max|x|)+1), +(ceil(10*max|x|)+1)], then emit max(x_i + delta, 0).
// Ties prefer delta = 0, then the delta closest to 0 (i.e. smaller |delta|),
// resolving via the interval of minimizers: the clamped sum is nondecreasing
// in delta, so the objective falls then rises and its minimizers form a
// contiguous range that binary search locates exactly.
inline long long norm_sub_delta(std::span<const double> noisy) {
    if (noisy.empty()) return 0;
    double target = 0.0;
    double max_abs = 0.0;
    for (double x : noisy) {
        target += x;
        max_abs = std::max(max_abs, std::fabs(x));
    }
    const long long w = static_cast<long long>(std::ceil(10.0 * max_abs)) + 1;
    auto f = [&](long long d) {
        return detail::shifted_clamped_sum(noisy, static_cast<double>(d));
    };
    auto obj = [&](long long d) { return std::fabs(f(d) - target); };

    // Smallest delta in [-w, w] with f(delta) >= target; w+1 if none.
    long long cross = w + 1;
    if (f(w) >= target) {
        long long lo = -w, hi = w;
        while (lo < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (f(mid) >= target)
                hi = mid;
            else
                lo = mid + 1;
        }
        cross = lo;
    }
    // obj is nonincreasing on [-w, cross-1] and nondecreasing on [cross, w].
    double best = std::numeric_limits<double>::infinity();
    if (cross - 1 >= -w) best = std::min(best, obj(cross - 1));
    if (cross <= w) best = std::min(best, obj(cross));

    long long lo_end, hi_end;
    if (cross - 1 >= -w && obj(cross - 1) == best) {
        // Left plateau: {d : obj(d) <= best} is a suffix of [-w, cross-1].
        long long lo = -w, hi = cross - 1;
        while (lo < hi) {
            long long mid = lo + (hi - lo) / 2;
            if (obj(mid) <= best)
                hi = mid;
            else
                lo = mid + 1;
        }
        lo_end = lo;
    } else {
        lo_end = cross;
    }
    if (cross <= w && obj(cross) == best) {
        // Right plateau: {d : obj(d) <= best} is a prefix of [cross, w].
        long long lo = cross, hi = w;
        while (lo < hi) {
            long long mid = lo + (hi - lo + 1) / 2;
            if (obj(mid) <= best)
                lo = mid;
            else
                hi = mid - 1;
        }
        hi_end = lo;
    } else {
        hi_end = cross - 1;
    }

    if (lo_end <= 0 && 0 <= hi_end) return 0;
    return hi_end < 0 ? hi_end : lo_end;
}

inline std::vector<double> norm_sub(std::span<const double> noisy) {
    const double delta = static_cast<double>(norm_sub_delta(noisy));
    std::vector<double> out(noisy.size());
    for (std::size_t i = 0; i < noisy.size(); ++i)
        out[i] = std::max(noisy[i] + delta, 0.0);
    return out;
}

// ---------------------------------------------------------------------------
// Budget accounting

enum class Phase {
    community_init,
    community_adjust,
    info_extraction,
    reconstruction,
};

inline const char* phase_name(Phase p) {
    switch (p) {
        case Phase::community_init: return "community-init";
        case Phase::community_adjust: return "community-adjust";
        case Phase::info_extraction: return "info-extraction";
        case Phase::reconstruction: return "reconstruction";
    }
    return "unknown";
}

enum class CompositionKind { sequential, parallel };

struct LedgerEntry {
    Phase phase;
    std::string label;
    double eps;
    CompositionKind kind;
};

// Append-only record of every privacy-spending mechanism invocation.
// Parallel entries within a phase touch disjoint parts of the input, so the
// phase charge is the max over them; sequential entries add up.
struct BudgetLedger {
    std::vector<LedgerEntry> entries;

    void record(Phase phase, std::string label, double eps, CompositionKind kind) {
        if (eps < 0.0) throw std::invalid_argument("ledger entry with negative eps");
        entries.push_back({phase, std::move(label), eps, kind});
    }

    double phase_spend(Phase phase) const {
        double seq = 0.0, par = 0.0;
        for (const auto& e : entries) {
            if (e.phase != phase) continue;
            if (e.kind == CompositionKind::sequential)
                seq += e.eps;
            else
                par = std::max(par, e.eps);
        }
        return seq + par;
    }

    double total_spend() const {
        return phase_spend(Phase::community_init) + phase_spend(Phase::community_adjust) +
               phase_spend(Phase::info_extraction) + phase_spend(Phase::reconstruction);
    }
};

struct AccountantVerdict {
    bool pass;
    double total_spent;
    std::string violation;  // empty when pass
};

/// Checks the ledger against the budget: each phase within its allotment,
/// reconstruction spends nothing, and the grand total within eps1+eps2+eps3.
inline AccountantVerdict accountant_check(const PrivacyBudget& budget,
                                          const BudgetLedger& ledger) {
    const double tol = 1e-9;
    struct Cap {
        Phase phase;
        double cap;
    };
    const Cap caps[] = {
        {Phase::community_init, budget.eps1},
        {Phase::community_adjust, budget.eps2},
        {Phase::info_extraction, budget.eps3},
        {Phase::reconstruction, 0.0},
    };
    AccountantVerdict v{true, ledger.total_spend(), ""};
    for (const auto& [phase, cap] : caps) {
        double spent = ledger.phase_spend(phase);
        if (spent > cap + tol * std::max(1.0, cap)) {
            v.pass = false;
            v.violation = std::string(phase_name(phase)) + " spent " + std::to_string(spent) +
                          " of " + std::to_string(cap);
            return v;
        }
    }
    if (v.total_spent > budget.total() + tol * std::max(1.0, budget.total())) {
        v.pass = false;
        v.violation = "total spent " + std::to_string(v.total_spent) + " of " +
                      std::to_string(budget.total());
    }
    return v;
}

}  // namespace privgraph
