#include "mdiqkd/bounds_exact.hpp"

#include <algorithm>
#include <cmath>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

namespace {

struct PartyTerms {
    std::vector<double> w, g, h;  // index 0..k_max
    std::vector<double> W, G;     // suffix sums, index 0..k_max+1
    double h_hat = 0.0;
    bool ok = true;
};

PartyTerms party_terms(const PhotonNumberDistribution& decoy,
                       const PhotonNumberDistribution& signal, double det) {
    const double p1 = decoy.prob(1), p2 = decoy.prob(2);
    const double q1 = signal.prob(1), q2 = signal.prob(2);
    const int k = std::max(decoy.k_max(), signal.k_max());
    PartyTerms t;
    t.w.assign(k + 1, 0.0);
    t.g.assign(k + 1, 0.0);
    t.h.assign(k + 1, 0.0);
    t.h_hat = p2 / p1;
    for (int m = 1; m <= k; ++m) {
        const double pm = decoy.prob(m), qm = signal.prob(m);
        double w = (p1 * qm - q1 * pm) / det;
        double g = (p2 * qm - q2 * pm) / det;
        // rounding noise on exact cancellations
        const double w_scale = (p1 * qm + q1 * pm) / std::abs(det);
        const double g_scale = (p2 * qm + q2 * pm) / std::abs(det);
        if (w < 0.0) {
            if (w < -1e-12 * w_scale && m >= 2) t.ok = false;
            w = 0.0;
        }
        if (g < 0.0 && m >= 2) {
            if (g < -1e-12 * g_scale) t.ok = false;
            g = 0.0;
        }
        t.w[m] = w;
        t.g[m] = g;  // g[1] keeps its sign (it is -1 exactly)
        if (m >= 2) {
            if (w > 0.0) {
                // evaluate the ratio through the pmf quotient so that it stays
                // finite where both coefficient factors underflow
                if (qm > 0.0) {
                    const double r = pm / qm;
                    t.h[m] = (p2 - q2 * r) / (p1 - q1 * r);
                } else {
                    t.h[m] = t.g[m] / w;
                }
            } else {
                t.h[m] = (t.g[m] > 0.0) ? t.h_hat : 0.0;
            }
        }
    }
    // suffix sums, accumulated upward from the explicit tail masses
    t.W.assign(k + 2, 0.0);
    t.G.assign(k + 2, 0.0);
    double w_tail = (p1 * signal.tail_mass() - q1 * decoy.tail_mass()) / det;
    double g_tail = (p2 * signal.tail_mass() - q2 * decoy.tail_mass()) / det;
    t.W[k + 1] = std::max(w_tail, 0.0);
    t.G[k + 1] = std::max(g_tail, 0.0);
    for (int m = k; m >= 0; --m) {
        t.W[m] = t.W[m + 1] + t.w[m];
        t.G[m] = t.G[m + 1] + ((m >= 2) ? t.g[m] : 0.0);
    }
    return t;
}

struct Item {
    double ratio;      // ordering key: certified gain per unit of budget
    double weight;     // > 0
    double gain;       // exact objective gain at full saturation
    double cert_gain;  // >= gain; weight * ratio-supremum for tail blocks
    SaturatedEntry ent;
};

bool tie_before(const SaturatedEntry& a, const SaturatedEntry& b, TieBreak tie) {
    const auto key = [&](const SaturatedEntry& e) {
        return tie == TieBreak::LexMN ? std::pair<int, int>(e.m, e.n)
                                      : std::pair<int, int>(e.n, e.m);
    };
    return key(a) < key(b);
}

struct GreedyOutcome {
    double kept_gain = 0.0;  // certified optimal kept gain
    KnapsackSolution sol;
};

// Fractional knapsack: saturate items in non-increasing ratio order until the
// budget is spent; the item at the boundary gets a fractional weight.  The
// kept gain is evaluated in the dual form
//   sum_kept cert_gain + theta * (budget - kept_weight)
// with theta the boundary ratio, which upper-bounds the optimal kept gain of
// the underlying cell-level problem for any theta >= 0.  On instances made of
// plain cells (cert_gain == gain) it equals the greedy optimum exactly.
GreedyOutcome run_greedy(std::vector<Item> items, double budget, TieBreak tie) {
    GreedyOutcome out;
    if (!(budget > 0.0)) {
        out.sol.status = KnapsackSolution::Status::ZeroBudget;
        out.sol.residual = budget;
        return out;
    }
    std::sort(items.begin(), items.end(), [&](const Item& a, const Item& b) {
        if (a.ratio != b.ratio) return a.ratio > b.ratio;
        return tie_before(a.ent, b.ent, tie);
    });
    double rem = budget;
    double kept_cert = 0.0;
    bool fractional = false;
    for (const auto& it : items) {
        if (it.weight <= rem) {
            rem -= it.weight;
            kept_cert += it.cert_gain;
            out.sol.saturated.push_back(it.ent);
        } else {
            out.sol.fractional = it.ent;
            out.sol.fractional_weight = rem / it.weight;
            out.sol.threshold_ratio = it.ratio;
            kept_cert += it.ratio * rem;
            rem = 0.0;
            fractional = true;
            break;
        }
    }
    if (fractional) {
        out.sol.status = KnapsackSolution::Status::Solved;
        out.sol.residual = 0.0;
    } else {
        out.sol.status = KnapsackSolution::Status::AllSaturated;
        out.sol.residual = rem;
        out.sol.threshold_ratio = 0.0;
    }
    out.kept_gain = kept_cert;
    return out;
}

std::vector<Item> yield_items(const CopCoefficients& c, int cell_limit, bool with_tails,
                              std::vector<SaturatedEntry>& free_kept, double& free_gain) {
    std::vector<Item> items;
    const int k = std::min(cell_limit, c.k_max);
    items.reserve(static_cast<size_t>(k) * k);
    for (int m = 2; m <= k; ++m) {
        for (int n = 2; n <= k; ++n) {
            if (m == 2 && n == 2) continue;
            const double w = c.w_a[m] * c.w_b[n];
            const double g = c.g_a[m] * c.g_b[n];
            if (w > 0.0) {
                items.push_back({c.h_a[m] * c.h_b[n], w, g, g,
                                 {SaturatedEntry::Kind::Cell, m, n}});
            } else if (g > 0.0) {
                // costs nothing, always worth saturating
                free_kept.push_back({SaturatedEntry::Kind::Cell, m, n});
                free_gain += g;
            }
        }
    }
    if (with_tails) {
        const int kt = c.k_max + 1;
        const double wbt = c.W_b[kt], gbt = c.G_b[kt];
        const double wat = c.W_a[kt], gat = c.G_a[kt];
        for (int m = 2; m <= c.k_max; ++m) {
            const double w = c.w_a[m] * wbt;
            const double g = c.g_a[m] * gbt;
            const double sup = c.h_a[m] * c.h_b_hat;
            if (w > 0.0) {
                items.push_back({sup, w, g, w * sup, {SaturatedEntry::Kind::RowTail, m, kt}});
            } else if (g > 0.0) {
                free_kept.push_back({SaturatedEntry::Kind::RowTail, m, kt});
                free_gain += g;
            }
        }
        for (int n = 2; n <= c.k_max; ++n) {
            const double w = wat * c.w_b[n];
            const double g = gat * c.g_b[n];
            const double sup = c.h_a_hat * c.h_b[n];
            if (w > 0.0) {
                items.push_back({sup, w, g, w * sup, {SaturatedEntry::Kind::ColTail, kt, n}});
            } else if (g > 0.0) {
                free_kept.push_back({SaturatedEntry::Kind::ColTail, kt, n});
                free_gain += g;
            }
        }
        const double wc = wat * wbt;
        const double gc = gat * gbt;
        if (wc > 0.0) {
            items.push_back({c.h_a_hat * c.h_b_hat, wc, gc, wc * c.h_a_hat * c.h_b_hat,
                             {SaturatedEntry::Kind::CornerTail, kt, kt}});
        } else if (gc > 0.0) {
            free_kept.push_back({SaturatedEntry::Kind::CornerTail, kt, kt});
            free_gain += gc;
        }
    }
    return items;
}

ExactYieldResult solve_yield(const CopCoefficients& c, int cell_limit, bool with_tails,
                             TieBreak tie) {
    ExactYieldResult res;
    if (!c.condition_ok) {
        res.solution.status = KnapsackSolution::Status::FallbackAnalytic;
        res.bound = make_bound(c.fallback_s11, BoundMethod::S11Exact);
        return res;
    }
    std::vector<SaturatedEntry> free_kept;
    double free_gain = 0.0;
    auto items = yield_items(c, cell_limit, with_tails, free_kept, free_gain);
    auto out = run_greedy(std::move(items), c.s22_star, tie);

    // When the fully saturated set still leaves constraint slack, the exact
    // optimum is the plain sum of gains (every cell at one is feasible).
    if (out.sol.status == KnapsackSolution::Status::AllSaturated) {
        double total = 0.0;
        // recompute with exact gains; the certified tail gains were only
        // needed around a fractional boundary
        std::vector<SaturatedEntry> dummy;
        double dummy_gain = 0.0;
        for (const auto& it : yield_items(c, cell_limit, with_tails, dummy, dummy_gain)) {
            total += it.gain;
        }
        out.kept_gain = total;
    }
    for (const auto& e : free_kept) out.sol.saturated.push_back(e);
    out.kept_gain += free_gain;

    res.bound = make_bound(c.s11_star - out.kept_gain, BoundMethod::S11Exact);
    res.solution = std::move(out.sol);
    return res;
}

KnapsackSolution solve_error_side(const std::vector<double>& w, const std::vector<double>& g,
                                  const std::vector<double>& h, double w_tail, double g_tail,
                                  double h_hat, int k_max, double budget, bool with_tails,
                                  bool row_side, int k_limit, TieBreak tie, double& kept_gain) {
    std::vector<Item> items;
    std::vector<SaturatedEntry> free_kept;
    double free_gain = 0.0;
    const int k = std::min(k_limit, k_max);
    const auto entry = [&](int kk, SaturatedEntry::Kind kind) {
        return row_side ? SaturatedEntry{kind, 1, kk} : SaturatedEntry{kind, kk, 1};
    };
    for (int kk = 3; kk <= k; ++kk) {
        if (w[kk] > 0.0) {
            items.push_back({h[kk], w[kk], g[kk], g[kk], entry(kk, SaturatedEntry::Kind::Cell)});
        } else if (g[kk] > 0.0) {
            free_kept.push_back(entry(kk, SaturatedEntry::Kind::Cell));
            free_gain += g[kk];
        }
    }
    if (with_tails) {
        const auto kind =
            row_side ? SaturatedEntry::Kind::RowTail : SaturatedEntry::Kind::ColTail;
        if (w_tail > 0.0) {
            items.push_back({h_hat, w_tail, g_tail, w_tail * h_hat, entry(k_max + 1, kind)});
        } else if (g_tail > 0.0) {
            free_kept.push_back(entry(k_max + 1, kind));
            free_gain += g_tail;
        }
    }
    auto out = run_greedy(std::move(items), budget, tie);
    if (out.sol.status == KnapsackSolution::Status::AllSaturated) {
        double total = 0.0;
        for (int kk = 3; kk <= k; ++kk) {
            if (w[kk] > 0.0) total += g[kk];
        }
        if (with_tails && w_tail > 0.0) total += g_tail;
        out.kept_gain = total;
    }
    for (const auto& e : free_kept) out.sol.saturated.push_back(e);
    kept_gain = out.kept_gain + free_gain;
    return out.sol;
}

ExactErrorResult solve_error(const CopCoefficients& c, int k_limit, bool with_tails,
                             TieBreak tie) {
    ExactErrorResult res;
    if (!c.condition_ok) {
        res.row_solution.status = KnapsackSolution::Status::FallbackAnalytic;
        res.col_solution.status = KnapsackSolution::Status::FallbackAnalytic;
        res.bound = make_bound(c.fallback_t11, BoundMethod::E11Exact);
        return res;
    }
    const int kt = c.k_max + 1;
    double gain_row = 0.0, gain_col = 0.0;
    res.row_solution =
        solve_error_side(c.w_b, c.g_b, c.h_b, c.W_b[kt], c.G_b[kt], c.h_b_hat, c.k_max,
                         c.t12_star, with_tails, true, k_limit, tie, gain_row);
    res.col_solution =
        solve_error_side(c.w_a, c.g_a, c.h_a, c.W_a[kt], c.G_a[kt], c.h_a_hat, c.k_max,
                         c.t21_star, with_tails, false, k_limit, tie, gain_col);
    res.bound = make_bound(c.t11_star + gain_row + gain_col, BoundMethod::E11Exact);
    return res;
}

}  // namespace

CopCoefficients cop_coefficients(const ReducedGains& rg, const ThreeIntensitySource& alice,
                                 const ThreeIntensitySource& bob) {
    const double a1 = alice.decoy_x.prob(1), a2 = alice.decoy_x.prob(2);
    const double ap1 = alice.signal_y.prob(1), ap2 = alice.signal_y.prob(2);
    const double b1 = bob.decoy_x.prob(1), b2 = bob.decoy_x.prob(2);
    const double bp1 = bob.signal_y.prob(1), bp2 = bob.signal_y.prob(2);
    const double det_a = a1 * ap2 - ap1 * a2;
    const double det_b = b1 * bp2 - bp1 * b2;
    if (std::abs(det_a) < 1e-15 * std::max(a1 * ap2, ap1 * a2) ||
        std::abs(det_b) < 1e-15 * std::max(b1 * bp2, bp1 * b2)) {
        throw DegenerateSourcePair(
            "decoy and signal states are proportional in photon numbers 1 and 2");
    }

    CopCoefficients c;
    c.k_max = std::max({alice.decoy_x.k_max(), alice.signal_y.k_max(), bob.decoy_x.k_max(),
                        bob.signal_y.k_max()});
    const double d = det_a * det_b;
    c.s11_star = (ap2 * bp2 * rg.s_xx - ap2 * b2 * rg.s_xy - a2 * bp2 * rg.s_yx +
                  a2 * b2 * rg.s_yy) / d;
    c.s12_star = (-ap2 * bp1 * rg.s_xx + ap2 * b1 * rg.s_xy + a2 * bp1 * rg.s_yx -
                  a2 * b1 * rg.s_yy) / d;
    c.s21_star = (-ap1 * bp2 * rg.s_xx + ap1 * b2 * rg.s_xy + a1 * bp2 * rg.s_yx -
                  a1 * b2 * rg.s_yy) / d;
    c.s22_star = (ap1 * bp1 * rg.s_xx - ap1 * b1 * rg.s_xy - a1 * bp1 * rg.s_yx +
                  a1 * b1 * rg.s_yy) / d;
    c.t11_star = (ap2 * bp2 * rg.t_xx - ap2 * b2 * rg.t_xy - a2 * bp2 * rg.t_yx +
                  a2 * b2 * rg.t_yy) / d;
    c.t12_star = (-ap2 * bp1 * rg.t_xx + ap2 * b1 * rg.t_xy + a2 * bp1 * rg.t_yx -
                  a2 * b1 * rg.t_yy) / d;
    c.t21_star = (-ap1 * bp2 * rg.t_xx + ap1 * b2 * rg.t_xy + a1 * bp2 * rg.t_yx -
                  a1 * b2 * rg.t_yy) / d;
    c.t22_star = (ap1 * bp1 * rg.t_xx - ap1 * b1 * rg.t_xy - a1 * bp1 * rg.t_yx +
                  a1 * b1 * rg.t_yy) / d;

    auto ta = party_terms(alice.decoy_x, alice.signal_y, det_a);
    auto tb = party_terms(bob.decoy_x, bob.signal_y, det_b);
    c.condition_ok = ta.ok && tb.ok;
    c.w_a = std::move(ta.w);
    c.g_a = std::move(ta.g);
    c.h_a = std::move(ta.h);
    c.W_a = std::move(ta.W);
    c.G_a = std::move(ta.G);
    c.h_a_hat = ta.h_hat;
    c.w_b = std::move(tb.w);
    c.g_b = std::move(tb.g);
    c.h_b = std::move(tb.h);
    c.W_b = std::move(tb.W);
    c.G_b = std::move(tb.G);
    c.h_b_hat = tb.h_hat;

    c.fallback_s11 = s11_123(rg, alice, bob).raw;
    c.fallback_t11 = rg.t_xx / (a1 * b1);
    return c;
}

ExactYieldResult s11_exact_min(const CopCoefficients& c, TieBreak tie) {
    return solve_yield(c, c.k_max, true, tie);
}

ExactYieldResult s11_exact_min_truncated(const CopCoefficients& c, int cell_limit, TieBreak tie) {
    return solve_yield(c, cell_limit, false, tie);
}

ExactErrorResult t11_exact_max(const CopCoefficients& c, TieBreak tie) {
    return solve_error(c, c.k_max, true, tie);
}

ExactErrorResult t11_exact_max_truncated(const CopCoefficients& c, int k_limit, TieBreak tie) {
    return solve_error(c, k_limit, false, tie);
}

AnalyticBound e11_exact(double s11_min, double t11_max) {
    if (!(s11_min > 0.0)) throw UndefinedErrorBound("yield lower bound is non-positive");
    return make_bound(t11_max / s11_min, BoundMethod::E11Exact);
}

}  // namespace mdiqkd
