#pragma once

#include <optional>
#include <vector>

#include "mdiqkd/bounds_analytic.hpp"
#include "mdiqkd/statistics.hpp"

namespace mdiqkd {

/// Order used to break ties between equal-ratio cells.  The optimal value is
/// invariant under the choice; only the reported saturated set may differ.
enum class TieBreak { LexMN, LexNM };

/// Everything the exact solver needs, derived once from the reduced gains and
/// the source photon statistics: the four-equation constants, the per-cell
/// coefficient factors, their monotone benefit/cost ratios with limits, and
/// closed-form tail sums over the photon numbers beyond the truncation.
struct CopCoefficients {
    int k_max = 0;

    // Four-equation constants for the yields and the error-weighted yields.
    double s11_star = 0, s12_star = 0, s21_star = 0, s22_star = 0;
    double t11_star = 0, t12_star = 0, t21_star = 0, t22_star = 0;

    // Per-party factors, normalised by the elimination determinant:
    //   w_a[m] = (a1 a'_m - a'_1 a_m) / det_a   (constraint weight factor)
    //   g_a[m] = (a2 a'_m - a'_2 a_m) / det_a   (objective gain factor)
    // so that f22(m,n) = -w_a[m] w_b[n] and f11(m,n) = -g_a[m] g_b[n].
    std::vector<double> w_a, g_a, w_b, g_b;
    // Suffix sums including the truncated tail mass: W_a[m0] = sum_{m>=m0} w_a[m].
    std::vector<double> W_a, G_a, W_b, G_b;
    // Benefit/cost ratios h_a[m] = g_a[m] / w_a[m], evaluated stably.
    std::vector<double> h_a, h_b;
    // Monotone limits of the ratios (a2/a1 and b2/b1).
    double h_a_hat = 0, h_b_hat = 0;

    bool condition_ok = true;       // coefficient sign scan
    double fallback_s11 = 0;        // three-equation bound, used when the scan fails
    double fallback_t11 = 0;        // t_xx-tilde / (a1 b1)

    // Coefficient evaluators on explicit cells (1 <= m, n <= k_max).
    double f11(int m, int n) const { return -g_a[m] * g_b[n]; }
    double f12(int m, int n) const { return g_a[m] * w_b[n]; }
    double f21(int m, int n) const { return w_a[m] * g_b[n]; }
    double f22(int m, int n) const { return -w_a[m] * w_b[n]; }

    /// Constraint-coefficient sum over a column tail: sum_{m >= m0} f22(m, n0).
    double F_c(int m0, int n0) const { return -W_a[m0] * w_b[n0]; }
    /// Constraint-coefficient sum over a row tail: sum_{n >= n0} f22(m0, n).
    double F_r(int m0, int n0) const { return -w_a[m0] * W_b[n0]; }
};

CopCoefficients cop_coefficients(const ReducedGains& rg, const ThreeIntensitySource& alice,
                                 const ThreeIntensitySource& bob);

struct SaturatedEntry {
    enum class Kind { Cell, RowTail, ColTail, CornerTail };
    Kind kind = Kind::Cell;
    int m = 0;  // photon number, or first tail index for aggregated blocks
    int n = 0;
};

/// Structure of a fractional-knapsack optimum: the saturated set, the single
/// fractional cell with its weight, and the constraint slack.
struct KnapsackSolution {
    enum class Status { Solved, AllSaturated, ZeroBudget, FallbackAnalytic };
    Status status = Status::Solved;
    std::vector<SaturatedEntry> saturated;
    std::optional<SaturatedEntry> fractional;
    double fractional_weight = 0.0;  // in (0, 1]
    double residual = 0.0;           // constraint slack; 0 when a fractional cell exists
    double threshold_ratio = 0.0;    // ratio at the saturation boundary
};

struct ExactYieldResult {
    AnalyticBound bound;  // method S11Exact
    KnapsackSolution solution;
};

/// Exact minimum of s11 over all multi-photon yield assignments consistent
/// with the observations: a fractional knapsack over the cells (m, n >= 2),
/// budgeted by the non-negativity of the reconstructed s22, with the photon
/// numbers beyond the truncation consumed analytically as aggregated tails.
ExactYieldResult s11_exact_min(const CopCoefficients& c, TieBreak tie = TieBreak::LexMN);

/// Same optimisation restricted to the explicit cells with m, n <= cell_limit
/// and no tail blocks; used for equivalence checks against LP enumeration.
ExactYieldResult s11_exact_min_truncated(const CopCoefficients& c, int cell_limit,
                                         TieBreak tie = TieBreak::LexMN);

struct ExactErrorResult {
    AnalyticBound bound;  // bound on t11, method E11Exact carrier
    KnapsackSolution row_solution;  // cells (1, k)
    KnapsackSolution col_solution;  // cells (k, 1)
};

/// Exact maximum of the error-weighted yield t11: two independent
/// one-dimensional fractional knapsacks over the cells (1, k) and (k, 1),
/// budgeted by the non-negativity of the reconstructed t12 and t21.
ExactErrorResult t11_exact_max(const CopCoefficients& c, TieBreak tie = TieBreak::LexMN);

ExactErrorResult t11_exact_max_truncated(const CopCoefficients& c, int k_limit,
                                         TieBreak tie = TieBreak::LexMN);

/// Upper bound on e11 from the exact pieces: t11_max / s11_min, clamped.
/// Throws UndefinedErrorBound when s11_min <= 0.
AnalyticBound e11_exact(double s11_min, double t11_max);

}  // namespace mdiqkd
