#include "mdiqkd/bounds_analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

namespace {

constexpr double kDegenerateTol = 1e-15;

struct PairCoeffs {
    double a1, a2, ap1, ap2;
    double b1, b2, bp1, bp2;
    double det_a, det_b;  // a1 ap2 - ap1 a2 and the b analogue

    static PairCoeffs from(const ThreeIntensitySource& alice, const ThreeIntensitySource& bob) {
        PairCoeffs c{};
        c.a1 = alice.decoy_x.prob(1);
        c.a2 = alice.decoy_x.prob(2);
        c.ap1 = alice.signal_y.prob(1);
        c.ap2 = alice.signal_y.prob(2);
        c.b1 = bob.decoy_x.prob(1);
        c.b2 = bob.decoy_x.prob(2);
        c.bp1 = bob.signal_y.prob(1);
        c.bp2 = bob.signal_y.prob(2);
        c.det_a = c.a1 * c.ap2 - c.ap1 * c.a2;
        c.det_b = c.b1 * c.bp2 - c.bp1 * c.b2;
        if (std::abs(c.det_a) < kDegenerateTol * std::max(c.a1 * c.ap2, c.ap1 * c.a2) ||
            std::abs(c.det_b) < kDegenerateTol * std::max(c.b1 * c.bp2, c.bp1 * c.b2)) {
            throw DegenerateSourcePair(
                "decoy and signal states are proportional in photon numbers 1 and 2");
        }
        return c;
    }
};

// Per-equation weights of (s11, s12, s21, s22) for the rows xx, xy, yx, yy.
std::array<std::array<double, 4>, 4> equation_rows(const PairCoeffs& c) {
    return {{{c.a1 * c.b1, c.a1 * c.b2, c.a2 * c.b1, c.a2 * c.b2},
             {c.a1 * c.bp1, c.a1 * c.bp2, c.a2 * c.bp1, c.a2 * c.bp2},
             {c.ap1 * c.b1, c.ap1 * c.b2, c.ap2 * c.b1, c.ap2 * c.b2},
             {c.ap1 * c.bp1, c.ap1 * c.bp2, c.ap2 * c.bp1, c.ap2 * c.bp2}}};
}

// Multipliers that cancel the s12 and s21 columns of three chosen equations
// and normalise the s11 column to one.
std::array<double, 3> elimination_multipliers(const PairCoeffs& c, const std::array<int, 3>& rows) {
    const auto eq = equation_rows(c);
    // solve [s12-col; s21-col; s11-col] lambda = (0, 0, 1)
    double M[3][4] = {
        {eq[rows[0]][1], eq[rows[1]][1], eq[rows[2]][1], 0.0},
        {eq[rows[0]][2], eq[rows[1]][2], eq[rows[2]][2], 0.0},
        {eq[rows[0]][0], eq[rows[1]][0], eq[rows[2]][0], 1.0},
    };
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r) {
            if (std::abs(M[r][col]) > std::abs(M[piv][col])) piv = r;
        }
        if (std::abs(M[piv][col]) == 0.0) {
            throw DegenerateSourcePair("elimination system is singular");
        }
        std::swap(M[col], M[piv]);
        for (int r = 0; r < 3; ++r) {
            if (r == col) continue;
            const double f = M[r][col] / M[col][col];
            for (int k = col; k < 4; ++k) M[r][k] -= f * M[col][k];
        }
    }
    return {M[0][3] / M[0][0], M[1][3] / M[1][1], M[2][3] / M[2][2]};
}

AnalyticBound three_equation_bound(const ReducedGains& rg, const PairCoeffs& c,
                                   const std::array<int, 3>& rows, BoundMethod method) {
    const double ts[4] = {rg.s_xx, rg.s_xy, rg.s_yx, rg.s_yy};
    const auto lam = elimination_multipliers(c, rows);
    double raw = 0.0;
    for (int i = 0; i < 3; ++i) raw += lam[i] * ts[rows[i]];
    return make_bound(raw, method);
}

}  // namespace

const char* to_string(BoundMethod m) {
    switch (m) {
        case BoundMethod::B123: return "123";
        case BoundMethod::B124: return "124";
        case BoundMethod::B134: return "134";
        case BoundMethod::B234: return "234";
        case BoundMethod::B14: return "14";
        case BoundMethod::BAlpha: return "alpha";
        case BoundMethod::S11Exact: return "exact";
        case BoundMethod::E11Simple: return "e11_simple";
        case BoundMethod::E11Exact: return "e11_exact";
    }
    return "?";
}

AnalyticBound make_bound(double raw, BoundMethod method) {
    AnalyticBound b;
    b.method = method;
    b.raw = raw;
    b.value = std::clamp(raw, 0.0, 1.0);
    b.clamped = (b.value != raw);
    return b;
}

AnalyticBound s11_123(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob) {
    const auto c = PairCoeffs::from(alice, bob);
    // The explicit closed form; equivalent to three_equation_bound({0,1,2}).
    const double num = (c.a1 * c.ap2 * c.b1 * c.bp2 - c.ap1 * c.a2 * c.bp1 * c.b2) * rg.s_xx -
                       c.b1 * c.b2 * c.det_a * rg.s_xy - c.a1 * c.a2 * c.det_b * rg.s_yx;
    const double den = c.a1 * c.b1 * c.det_a * c.det_b;
    return make_bound(num / den, BoundMethod::B123);
}

AnalyticBound s11_124(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob) {
    return three_equation_bound(rg, PairCoeffs::from(alice, bob), {0, 1, 3}, BoundMethod::B124);
}

AnalyticBound s11_134(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob) {
    return three_equation_bound(rg, PairCoeffs::from(alice, bob), {0, 2, 3}, BoundMethod::B134);
}

AnalyticBound s11_234(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob) {
    return three_equation_bound(rg, PairCoeffs::from(alice, bob), {1, 2, 3}, BoundMethod::B234);
}

AnalyticBound s11_14(const ReducedGains& rg, const ThreeIntensitySource& alice,
                     const ThreeIntensitySource& bob) {
    const auto c = PairCoeffs::from(alice, bob);
    const double den_a = c.a1 * c.ap1 * c.det_b;
    const double den_b = c.b1 * c.bp1 * c.det_a;
    if (std::abs(den_a) == 0.0 || std::abs(den_b) == 0.0) {
        throw DegenerateSourcePair("branch denominator vanishes");
    }
    const double branch_a = (c.ap1 * c.bp2 * rg.s_xx - c.a1 * c.b2 * rg.s_yy) / den_a;
    const double branch_b = (c.ap2 * c.bp1 * rg.s_xx - c.a2 * c.b1 * rg.s_yy) / den_b;
    return make_bound(std::min(branch_a, branch_b), BoundMethod::B14);
}

AnalyticBound s11_alpha(const ReducedGains& rg, const ThreeIntensitySource& alice,
                        const ThreeIntensitySource& bob) {
    const auto c = PairCoeffs::from(alice, bob);
    const double A = (c.ap1 * c.bp2 - c.a1 * c.b2) / (c.ap1 * c.b2 + c.a1 * c.bp2);
    const double B = (c.ap2 * c.bp1 - c.a2 * c.b1) / (c.ap2 * c.b1 + c.a2 * c.bp1);
    const double alpha = std::min(A, B);
    const double den =
        c.a1 * c.b1 - c.ap1 * c.bp1 + alpha * (c.a1 * c.bp1 + c.ap1 * c.b1);
    if (std::abs(den) < kDegenerateTol) {
        throw DegenerateSourcePair("alpha-combination denominator vanishes");
    }
    const double raw = (rg.s_xx - rg.s_yy + alpha * (rg.s_xy + rg.s_yx)) / den;
    return make_bound(raw, BoundMethod::BAlpha);
}

AnalyticBound e11_simple(const ReducedGains& rg, const ThreeIntensitySource& alice,
                         const ThreeIntensitySource& bob, double s11_bound) {
    if (!(s11_bound > 0.0)) {
        throw UndefinedErrorBound("yield lower bound is non-positive");
    }
    const double a1 = alice.decoy_x.prob(1);
    const double b1 = bob.decoy_x.prob(1);
    return make_bound(rg.t_xx / (a1 * b1 * s11_bound), BoundMethod::E11Simple);
}

}  // namespace mdiqkd
