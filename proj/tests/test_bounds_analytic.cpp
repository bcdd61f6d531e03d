#include "doctest.h"

#include <cmath>
#include <vector>

#include "mdiqkd/bounds_analytic.hpp"
#include "mdiqkd/errors.hpp"

#include "golden_values.hpp"
#include "testing.hpp"

using namespace mdiqkd;
using testutil::close_rel;

namespace {

std::vector<AnalyticBound> all_yield_bounds(const ReducedGains& rg,
                                            const ThreeIntensitySource& a,
                                            const ThreeIntensitySource& b) {
    return {s11_123(rg, a, b), s11_124(rg, a, b), s11_134(rg, a, b),
            s11_234(rg, a, b), s11_14(rg, a, b),  s11_alpha(rg, a, b)};
}

}  // namespace

TEST_CASE("zero observations give zero bounds") {
    const auto pl = testutil::make_pipeline(20.0);
    const ReducedGains zero{};
    for (const auto& b : all_yield_bounds(zero, pl.alice, pl.bob)) {
        CHECK(b.value == 0.0);
        CHECK(b.raw == 0.0);
    }
    CHECK(e11_simple(zero, pl.alice, pl.bob, 0.5).value == 0.0);
}

TEST_CASE("golden closed-form bounds at 20 dB") {
    const auto pl = testutil::make_pipeline(20.0);
    CHECK(close_rel(s11_123(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11B123, 1e-11));
    CHECK(close_rel(s11_124(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11B124, 1e-11));
    CHECK(close_rel(s11_134(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11B134, 1e-11));
    CHECK(close_rel(s11_234(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11B234, 1e-11));
    CHECK(close_rel(s11_14(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11B14, 1e-11));
    CHECK(close_rel(s11_alpha(pl.rg_z, pl.alice, pl.bob).raw, golden::kS11BAlpha, 1e-11));
    const double s123 = s11_123(pl.rg_z, pl.alice, pl.bob).value;
    CHECK(close_rel(e11_simple(pl.rg_z, pl.alice, pl.bob, s123).raw, golden::kE11Simple, 1e-11));
}

TEST_CASE("symmetric sources make the mirrored eliminations coincide") {
    const auto pl = testutil::make_pipeline(17.0);
    const double b124 = s11_124(pl.rg_z, pl.alice, pl.bob).raw;
    const double b134 = s11_134(pl.rg_z, pl.alice, pl.bob).raw;
    CHECK(close_rel(b124, b134, 1e-12));
}

TEST_CASE("symmetric sources make the two-equation branches coincide") {
    const auto pl = testutil::make_pipeline(17.0);
    const double a1 = pl.alice.decoy_x.prob(1), a2 = pl.alice.decoy_x.prob(2);
    const double ap1 = pl.alice.signal_y.prob(1), ap2 = pl.alice.signal_y.prob(2);
    const double det = a1 * ap2 - ap1 * a2;
    const double branch_a =
        (ap1 * ap2 * pl.rg_z.s_xx - a1 * a2 * pl.rg_z.s_yy) / (a1 * ap1 * det);
    const double branch_b =
        (ap2 * ap1 * pl.rg_z.s_xx - a2 * a1 * pl.rg_z.s_yy) / (a1 * ap1 * det);
    CHECK(close_rel(branch_a, branch_b, 1e-14));
    CHECK(close_rel(s11_14(pl.rg_z, pl.alice, pl.bob).raw, branch_a, 1e-13));
}

TEST_CASE("ordering chain across the loss range") {
    for (double loss = 0.0; loss <= 40.0; loss += 4.0) {
        const auto pl = testutil::make_pipeline(loss);
        const double b123 = s11_123(pl.rg_z, pl.alice, pl.bob).value;
        for (const auto& b : all_yield_bounds(pl.rg_z, pl.alice, pl.bob)) {
            CHECK(b123 >= b.value - 1e-12);
        }
        // symmetric coherent sources: the two-equation bound dominates alpha
        CHECK(s11_14(pl.rg_z, pl.alice, pl.bob).value >=
              s11_alpha(pl.rg_z, pl.alice, pl.bob).value - 1e-12);
    }
}

TEST_CASE("validity against the simulated truth") {
    for (double loss = 0.0; loss <= 40.0; loss += 5.0) {
        const auto pl = testutil::make_pipeline(loss);
        for (const auto& b : all_yield_bounds(pl.rg_z, pl.alice, pl.bob)) {
            CHECK(b.value <= pl.s11_true + 1e-12);
        }
        const double s123 = s11_123(pl.rg_z, pl.alice, pl.bob).value;
        CHECK(e11_simple(pl.rg_x, pl.alice, pl.bob, s123).value >= pl.e11_true - 1e-12);
    }
}

TEST_CASE("validity for asymmetric parties") {
    using testutil::default_channel;
    const auto alice = ThreeIntensitySource::poisson(0.08, 0.45, 40, "Alice");
    const auto bob = ThreeIntensitySource::poisson(0.15, 0.7, 40, "Bob");
    for (double loss : {5.0, 18.0, 33.0}) {
        auto params = default_channel(loss);
        const auto ym = simulate_yield_matrix(params, 40);
        const auto rg = reduce(compose_observed(alice, bob, ym), alice, bob);
        const auto [s11_true, e11_true] = asymptotic_reference(ym);
        for (const auto& b : all_yield_bounds(rg, alice, bob)) {
            CHECK(b.value <= s11_true + 1e-12);
        }
        const double s123 = s11_123(rg, alice, bob).value;
        CHECK(e11_simple(rg, alice, bob, s123).value >= e11_true - 1e-12);
    }
}

TEST_CASE("raw bounds scale linearly with the observations") {
    const auto pl = testutil::make_pipeline(20.0);
    const double c = 0.375;
    ReducedGains scaled = pl.rg_z;
    scaled.s_xx *= c;
    scaled.s_xy *= c;
    scaled.s_yx *= c;
    scaled.s_yy *= c;
    const auto base = all_yield_bounds(pl.rg_z, pl.alice, pl.bob);
    const auto after = all_yield_bounds(scaled, pl.alice, pl.bob);
    for (size_t i = 0; i < base.size(); ++i) {
        CHECK(close_rel(after[i].raw, c * base[i].raw, 1e-12));
    }
}

TEST_CASE("clamping keeps the raw value") {
    const auto pl = testutil::make_pipeline(20.0);
    ReducedGains flipped = pl.rg_z;
    flipped.s_xx = -flipped.s_xx;  // drives the estimate negative
    const auto b = s11_123(flipped, pl.alice, pl.bob);
    CHECK(b.value == 0.0);
    CHECK(b.raw < 0.0);
    CHECK(b.clamped);
}

TEST_CASE("proportional decoy and signal states are degenerate") {
    const auto x = PhotonNumberDistribution::custom({0.6, 0.2, 0.1, 0.1});
    const auto y = PhotonNumberDistribution::custom({0.1, 0.4, 0.2, 0.3});
    const auto src = ThreeIntensitySource::make(x, y, "A");  // det_a == 0
    const auto pl = testutil::make_pipeline(20.0);
    CHECK_THROWS_AS(s11_123(pl.rg_z, src, src), DegenerateSourcePair);
}

TEST_CASE("error bound needs a positive yield bound") {
    const auto pl = testutil::make_pipeline(20.0);
    CHECK_THROWS_AS(e11_simple(pl.rg_z, pl.alice, pl.bob, 0.0), UndefinedErrorBound);
    CHECK_THROWS_AS(e11_simple(pl.rg_z, pl.alice, pl.bob, -0.1), UndefinedErrorBound);
}

TEST_CASE("error bound grows when the yield bound shrinks") {
    const auto pl = testutil::make_pipeline(20.0);
    const double e_tight = e11_simple(pl.rg_z, pl.alice, pl.bob, 0.01).raw;
    const double e_loose = e11_simple(pl.rg_z, pl.alice, pl.bob, 0.005).raw;
    CHECK(e_loose > e_tight);
}
