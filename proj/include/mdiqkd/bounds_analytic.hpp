#pragma once

#include "mdiqkd/statistics.hpp"

namespace mdiqkd {

/// Which estimator produced a bound.
enum class BoundMethod {
    B123,
    B124,
    B134,
    B234,
    B14,
    BAlpha,
    S11Exact,
    E11Simple,
    E11Exact,
};

const char* to_string(BoundMethod m);

/// A certified bound with its pre-clamp value preserved for diagnostics.
struct AnalyticBound {
    double value = 0.0;  // clamped to [0, 1]
    BoundMethod method = BoundMethod::B123;
    double raw = 0.0;
    bool clamped = false;
};

AnalyticBound make_bound(double raw, BoundMethod method);

/// Closed-form lower bounds on the two-single-photon yield s11.  Each uses a
/// different subset of the four reduced gain equations; the three-equation
/// variants eliminate s12 and s21.
AnalyticBound s11_123(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob);
AnalyticBound s11_124(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob);
AnalyticBound s11_134(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob);
AnalyticBound s11_234(const ReducedGains& rg, const ThreeIntensitySource& alice,
                      const ThreeIntensitySource& bob);

/// Two-equation bound: the smaller of the two single-elimination branches.
AnalyticBound s11_14(const ReducedGains& rg, const ThreeIntensitySource& alice,
                     const ThreeIntensitySource& bob);

/// Four-equation bound through the minimum coefficient ratio alpha.
AnalyticBound s11_alpha(const ReducedGains& rg, const ThreeIntensitySource& alice,
                        const ThreeIntensitySource& bob);

/// Upper bound on the single-photon-pair error rate from the xx error gain:
/// t_xx-tilde / (a1 b1 s11_bound).  Throws UndefinedErrorBound when the yield
/// bound is non-positive.
AnalyticBound e11_simple(const ReducedGains& rg, const ThreeIntensitySource& alice,
                         const ThreeIntensitySource& bob, double s11_bound);

}  // namespace mdiqkd
