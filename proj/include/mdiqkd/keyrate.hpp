#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "mdiqkd/bounds_exact.hpp"
#include "mdiqkd/channel.hpp"

namespace mdiqkd {

/// Shannon binary entropy in bits; H(0) = H(1) = 0.
double binary_entropy(double e);

struct KeyRateInputs {
    double a1p_b1p = 0.0;  // product of the parties' signal single-photon weights
    double s11_z = 0.0;    // Z-basis yield lower bound
    double e11_x = 0.0;    // X-basis error upper bound (phase-error proxy)
    double s_yy_z = 0.0;   // signal-signal gain, Z basis
    double e_yy_z = 0.0;   // signal-signal error rate, Z basis
    double f_ec = 1.16;    // error-correction inefficiency
};

/// Asymptotic secure key rate per pulse pair.  The single-photon term is
/// dropped once the phase-error bound reaches 1/2; negative rates are
/// reported as-is.
double key_rate(const KeyRateInputs& in);

/// The estimators compared throughout: the six closed forms and the exact
/// optimiser, in the fixed order used by tables and CSV columns.
inline constexpr std::array<BoundMethod, 7> kYieldMethods = {
    BoundMethod::B123, BoundMethod::B124, BoundMethod::B134, BoundMethod::B234,
    BoundMethod::B14,  BoundMethod::BAlpha, BoundMethod::S11Exact,
};

int method_index(BoundMethod m);
BoundMethod method_from_string(const std::string& name);

/// Every estimate at one operating point: per-method Z-basis yield bounds,
/// the matching X-basis error bounds, ground truth (when simulated) and the
/// signal-signal observables that price error correction.
struct PointEstimates {
    double loss_db = 0.0;
    std::array<AnalyticBound, 7> s11_z{};   // indexed by method_index
    std::array<AnalyticBound, 7> e11_x{};   // error bound paired with each method
    double s11_true = 0.0;
    double e11_true = 0.0;
    double s_yy_z = 0.0;
    double e_yy_z = 0.0;
    double a1p_b1p = 0.0;

    const AnalyticBound& s11(BoundMethod m) const { return s11_z[method_index(m)]; }
    const AnalyticBound& e11(BoundMethod m) const { return e11_x[method_index(m)]; }
};

/// Full estimation pipeline at one point from per-basis observations.
PointEstimates estimate_point(const ObservedStatistics& obs_z, const ObservedStatistics& obs_x,
                              const ThreeIntensitySource& alice, const ThreeIntensitySource& bob);

/// Key rate of one method at an estimated point.
double rate_for(const PointEstimates& p, BoundMethod method, double f_ec);
/// Key rate of the infinite-decoy reference at the same point.
double rate_asymptotic(const PointEstimates& p, double f_ec);

struct SweepRow {
    PointEstimates point;
    double r_method = 0.0;
    double r_asymptotic = 0.0;
    bool secure = false;
    std::string error;  // non-empty when this grid point failed
};

/// Simulates, composes and estimates every loss point of the grid; failures
/// are recorded per row instead of aborting the sweep.  jobs > 1 evaluates
/// points concurrently; row order always follows the grid.
std::vector<SweepRow> sweep_loss(const ChannelParams& base, const std::vector<double>& losses_db,
                                 const ThreeIntensitySource& alice,
                                 const ThreeIntensitySource& bob, BoundMethod method,
                                 double f_ec, int k_max, int jobs = 1);

using SourcePairBuilder =
    std::function<std::pair<ThreeIntensitySource, ThreeIntensitySource>(double mu1, double mu2)>;

struct OptimizeResult {
    double mu2_opt = 0.0;
    double r_opt = 0.0;
    std::vector<std::pair<double, double>> curve;  // (mu2, R)
};

/// Exhaustive scan of the signal intensity at fixed decoy intensity; ties
/// resolve toward the smaller intensity.
OptimizeResult optimize_signal_intensity(const ChannelParams& base, double loss_db, double mu1,
                                         const std::vector<double>& mu2_grid,
                                         const SourcePairBuilder& builder, BoundMethod method,
                                         double f_ec, int k_max);

/// Symmetric coherent sources with the given truncation.
SourcePairBuilder poisson_source_builder(int k_max);

}  // namespace mdiqkd
