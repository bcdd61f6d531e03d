#pragma once

#include <array>
#include <optional>
#include <vector>

#include "mdiqkd/sources.hpp"
#include "mdiqkd/types.hpp"

namespace mdiqkd {

/// One measured cell: counts for a two-pulse source in one basis.
/// Counts may be fractional (e.g. when re-ingesting simulated gains).
struct CountRecord {
    IntensityTag alice;
    IntensityTag bob;
    Basis basis;
    double sent;
    double success;
    double error;
};

/// Gains and error-weighted gains of the nine two-pulse sources in one basis.
struct ObservedStatistics {
    Basis basis = Basis::Z;
    /// S[alice][bob], indexed by IntensityTag (o, x, y).
    std::array<std::array<double, 3>, 3> S{};
    /// T[alice][bob] = E * S.
    std::array<std::array<double, 3>, 3> T{};
    /// Width of the composition interval per cell: the unresolved truncation
    /// mass that could raise a composed gain.  Zero for measured data.
    std::array<std::array<double, 3>, 3> tail_gap{};
    /// Raw (success, sent) counts when the statistics came from measurement.
    std::optional<std::array<std::array<std::pair<double, double>, 3>, 3>> counts;

    double s(IntensityTag a, IntensityTag b) const {
        return S[static_cast<int>(a)][static_cast<int>(b)];
    }
    double t(IntensityTag a, IntensityTag b) const {
        return T[static_cast<int>(a)][static_cast<int>(b)];
    }

    /// Throws unless 0 <= T <= S <= 1 in every cell.
    void validate() const;
};

/// Builds per-basis statistics from measured counts.  All nine cells for the
/// requested basis must be present exactly once.
ObservedStatistics from_counts(const std::vector<CountRecord>& records, Basis basis);

/// Observed gains with the vacuum-component contributions subtracted.
/// These reduced quantities feed every single-photon-pair bound.
struct ReducedGains {
    double s_xx = 0, s_xy = 0, s_yx = 0, s_yy = 0;
    double t_xx = 0, t_xy = 0, t_yx = 0, t_yy = 0;
};

ReducedGains reduce(const ObservedStatistics& obs, const ThreeIntensitySource& alice,
                    const ThreeIntensitySource& bob);

}  // namespace mdiqkd
