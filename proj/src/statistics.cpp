#include "mdiqkd/statistics.hpp"

#include <cmath>
#include <string>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

void ObservedStatistics::validate() const {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const double s = S[i][j];
            const double t = T[i][j];
            if (!(s >= 0.0 && s <= 1.0) || !(t >= 0.0) || t > s + 1e-15) {
                throw InconsistentCounts("cell (" +
                                         std::string(to_string(static_cast<IntensityTag>(i))) +
                                         "," + to_string(static_cast<IntensityTag>(j)) +
                                         ") violates 0 <= T <= S <= 1");
            }
        }
    }
}

ObservedStatistics from_counts(const std::vector<CountRecord>& records, Basis basis) {
    ObservedStatistics out;
    out.basis = basis;
    std::array<std::array<bool, 3>, 3> seen{};
    std::array<std::array<std::pair<double, double>, 3>, 3> counts{};
    for (const auto& r : records) {
        if (r.basis != basis) continue;
        const int i = static_cast<int>(r.alice);
        const int j = static_cast<int>(r.bob);
        if (seen[i][j]) {
            throw IncompleteData("duplicate cell (" + std::string(to_string(r.alice)) + "," +
                                 to_string(r.bob) + ") in basis " + to_string(basis));
        }
        if (!(r.sent > 0.0)) throw IncompleteData("cell with no pulses sent");
        if (r.success < 0.0 || r.error < 0.0) {
            throw InconsistentCounts("negative count");
        }
        if (r.error > r.success + 1e-15 * std::max(1.0, r.success)) {
            throw InconsistentCounts("more errors than successes in cell (" +
                                     std::string(to_string(r.alice)) + "," + to_string(r.bob) +
                                     ")");
        }
        seen[i][j] = true;
        out.S[i][j] = r.success / r.sent;
        out.T[i][j] = r.error / r.sent;
        counts[i][j] = {r.success, r.sent};
    }
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (!seen[i][j]) {
                throw IncompleteData("missing cell (" +
                                     std::string(to_string(static_cast<IntensityTag>(i))) + "," +
                                     to_string(static_cast<IntensityTag>(j)) + ") in basis " +
                                     to_string(basis));
            }
        }
    }
    out.counts = counts;
    out.validate();
    return out;
}

ReducedGains reduce(const ObservedStatistics& obs, const ThreeIntensitySource& alice,
                    const ThreeIntensitySource& bob) {
    const double a0 = alice.decoy_x.prob(0);
    const double ap0 = alice.signal_y.prob(0);
    const double b0 = bob.decoy_x.prob(0);
    const double bp0 = bob.signal_y.prob(0);
    const auto& S = obs.S;
    const auto& T = obs.T;
    // index order o=0, x=1, y=2
    ReducedGains rg;
    rg.s_xx = S[1][1] - a0 * S[0][1] - b0 * S[1][0] + a0 * b0 * S[0][0];
    rg.s_xy = S[1][2] - a0 * S[0][2] - bp0 * S[1][0] + a0 * bp0 * S[0][0];
    rg.s_yx = S[2][1] - ap0 * S[0][1] - b0 * S[2][0] + ap0 * b0 * S[0][0];
    rg.s_yy = S[2][2] - ap0 * S[0][2] - bp0 * S[2][0] + ap0 * bp0 * S[0][0];
    rg.t_xx = T[1][1] - a0 * T[0][1] - b0 * T[1][0] + a0 * b0 * T[0][0];
    rg.t_xy = T[1][2] - a0 * T[0][2] - bp0 * T[1][0] + a0 * bp0 * T[0][0];
    rg.t_yx = T[2][1] - ap0 * T[0][1] - b0 * T[2][0] + ap0 * b0 * T[0][0];
    rg.t_yy = T[2][2] - ap0 * T[0][2] - bp0 * T[2][0] + ap0 * bp0 * T[0][0];
    return rg;
}

}  // namespace mdiqkd
