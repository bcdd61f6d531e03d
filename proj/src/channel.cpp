#include "mdiqkd/channel.hpp"

#include <cmath>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

void ChannelParams::validate() const {
    if (!(total_loss_db >= 0.0) || !std::isfinite(total_loss_db)) {
        throw InvalidParameter("total loss must be finite and non-negative");
    }
    if (!(detector_efficiency > 0.0 && detector_efficiency <= 1.0)) {
        throw InvalidParameter("detector efficiency must lie in (0, 1]");
    }
    if (!(dark_count >= 0.0 && dark_count < 1.0)) {
        throw InvalidParameter("dark count rate must lie in [0, 1)");
    }
    if (!(misalignment >= 0.0 && misalignment <= 0.5)) {
        throw InvalidParameter("misalignment must lie in [0, 0.5]");
    }
    if (!(background_error >= 0.0 && background_error <= 1.0)) {
        throw InvalidParameter("background error must lie in [0, 1]");
    }
}

double ChannelParams::overall_transmittance() const {
    return std::pow(10.0, -total_loss_db / 10.0) * detector_efficiency;
}

double ChannelParams::side_transmittance() const { return std::sqrt(overall_transmittance()); }

YieldMatrix simulate_yield_matrix(const ChannelParams& params, int k_max) {
    params.validate();
    if (k_max < 2) throw InvalidParameter("yield matrix truncation must be at least 2");
    const double eta_side = params.side_transmittance();
    const double pd = params.dark_count;
    const double ed = params.misalignment;
    const double e0 = params.background_error;

    YieldMatrix ym(k_max, params.basis);
    // detect[m] = 1 - (1 - eta_side)^m, via expm1 so that tiny values keep
    // full precision instead of cancelling against 1
    std::vector<double> detect(static_cast<size_t>(k_max) + 1);
    const double log_miss = eta_side < 1.0 ? std::log1p(-eta_side) : 0.0;
    for (int m = 0; m <= k_max; ++m) {
        detect[m] = eta_side < 1.0 ? -std::expm1(m * log_miss) : (m > 0 ? 1.0 : 0.0);
    }
    for (int m = 0; m <= k_max; ++m) {
        const double click_m = detect[m] + (1.0 - detect[m]) * pd;
        for (int n = 0; n <= k_max; ++n) {
            const double click_n = detect[n] + (1.0 - detect[n]) * pd;
            const double y = click_m * click_n;
            const double q = detect[m] * detect[n];  // both sides saw photons
            const double t = ed * q + e0 * (y - q);
            ym.set(m, n, y, t);
        }
    }
    return ym;
}

std::pair<double, double> asymptotic_reference(const YieldMatrix& ym) {
    const double y11 = ym.yield(1, 1);
    if (!(y11 > 0.0)) throw DegenerateChannel("single-photon pair yield is zero");
    return {y11, ym.error_yield(1, 1) / y11};
}

ObservedStatistics compose_observed(const ThreeIntensitySource& alice,
                                    const ThreeIntensitySource& bob, const YieldMatrix& ym) {
    const int k = ym.k_max();
    if (alice.decoy_x.k_max() > k || alice.signal_y.k_max() > k || bob.decoy_x.k_max() > k ||
        bob.signal_y.k_max() > k) {
        throw TruncationMismatch("source truncation exceeds the yield matrix truncation");
    }
    const PhotonNumberDistribution* pa[3] = {&alice.vacuum, &alice.decoy_x, &alice.signal_y};
    const PhotonNumberDistribution* pb[3] = {&bob.vacuum, &bob.decoy_x, &bob.signal_y};

    ObservedStatistics out;
    out.basis = ym.basis();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            double s = 0.0, t = 0.0;
            const int ma = std::min(pa[i]->k_max(), k);
            const int nb = std::min(pb[j]->k_max(), k);
            for (int m = 0; m <= ma; ++m) {
                const double w = pa[i]->prob(m);
                if (w == 0.0) continue;
                double srow = 0.0, trow = 0.0;
                for (int n = 0; n <= nb; ++n) {
                    const double v = pb[j]->prob(n);
                    srow += v * ym.yield(m, n);
                    trow += v * ym.error_yield(m, n);
                }
                s += w * srow;
                t += w * trow;
            }
            // Mass involving at least one truncated-away photon number; its
            // yield is unknown, so the composed gain lies in [s, s + gap].
            const double gap =
                1.0 - (1.0 - pa[i]->tail_mass()) * (1.0 - pb[j]->tail_mass());
            out.S[i][j] = s;
            out.T[i][j] = t;
            out.tail_gap[i][j] = gap;
        }
    }
    out.validate();
    return out;
}

}  // namespace mdiqkd
