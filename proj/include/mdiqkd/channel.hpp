#pragma once

#include <utility>
#include <vector>

#include "mdiqkd/statistics.hpp"
#include "mdiqkd/types.hpp"

namespace mdiqkd {

/// Linear-loss channel with the relay half way between the parties, identical
/// threshold detectors on both arms, dark counts and a fixed misalignment.
struct ChannelParams {
    double total_loss_db = 20.0;      // end-to-end transmission loss, dB
    double detector_efficiency = 1.0; // folded into the overall transmittance
    double dark_count = 3.0e-6;       // per detector per gate
    double misalignment = 0.015;      // applies to the signal fraction
    double background_error = 0.5;    // error rate of dark-count events
    Basis basis = Basis::Z;

    void validate() const;

    /// Overall transmittance, loss and detector efficiency combined.
    double overall_transmittance() const;
    /// Per-side transmittance; the relay sits at the midpoint.
    double side_transmittance() const;
};

/// Ground-truth yields y[m][n] and error-weighted yields t[m][n] of every
/// photon-number pair up to the truncation.  This is the infinite-decoy
/// reference the estimators are validated against.
class YieldMatrix {
  public:
    YieldMatrix(int k_max, Basis basis)
        : k_max_(k_max),
          basis_(basis),
          y_(static_cast<size_t>(k_max + 1) * (k_max + 1), 0.0),
          t_(y_.size(), 0.0) {}

    int k_max() const { return k_max_; }
    Basis basis() const { return basis_; }
    double yield(int m, int n) const { return y_[idx(m, n)]; }
    double error_yield(int m, int n) const { return t_[idx(m, n)]; }
    void set(int m, int n, double y, double t) {
        y_[idx(m, n)] = y;
        t_[idx(m, n)] = t;
    }

  private:
    size_t idx(int m, int n) const {
        return static_cast<size_t>(m) * (k_max_ + 1) + static_cast<size_t>(n);
    }
    int k_max_;
    Basis basis_;
    std::vector<double> y_, t_;
};

/// Evaluates the closed-form click model on the photon-number grid:
///   y[m][n] = (1 - (1-eta)^m (1-pd)) (1 - (1-eta)^n (1-pd))
/// with eta the per-side transmittance; misalignment applies to the
/// both-sides-detected fraction and dark-count events carry the background
/// error rate.
YieldMatrix simulate_yield_matrix(const ChannelParams& params, int k_max);

/// True single-photon-pair yield and error rate (s11, e11) read directly off
/// the simulated matrix.  Throws DegenerateChannel when y[1][1] == 0.
std::pair<double, double> asymptotic_reference(const YieldMatrix& ym);

/// Gains of the nine two-pulse sources under the given ground truth:
///   S[a][b] = sum_{m,n <= K} p_a(m) p_b(n) y[m][n],
/// and the analogous error-weighted T.  The mass that the truncation leaves
/// unresolved is reported per cell in tail_gap (yields of the dropped states
/// lie anywhere in [0,1]).
ObservedStatistics compose_observed(const ThreeIntensitySource& alice,
                                    const ThreeIntensitySource& bob, const YieldMatrix& ym);

}  // namespace mdiqkd
