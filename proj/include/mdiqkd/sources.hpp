#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdiqkd/types.hpp"

namespace mdiqkd {

/// Photon-number distribution of one source, truncated at a finite photon
/// number with the remaining probability mass carried explicitly.
///
/// Immutable after construction; sum(probs) + tail_mass == 1 within 1e-12.
class PhotonNumberDistribution {
  public:
    /// Coherent-state photon statistics: probs[k] = e^(-mu) mu^k / k!.
    static PhotonNumberDistribution poisson(double mu, int k_max);

    /// User-supplied probabilities; tail mass is 1 - sum(probs).
    /// The mean is computed from the explicit entries unless a hint is given.
    static PhotonNumberDistribution custom(std::vector<double> probs,
                                           std::optional<double> mean_hint = std::nullopt);

    /// Point mass at photon number zero.
    static PhotonNumberDistribution vacuum(int k_max = 0);

    double prob(int k) const {
        return (k >= 0 && k < static_cast<int>(probs_.size())) ? probs_[k] : 0.0;
    }
    const std::vector<double>& probs() const { return probs_; }
    double tail_mass() const { return tail_mass_; }
    double mean() const { return mean_; }
    int k_max() const { return static_cast<int>(probs_.size()) - 1; }

    /// Probability of emitting k0 or more photons, accumulated from the top
    /// of the distribution so that tiny tails do not cancel against 1.
    double upper_mass_from(int k0) const;

  private:
    PhotonNumberDistribution(std::vector<double> probs, double tail_mass, double mean);

    std::vector<double> probs_;
    std::vector<double> suffix_;  // suffix_[k] = sum_{j >= k} probs_[j] + tail_mass_
    double tail_mass_ = 0.0;
    double mean_ = 0.0;
};

/// Ratio-ordering requirement on a decoy/signal pair: y[k]/x[k] must dominate
/// y[2]/x[2], which must dominate y[1]/x[1], for every k >= 2 up to the common
/// truncation.  Cells with x[k] == y[k] == 0 are skipped; x[k] == 0 with
/// y[k] > 0 counts as an infinite ratio.
///
/// Throws DegenerateDecoyState if x has no one- or two-photon component.
bool check_condition(const PhotonNumberDistribution& x, const PhotonNumberDistribution& y);

/// One party's three sources: vacuum, weak decoy and signal.
/// Construction validates the vacuum point mass, the intensity ordering and
/// the decoy condition, so a constructed value is always usable by the bounds.
struct ThreeIntensitySource {
    PhotonNumberDistribution vacuum;
    PhotonNumberDistribution decoy_x;
    PhotonNumberDistribution signal_y;
    std::string label;

    static ThreeIntensitySource make(PhotonNumberDistribution decoy,
                                     PhotonNumberDistribution signal, std::string label);

    /// Symmetric coherent-state construction used throughout the simulations.
    static ThreeIntensitySource poisson(double mu_decoy, double mu_signal, int k_max,
                                        std::string label);
};

}  // namespace mdiqkd
