#include "mdiqkd/sources.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

namespace {
constexpr double kNormTol = 1e-12;
constexpr double kRatioTol = 1e-12;
}  // namespace

PhotonNumberDistribution::PhotonNumberDistribution(std::vector<double> probs, double tail_mass,
                                                   double mean)
    : probs_(std::move(probs)), tail_mass_(tail_mass), mean_(mean) {
    suffix_.assign(probs_.size() + 1, 0.0);
    suffix_[probs_.size()] = tail_mass_;
    for (int k = static_cast<int>(probs_.size()) - 1; k >= 0; --k) {
        suffix_[k] = suffix_[k + 1] + probs_[k];
    }
}

double PhotonNumberDistribution::upper_mass_from(int k0) const {
    if (k0 <= 0) return suffix_[0];
    if (k0 >= static_cast<int>(suffix_.size())) return tail_mass_;
    return suffix_[k0];
}

PhotonNumberDistribution PhotonNumberDistribution::poisson(double mu, int k_max) {
    if (!(mu >= 0.0) || !std::isfinite(mu)) {
        throw InvalidIntensity("poisson mean must be finite and non-negative");
    }
    if (k_max < 2) throw InvalidParameter("poisson truncation must be at least 2");
    std::vector<double> probs(static_cast<size_t>(k_max) + 1);
    double term = std::exp(-mu);
    double sum = 0.0;
    for (int k = 0; k <= k_max; ++k) {
        probs[k] = term;
        sum += term;
        term *= mu / static_cast<double>(k + 1);
    }
    // Accumulate the tail from above instead of 1 - sum, which would lose it
    // to cancellation once it drops below 1e-16.
    double tail = 0.0;
    std::vector<double> scratch;
    {
        double t = term;  // probability of k_max + 1
        int k = k_max + 1;
        while (t > 0.0 && k < k_max + 2000) {
            scratch.push_back(t);
            t *= mu / static_cast<double>(k + 1);
            ++k;
        }
        for (auto it = scratch.rbegin(); it != scratch.rend(); ++it) tail += *it;
    }
    return PhotonNumberDistribution(std::move(probs), tail, mu);
}

PhotonNumberDistribution PhotonNumberDistribution::custom(std::vector<double> probs,
                                                          std::optional<double> mean_hint) {
    if (probs.empty()) throw InvalidDistribution("probability list is empty");
    double sum = 0.0;
    double mean = 0.0;
    for (size_t k = 0; k < probs.size(); ++k) {
        if (!(probs[k] >= 0.0) || !std::isfinite(probs[k])) {
            throw InvalidDistribution("probabilities must be finite and non-negative");
        }
        sum += probs[k];
        mean += static_cast<double>(k) * probs[k];
    }
    if (sum > 1.0 + kNormTol) throw InvalidDistribution("probabilities sum to more than one");
    double tail = std::max(1.0 - sum, 0.0);
    return PhotonNumberDistribution(std::move(probs), tail, mean_hint.value_or(mean));
}

PhotonNumberDistribution PhotonNumberDistribution::vacuum(int k_max) {
    std::vector<double> probs(static_cast<size_t>(std::max(k_max, 0)) + 1, 0.0);
    probs[0] = 1.0;
    return PhotonNumberDistribution(std::move(probs), 0.0, 0.0);
}

bool check_condition(const PhotonNumberDistribution& x, const PhotonNumberDistribution& y) {
    if (x.prob(1) <= 0.0 || x.prob(2) <= 0.0) {
        throw DegenerateDecoyState("decoy state needs positive one- and two-photon weights");
    }
    const double r1 = y.prob(1) / x.prob(1);
    const double r2 = y.prob(2) / x.prob(2);
    const auto tol = [](double r) { return kRatioTol * std::max(1.0, std::abs(r)); };
    if (r2 < r1 - tol(r1)) return false;
    const int k_common = std::min(x.k_max(), y.k_max());
    for (int k = 3; k <= k_common; ++k) {
        const double xk = x.prob(k);
        const double yk = y.prob(k);
        if (xk == 0.0 && yk == 0.0) continue;
        if (xk == 0.0) continue;  // ratio is +infinity
        if (yk / xk < r2 - tol(r2)) return false;
    }
    return true;
}

ThreeIntensitySource ThreeIntensitySource::make(PhotonNumberDistribution decoy,
                                                PhotonNumberDistribution signal,
                                                std::string label) {
    if (!(decoy.mean() < signal.mean())) {
        throw InvalidIntensity("decoy intensity must be below the signal intensity");
    }
    if (!check_condition(decoy, signal)) {
        throw DecoyConditionViolated("decoy/signal pair fails the ratio ordering");
    }
    const int k = std::max(decoy.k_max(), signal.k_max());
    return ThreeIntensitySource{PhotonNumberDistribution::vacuum(k), std::move(decoy),
                                std::move(signal), std::move(label)};
}

ThreeIntensitySource ThreeIntensitySource::poisson(double mu_decoy, double mu_signal, int k_max,
                                                   std::string label) {
    return make(PhotonNumberDistribution::poisson(mu_decoy, k_max),
                PhotonNumberDistribution::poisson(mu_signal, k_max), std::move(label));
}

}  // namespace mdiqkd
