#include "mdiqkd/keyrate.hpp"

#include <cmath>
#include <thread>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

double binary_entropy(double e) {
    if (!(e >= 0.0 && e <= 1.0)) throw InvalidProbability("entropy argument outside [0, 1]");
    if (e == 0.0 || e == 1.0) return 0.0;
    return -e * std::log2(e) - (1.0 - e) * std::log2(1.0 - e);
}

double key_rate(const KeyRateInputs& in) {
    if (!(in.s11_z >= 0.0 && in.s11_z <= 1.0) || !(in.e11_x >= 0.0 && in.e11_x <= 1.0) ||
        !(in.s_yy_z >= 0.0 && in.s_yy_z <= 1.0) || !(in.e_yy_z >= 0.0 && in.e_yy_z <= 1.0)) {
        throw InvalidProbability("key-rate inputs must be rates in [0, 1]");
    }
    if (!(in.f_ec >= 1.0)) throw InvalidParameter("error-correction inefficiency must be >= 1");
    double single = 0.0;
    if (in.e11_x < 0.5) {
        single = in.a1p_b1p * in.s11_z * (1.0 - binary_entropy(in.e11_x));
    }
    return single - in.s_yy_z * in.f_ec * binary_entropy(in.e_yy_z);
}

int method_index(BoundMethod m) {
    for (int i = 0; i < static_cast<int>(kYieldMethods.size()); ++i) {
        if (kYieldMethods[i] == m) return i;
    }
    throw InvalidParameter("not a yield-bound method");
}

BoundMethod method_from_string(const std::string& name) {
    for (BoundMethod m : kYieldMethods) {
        if (name == to_string(m)) return m;
    }
    throw ConfigError("unknown method '" + name + "'");
}

PointEstimates estimate_point(const ObservedStatistics& obs_z, const ObservedStatistics& obs_x,
                              const ThreeIntensitySource& alice,
                              const ThreeIntensitySource& bob) {
    const ReducedGains rg_z = reduce(obs_z, alice, bob);
    const ReducedGains rg_x = reduce(obs_x, alice, bob);

    PointEstimates p;
    p.s_yy_z = obs_z.s(IntensityTag::Y, IntensityTag::Y);
    p.e_yy_z = p.s_yy_z > 0.0 ? obs_z.t(IntensityTag::Y, IntensityTag::Y) / p.s_yy_z : 0.0;
    p.a1p_b1p = alice.signal_y.prob(1) * bob.signal_y.prob(1);

    const auto analytic = [&](const ReducedGains& rg, BoundMethod m) {
        switch (m) {
            case BoundMethod::B123: return s11_123(rg, alice, bob);
            case BoundMethod::B124: return s11_124(rg, alice, bob);
            case BoundMethod::B134: return s11_134(rg, alice, bob);
            case BoundMethod::B234: return s11_234(rg, alice, bob);
            case BoundMethod::B14: return s11_14(rg, alice, bob);
            default: return s11_alpha(rg, alice, bob);
        }
    };

    for (BoundMethod m : kYieldMethods) {
        const int i = method_index(m);
        if (m == BoundMethod::S11Exact) continue;
        p.s11_z[i] = analytic(rg_z, m);
        // the phase-error bound runs the same estimator on the X basis; a
        // non-positive yield bound leaves only the trivial error bound of one
        const AnalyticBound s11x = analytic(rg_x, m);
        p.e11_x[i] = s11x.value > 0.0 ? e11_simple(rg_x, alice, bob, s11x.value)
                                      : make_bound(1.0, BoundMethod::E11Simple);
    }
    {
        const int i = method_index(BoundMethod::S11Exact);
        const CopCoefficients cz = cop_coefficients(rg_z, alice, bob);
        p.s11_z[i] = s11_exact_min(cz).bound;
        const CopCoefficients cx = cop_coefficients(rg_x, alice, bob);
        const ExactYieldResult sx = s11_exact_min(cx);
        const ExactErrorResult tx = t11_exact_max(cx);
        p.e11_x[i] = sx.bound.value > 0.0 ? e11_exact(sx.bound.value, tx.bound.value)
                                          : make_bound(1.0, BoundMethod::E11Exact);
    }
    return p;
}

double rate_for(const PointEstimates& p, BoundMethod method, double f_ec) {
    KeyRateInputs in;
    in.a1p_b1p = p.a1p_b1p;
    in.s11_z = p.s11(method).value;
    in.e11_x = p.e11(method).value;
    in.s_yy_z = p.s_yy_z;
    in.e_yy_z = p.e_yy_z;
    in.f_ec = f_ec;
    return key_rate(in);
}

double rate_asymptotic(const PointEstimates& p, double f_ec) {
    KeyRateInputs in;
    in.a1p_b1p = p.a1p_b1p;
    in.s11_z = p.s11_true;
    in.e11_x = p.e11_true;
    in.s_yy_z = p.s_yy_z;
    in.e_yy_z = p.e_yy_z;
    in.f_ec = f_ec;
    return key_rate(in);
}

std::vector<SweepRow> sweep_loss(const ChannelParams& base, const std::vector<double>& losses_db,
                                 const ThreeIntensitySource& alice,
                                 const ThreeIntensitySource& bob, BoundMethod method,
                                 double f_ec, int k_max, int jobs) {
    if (losses_db.empty()) throw InvalidGrid("loss grid is empty");
    std::vector<SweepRow> rows(losses_db.size());

    auto eval_point = [&](size_t i) {
        SweepRow& row = rows[i];
        row.point.loss_db = losses_db[i];
        try {
            ChannelParams params = base;
            params.total_loss_db = losses_db[i];
            params.basis = Basis::Z;
            const YieldMatrix ym_z = simulate_yield_matrix(params, k_max);
            params.basis = Basis::X;
            const YieldMatrix ym_x = simulate_yield_matrix(params, k_max);
            const ObservedStatistics obs_z = compose_observed(alice, bob, ym_z);
            const ObservedStatistics obs_x = compose_observed(alice, bob, ym_x);
            const double loss = row.point.loss_db;
            row.point = estimate_point(obs_z, obs_x, alice, bob);
            row.point.loss_db = loss;
            const auto [s11_true, e11_true] = asymptotic_reference(ym_z);
            row.point.s11_true = s11_true;
            row.point.e11_true = e11_true;
            row.r_method = rate_for(row.point, method, f_ec);
            row.r_asymptotic = rate_asymptotic(row.point, f_ec);
            row.secure = row.r_method > 0.0;
        } catch (const Error& e) {
            row.error = e.what();
        }
    };

    const int n_threads = std::max(1, std::min<int>(jobs, static_cast<int>(losses_db.size())));
    if (n_threads == 1) {
        for (size_t i = 0; i < rows.size(); ++i) eval_point(i);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                for (size_t i = t; i < rows.size(); i += n_threads) eval_point(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    return rows;
}

OptimizeResult optimize_signal_intensity(const ChannelParams& base, double loss_db, double mu1,
                                         const std::vector<double>& mu2_grid,
                                         const SourcePairBuilder& builder, BoundMethod method,
                                         double f_ec, int k_max) {
    if (mu2_grid.empty()) throw InvalidGrid("signal-intensity grid is empty");
    for (double mu2 : mu2_grid) {
        if (!(mu2 > mu1)) throw InvalidGrid("signal intensities must exceed the decoy intensity");
    }
    ChannelParams params = base;
    params.total_loss_db = loss_db;
    params.basis = Basis::Z;
    const YieldMatrix ym_z = simulate_yield_matrix(params, k_max);
    params.basis = Basis::X;
    const YieldMatrix ym_x = simulate_yield_matrix(params, k_max);

    OptimizeResult res;
    res.curve.reserve(mu2_grid.size());
    bool first = true;
    for (double mu2 : mu2_grid) {
        const auto [alice, bob] = builder(mu1, mu2);
        const ObservedStatistics obs_z = compose_observed(alice, bob, ym_z);
        const ObservedStatistics obs_x = compose_observed(alice, bob, ym_x);
        PointEstimates p = estimate_point(obs_z, obs_x, alice, bob);
        p.loss_db = loss_db;
        const double r = rate_for(p, method, f_ec);
        res.curve.emplace_back(mu2, r);
        if (first || r > res.r_opt) {
            res.mu2_opt = mu2;
            res.r_opt = r;
            first = false;
        }
    }
    return res;
}

SourcePairBuilder poisson_source_builder(int k_max) {
    return [k_max](double mu1, double mu2) {
        return std::make_pair(ThreeIntensitySource::poisson(mu1, mu2, k_max, "Alice"),
                              ThreeIntensitySource::poisson(mu1, mu2, k_max, "Bob"));
    };
}

}  // namespace mdiqkd
