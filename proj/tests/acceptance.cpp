// Acceptance suite: runs every contract-level criterion and prints one
// PASS/FAIL line each.  Exit status is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mdiqkd/cli.hpp"
#include "mdiqkd/io.hpp"
#include "mdiqkd/oracle.hpp"

#include "golden_values.hpp"
#include "testing.hpp"

using namespace mdiqkd;
using testutil::close_rel;

namespace {

int g_failures = 0;

void criterion(const std::string& name, const std::function<bool(std::string&)>& fn) {
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    try {
        ok = fn(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %-38s (%.2fs)%s%s\n", ok ? "PASS" : "FAIL", name.c_str(), secs,
                detail.empty() ? "" : "  ", detail.c_str());
    if (!ok) ++g_failures;
}

std::vector<SweepRow> default_sweep() {
    std::vector<double> grid;
    for (int i = 0; i <= 80; ++i) grid.push_back(0.5 * i);
    const auto alice = ThreeIntensitySource::poisson(0.1, 0.5, 40, "Alice");
    const auto bob = ThreeIntensitySource::poisson(0.1, 0.5, 40, "Bob");
    return sweep_loss(ChannelParams{}, grid, alice, bob, BoundMethod::S11Exact, 1.16, 40, 4);
}

bool check_rel(std::string& detail, const char* name, double have, double want, double tol) {
    if (close_rel(have, want, tol)) return true;
    std::ostringstream os;
    os << name << ": have " << have << ", want " << want;
    detail = os.str();
    return false;
}

}  // namespace

int main() {
    std::vector<SweepRow> rows;

    criterion("1 default parameters", [](std::string& detail) {
        const RunConfig cfg;
        const bool ok = cfg.channel.background_error == 0.5 &&
                        cfg.channel.misalignment == 0.015 && cfg.channel.dark_count == 3.0e-6 &&
                        cfg.f_ec == 1.16 && cfg.mu1 == 0.1 && cfg.mu2 == 0.5 &&
                        cfg.nu1 == 0.1 && cfg.nu2 == 0.5;
        if (!ok) detail = "defaults drifted from the pinned parameter set";
        return ok;
    });

    criterion("2 bound ordering on the loss grid", [&](std::string& detail) {
        rows = default_sweep();
        for (const auto& r : rows) {
            if (!r.error.empty()) {
                detail = "row failed: " + r.error;
                return false;
            }
            const auto& p = r.point;
            const double exact = p.s11(BoundMethod::S11Exact).value;
            const double b123 = p.s11(BoundMethod::B123).value;
            if (exact < b123 - 1e-12) {
                detail = "exact below the three-equation bound at " +
                         std::to_string(p.loss_db) + " dB";
                return false;
            }
            for (BoundMethod m : {BoundMethod::B124, BoundMethod::B134, BoundMethod::B234,
                                  BoundMethod::B14, BoundMethod::BAlpha}) {
                if (b123 < p.s11(m).value - 1e-12) {
                    detail = std::string("123 below ") + to_string(m) + " at " +
                             std::to_string(p.loss_db) + " dB";
                    return false;
                }
            }
            if (p.e11(BoundMethod::S11Exact).value > p.e11(BoundMethod::B123).value + 1e-12) {
                detail = "exact error bound above the simple one at " +
                         std::to_string(p.loss_db) + " dB";
                return false;
            }
        }
        return true;
    });

    criterion("3 validity against simulated truth", [&](std::string& detail) {
        for (const auto& r : rows) {
            const auto& p = r.point;
            for (BoundMethod m : kYieldMethods) {
                if (p.s11(m).value > p.s11_true + 1e-12) {
                    detail = std::string(to_string(m)) + " exceeds the true yield at " +
                             std::to_string(p.loss_db) + " dB";
                    return false;
                }
            }
            for (BoundMethod m : {BoundMethod::B123, BoundMethod::S11Exact}) {
                if (p.e11(m).value < p.e11_true - 1e-12) {
                    detail = "error bound below the true error at " +
                             std::to_string(p.loss_db) + " dB";
                    return false;
                }
            }
        }
        return true;
    });

    criterion("4 solver equals LP enumeration", [](std::string& detail) {
        std::mt19937_64 rng(0xace5);
        std::uniform_real_distribution<double> u_decoy(0.05, 0.2), u_signal(0.3, 0.9),
            u_loss(0.0, 40.0);
        double worst = 0.0;
        for (int it = 0; it < 200; ++it) {
            const auto alice =
                ThreeIntensitySource::poisson(u_decoy(rng), u_signal(rng), 40, "A");
            const auto bob = ThreeIntensitySource::poisson(u_decoy(rng), u_signal(rng), 40, "B");
            const auto ym = simulate_yield_matrix(testutil::default_channel(u_loss(rng)), 40);
            const auto rg = reduce(compose_observed(alice, bob, ym), alice, bob);
            const auto c = cop_coefficients(rg, alice, bob);

            TruncatedLp lp2;
            lp2.offset = c.s22_star;
            for (int m = 2; m <= 4; ++m) {
                for (int n = 2; n <= 4; ++n) {
                    if (m == 2 && n == 2) continue;
                    lp2.objective.push_back(c.f11(m, n));
                    lp2.constraint.push_back(c.f22(m, n));
                }
            }
            const double lp_value = c.s11_star + vertex_enumerate(lp2, OptSense::Min).value;
            const double greedy = s11_exact_min_truncated(c, 4).bound.raw;
            worst = std::max(worst, std::abs(lp_value - greedy));

            double expected = c.t11_star;
            for (bool row : {true, false}) {
                TruncatedLp lp1;
                lp1.offset = row ? c.t12_star : c.t21_star;
                for (int k = 3; k <= 12; ++k) {
                    lp1.objective.push_back(row ? c.f11(1, k) : c.f11(k, 1));
                    lp1.constraint.push_back(row ? c.f12(1, k) : c.f21(k, 1));
                }
                if (lp1.offset > 0.0) {
                    expected += vertex_enumerate(lp1, OptSense::Max).value;
                }
            }
            const double greedy1 = t11_exact_max_truncated(c, 12).bound.raw;
            worst = std::max(worst, std::abs(expected - greedy1));
        }
        if (worst > 1e-9) {
            detail = "worst gap " + std::to_string(worst);
            return false;
        }
        detail = "worst gap " + format_double(worst) + " over 200 instances";
        return true;
    });

    criterion("5 tie-break invariance", [](std::string& detail) {
        for (double loss : {5.0, 20.0, 35.0}) {
            const auto pl = testutil::make_pipeline(loss);  // symmetric: every (m,n)/(n,m) ties
            const auto c = cop_coefficients(pl.rg_z, pl.alice, pl.bob);
            const double a = s11_exact_min(c, TieBreak::LexMN).bound.raw;
            const double b = s11_exact_min(c, TieBreak::LexNM).bound.raw;
            if (std::abs(a - b) >= 1e-12) {
                detail = "yield bound differs across tie orders at " + std::to_string(loss);
                return false;
            }
            const double ta = t11_exact_max(c, TieBreak::LexMN).bound.raw;
            const double tb = t11_exact_max(c, TieBreak::LexNM).bound.raw;
            if (std::abs(ta - tb) >= 1e-12) {
                detail = "error bound differs across tie orders at " + std::to_string(loss);
                return false;
            }
        }
        return true;
    });

    criterion("6 key-rate dominance and range", [&](std::string& detail) {
        const BoundMethod chain[] = {BoundMethod::S11Exact, BoundMethod::B123, BoundMethod::B14,
                                     BoundMethod::BAlpha};
        double last_secure_exact = -1.0, last_secure_14 = -1.0;
        std::array<double, 4> prev{};
        bool first = true;
        for (const auto& r : rows) {
            const auto& p = r.point;
            bool usable = true;
            for (BoundMethod m : chain) usable = usable && p.e11(m).value < 0.5;
            if (!usable) continue;
            std::array<double, 4> rates{};
            for (int i = 0; i < 4; ++i) rates[i] = rate_for(p, chain[i], 1.16);
            for (int i = 0; i + 1 < 4; ++i) {
                if (rates[i] < rates[i + 1] - 1e-12) {
                    detail = std::string("rate ordering broken between ") +
                             to_string(chain[i]) + " and " + to_string(chain[i + 1]) + " at " +
                             std::to_string(p.loss_db) + " dB";
                    return false;
                }
            }
            if (!first) {
                for (int i = 0; i < 4; ++i) {
                    if (rates[i] > prev[i] + 1e-15) {
                        detail = std::string("rate of ") + to_string(chain[i]) +
                                 " increased with loss at " + std::to_string(p.loss_db) + " dB";
                        return false;
                    }
                }
            }
            prev = rates;
            first = false;
            if (rates[0] > 0.0) last_secure_exact = p.loss_db;
            if (rates[2] > 0.0) last_secure_14 = p.loss_db;
        }
        if (last_secure_exact < last_secure_14) {
            detail = "secure range of the exact method is shorter";
            return false;
        }
        detail = "secure to " + std::to_string(last_secure_exact) + " dB (exact), " +
                 std::to_string(last_secure_14) + " dB (two-equation)";
        return true;
    });

    criterion("7 golden twenty-decibel regression", [](std::string& detail) {
        const auto pl = testutil::make_pipeline(20.0);
        const double S[3][3] = {{golden::kS_oo, golden::kS_ox, golden::kS_oy},
                                {golden::kS_xo, golden::kS_xx, golden::kS_xy},
                                {golden::kS_yo, golden::kS_yx, golden::kS_yy}};
        const double T[3][3] = {{golden::kT_oo, golden::kT_ox, golden::kT_oy},
                                {golden::kT_xo, golden::kT_xx, golden::kT_xy},
                                {golden::kT_yo, golden::kT_yx, golden::kT_yy}};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                if (!close_rel(pl.obs_z.S[i][j], S[i][j], 1e-10) ||
                    !close_rel(pl.obs_z.T[i][j], T[i][j], 1e-10) ||
                    !close_rel(pl.obs_x.S[i][j], S[i][j], 1e-10)) {
                    detail = "composed gain drifted in cell " + std::to_string(3 * i + j);
                    return false;
                }
            }
        }
        if (!check_rel(detail, "tilde_s_xx", pl.rg_z.s_xx, golden::kTildeS_xx, 1e-10) ||
            !check_rel(detail, "tilde_s_xy", pl.rg_z.s_xy, golden::kTildeS_xy, 1e-10) ||
            !check_rel(detail, "tilde_s_yy", pl.rg_z.s_yy, golden::kTildeS_yy, 1e-10) ||
            !check_rel(detail, "tilde_t_xx", pl.rg_z.t_xx, golden::kTildeT_xx, 1e-10) ||
            !check_rel(detail, "tilde_t_yy", pl.rg_z.t_yy, golden::kTildeT_yy, 1e-10)) {
            return false;
        }
        PointEstimates p = estimate_point(pl.obs_z, pl.obs_x, pl.alice, pl.bob);
        p.s11_true = pl.s11_true;
        p.e11_true = pl.e11_true;
        const struct {
            const char* name;
            double have;
            double want;
        } pins[] = {
            {"s11_true", pl.s11_true, golden::kS11True},
            {"e11_true", pl.e11_true, golden::kE11True},
            {"s11_123", p.s11(BoundMethod::B123).raw, golden::kS11B123},
            {"s11_124", p.s11(BoundMethod::B124).raw, golden::kS11B124},
            {"s11_134", p.s11(BoundMethod::B134).raw, golden::kS11B134},
            {"s11_234", p.s11(BoundMethod::B234).raw, golden::kS11B234},
            {"s11_14", p.s11(BoundMethod::B14).raw, golden::kS11B14},
            {"s11_alpha", p.s11(BoundMethod::BAlpha).raw, golden::kS11BAlpha},
            {"s11_exact", p.s11(BoundMethod::S11Exact).raw, golden::kS11Exact},
            {"e11_simple", p.e11(BoundMethod::B123).raw, golden::kE11Simple},
            {"e11_exact", p.e11(BoundMethod::S11Exact).raw, golden::kE11Exact},
            {"rate_exact", rate_for(p, BoundMethod::S11Exact, 1.16), golden::kRExact},
            {"rate_123", rate_for(p, BoundMethod::B123, 1.16), golden::kR123},
            {"rate_14", rate_for(p, BoundMethod::B14, 1.16), golden::kR14},
            {"rate_alpha", rate_for(p, BoundMethod::BAlpha, 1.16), golden::kRAlpha},
            {"rate_asymptotic", rate_asymptotic(p, 1.16), golden::kRAsymptotic},
        };
        for (const auto& pin : pins) {
            if (!check_rel(detail, pin.name, pin.have, pin.want, 1e-10)) return false;
        }
        return true;
    });

    criterion("8 sweep determinism", [](std::string& detail) {
        namespace fs = std::filesystem;
        const fs::path dir = fs::temp_directory_path() / "mdiqkd_acceptance_determinism";
        fs::remove_all(dir);
        RunConfig cfg;
        cfg.out_dir = (dir / "first").string();
        cfg.jobs = 1;
        if (run_sweep(cfg) != 0) {
            detail = "first sweep failed";
            return false;
        }
        cfg.out_dir = (dir / "second").string();
        cfg.jobs = 4;
        if (run_sweep(cfg) != 0) {
            detail = "second sweep failed";
            return false;
        }
        const auto slurp = [](const fs::path& p) {
            std::ifstream in(p, std::ios::binary);
            std::ostringstream os;
            os << in.rdbuf();
            return os.str();
        };
        const std::string a = slurp(dir / "first" / "sweep.csv");
        if (a.empty() || a != slurp(dir / "second" / "sweep.csv")) {
            detail = "sweep.csv differs between runs";
            return false;
        }
        return true;
    });

    std::printf("%s: %d criterion(s) failed\n", g_failures == 0 ? "OK" : "FAILED", g_failures);
    return g_failures;
}
