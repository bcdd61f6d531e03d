#include "mdiqkd/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <thread>

#include "mdiqkd/errors.hpp"
#include "mdiqkd/io.hpp"
#include "mdiqkd/oracle.hpp"
#include "svgplot.hpp"

#include "json.hpp"

namespace mdiqkd {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, const std::vector<std::string>& allowed,
                         const std::string& where) {
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw ConfigError("unknown key '" + key + "' in " + where);
        }
    }
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
    return obj.at(key).get<double>();
}

std::filesystem::path ensure_out_dir(const RunConfig& cfg) {
    std::filesystem::path dir(cfg.out_dir);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw IoError("cannot create output directory '" + cfg.out_dir + "'");
    return dir;
}

std::vector<double> make_grid(double start, double stop, double step, const char* what) {
    if (!(step > 0.0)) throw InvalidGrid(std::string(what) + ": step must be positive");
    if (stop < start) throw InvalidGrid(std::string(what) + ": stop below start");
    const int n = static_cast<int>(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = start + i * step;
    return grid;
}

}  // namespace

std::vector<double> RunConfig::loss_grid() const {
    return make_grid(loss_start_db, loss_stop_db, loss_step_db, "loss grid");
}

std::vector<double> RunConfig::mu2_grid() const {
    const double start = mu2_grid_start > 0.0 ? mu2_grid_start : mu1 + mu2_grid_step;
    return make_grid(start, mu2_grid_stop, mu2_grid_step, "signal-intensity grid");
}

ThreeIntensitySource RunConfig::alice() const {
    return ThreeIntensitySource::poisson(mu1, mu2, k_max, "Alice");
}

ThreeIntensitySource RunConfig::bob() const {
    return ThreeIntensitySource::poisson(nu1, nu2, k_max, "Bob");
}

RunConfig config_from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw ConfigError("config root must be an object");
    reject_unknown_keys(j,
                        {"channel", "sources", "f_ec", "k_max", "loss_grid", "method",
                         "mu2_grid", "out_dir", "jobs", "plot"},
                        "config");
    RunConfig cfg;
    if (j.contains("channel")) {
        const auto& c = j.at("channel");
        reject_unknown_keys(c,
                            {"total_loss_db", "detector_efficiency", "dark_count",
                             "misalignment", "background_error"},
                            "channel");
        cfg.channel.total_loss_db = get_num(c, "total_loss_db", cfg.channel.total_loss_db);
        cfg.channel.detector_efficiency =
            get_num(c, "detector_efficiency", cfg.channel.detector_efficiency);
        cfg.channel.dark_count = get_num(c, "dark_count", cfg.channel.dark_count);
        cfg.channel.misalignment = get_num(c, "misalignment", cfg.channel.misalignment);
        cfg.channel.background_error =
            get_num(c, "background_error", cfg.channel.background_error);
    }
    if (j.contains("sources")) {
        const auto& s = j.at("sources");
        reject_unknown_keys(s, {"mu1", "mu2", "nu1", "nu2"}, "sources");
        cfg.mu1 = get_num(s, "mu1", cfg.mu1);
        cfg.mu2 = get_num(s, "mu2", cfg.mu2);
        cfg.nu1 = get_num(s, "nu1", cfg.mu1);
        cfg.nu2 = get_num(s, "nu2", cfg.mu2);
        if (!s.contains("nu1")) cfg.nu1 = cfg.mu1;
        if (!s.contains("nu2")) cfg.nu2 = cfg.mu2;
    }
    cfg.f_ec = get_num(j, "f_ec", cfg.f_ec);
    cfg.k_max = static_cast<int>(get_num(j, "k_max", cfg.k_max));
    if (j.contains("loss_grid")) {
        const auto& g = j.at("loss_grid");
        reject_unknown_keys(g, {"start_db", "stop_db", "step_db"}, "loss_grid");
        cfg.loss_start_db = get_num(g, "start_db", cfg.loss_start_db);
        cfg.loss_stop_db = get_num(g, "stop_db", cfg.loss_stop_db);
        cfg.loss_step_db = get_num(g, "step_db", cfg.loss_step_db);
    }
    if (j.contains("method")) {
        if (!j.at("method").is_string()) throw ConfigError("'method' must be a string");
        cfg.method = method_from_string(j.at("method").get<std::string>());
    }
    if (j.contains("mu2_grid")) {
        const auto& g = j.at("mu2_grid");
        reject_unknown_keys(g, {"start", "stop", "step"}, "mu2_grid");
        cfg.mu2_grid_start = get_num(g, "start", cfg.mu2_grid_start);
        cfg.mu2_grid_stop = get_num(g, "stop", cfg.mu2_grid_stop);
        cfg.mu2_grid_step = get_num(g, "step", cfg.mu2_grid_step);
    }
    if (j.contains("out_dir")) {
        if (!j.at("out_dir").is_string()) throw ConfigError("'out_dir' must be a string");
        cfg.out_dir = j.at("out_dir").get<std::string>();
    }
    cfg.jobs = static_cast<int>(get_num(j, "jobs", cfg.jobs));
    if (j.contains("plot")) {
        if (!j.at("plot").is_boolean()) throw ConfigError("'plot' must be a boolean");
        cfg.plot = j.at("plot").get<bool>();
    }
    if (cfg.k_max < 2) throw ConfigError("k_max must be at least 2");
    if (cfg.jobs < 1) throw ConfigError("jobs must be at least 1");
    try {
        cfg.channel.validate();
    } catch (const InvalidParameter& e) {
        throw ConfigError(e.what());
    }
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json_text(text);
}

int run_simulate(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const auto alice = cfg.alice();
    const auto bob = cfg.bob();
    ChannelParams params = cfg.channel;
    params.basis = Basis::Z;
    const YieldMatrix ym_z = simulate_yield_matrix(params, cfg.k_max);
    params.basis = Basis::X;
    const YieldMatrix ym_x = simulate_yield_matrix(params, cfg.k_max);
    write_observed_csv((dir / "observed.csv").string(),
                       {compose_observed(alice, bob, ym_z), compose_observed(alice, bob, ym_x)});
    write_yield_csv((dir / "yields.csv").string(), {ym_z, ym_x});
    std::printf("wrote %s and %s\n", (dir / "observed.csv").c_str(),
                (dir / "yields.csv").c_str());
    return 0;
}

int run_bound(const RunConfig& cfg, const std::string& input_csv, bool with_truth) {
    const auto dir = ensure_out_dir(cfg);
    const auto stats = read_observed_csv(input_csv);
    if (!stats.count(Basis::Z) || !stats.count(Basis::X)) {
        throw IncompleteData("bound command needs both Z- and X-basis statistics");
    }
    const auto alice = cfg.alice();
    const auto bob = cfg.bob();
    PointEstimates p = estimate_point(stats.at(Basis::Z), stats.at(Basis::X), alice, bob);
    p.loss_db = cfg.channel.total_loss_db;
    if (with_truth) {
        ChannelParams params = cfg.channel;
        params.basis = Basis::Z;
        const auto [s11_true, e11_true] =
            asymptotic_reference(simulate_yield_matrix(params, cfg.k_max));
        p.s11_true = s11_true;
        p.e11_true = e11_true;
    }
    const json report = to_json(p, with_truth);
    std::ofstream out(dir / "bounds.json", std::ios::binary);
    if (!out) throw IoError("cannot write bounds.json");
    out << report.dump(2) << '\n';

    std::printf("%-10s %14s %14s %s\n", "method", "s11_lower", "e11_upper", "notes");
    for (BoundMethod m : kYieldMethods) {
        std::printf("%-10s %14.8e %14.8e %s\n", to_string(m), p.s11(m).value, p.e11(m).value,
                    p.s11(m).clamped ? "clamped" : "");
    }
    if (with_truth) {
        std::printf("%-10s %14.8e %14.8e\n", "true", p.s11_true, p.e11_true);
    }
    return 0;
}

namespace {

void write_sweep_plots(const RunConfig& cfg, const std::filesystem::path& dir,
                       const std::vector<SweepRow>& rows) {
    const std::vector<std::pair<BoundMethod, const char*>> shown = {
        {BoundMethod::S11Exact, "exact"},
        {BoundMethod::B123, "123"},
        {BoundMethod::B14, "14"},
        {BoundMethod::BAlpha, "alpha"},
    };
    std::vector<PlotSeries> s11_series, rel_series, e11_series, rate_series;
    for (auto [m, name] : shown) {
        PlotSeries s{name, {}}, rel{name, {}}, rate{name, {}};
        for (const auto& r : rows) {
            if (!r.error.empty()) continue;
            s.points.emplace_back(r.point.loss_db, r.point.s11(m).value);
            rel.points.emplace_back(r.point.loss_db, r.point.s11(m).value / r.point.s11_true);
            rate.points.emplace_back(r.point.loss_db, rate_for(r.point, m, cfg.f_ec));
        }
        s11_series.push_back(std::move(s));
        rel_series.push_back(std::move(rel));
        rate_series.push_back(std::move(rate));
    }
    PlotSeries truth{"asymptotic", {}}, rate_truth{"asymptotic", {}};
    PlotSeries e_simple{"e11 simple", {}}, e_exact{"e11 exact", {}}, e_truth{"e11 true", {}};
    for (const auto& r : rows) {
        if (!r.error.empty()) continue;
        truth.points.emplace_back(r.point.loss_db, r.point.s11_true);
        rate_truth.points.emplace_back(r.point.loss_db, r.r_asymptotic);
        e_simple.points.emplace_back(r.point.loss_db, r.point.e11(BoundMethod::B123).value);
        e_exact.points.emplace_back(r.point.loss_db, r.point.e11(BoundMethod::S11Exact).value);
        e_truth.points.emplace_back(r.point.loss_db, r.point.e11_true);
    }
    s11_series.push_back(truth);
    rate_series.push_back(rate_truth);
    e11_series = {e_simple, e_exact, e_truth};

    write_svg_chart((dir / "s11.svg").string(), "s11 lower bounds", "total loss (dB)", "s11",
                    s11_series, true);
    write_svg_chart((dir / "s11_relative.svg").string(), "s11 bound / asymptotic value",
                    "total loss (dB)", "relative s11", rel_series, false);
    write_svg_chart((dir / "e11.svg").string(), "e11 upper bounds", "total loss (dB)", "e11",
                    e11_series, false);
    write_svg_chart((dir / "rate.svg").string(), "key rate", "total loss (dB)", "R",
                    rate_series, true);
}

}  // namespace

int run_sweep(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const auto rows = sweep_loss(cfg.channel, cfg.loss_grid(), cfg.alice(), cfg.bob(),
                                 cfg.method, cfg.f_ec, cfg.k_max, cfg.jobs);
    write_sweep_csv((dir / "sweep.csv").string(), rows);
    if (cfg.plot) write_sweep_plots(cfg, dir, rows);
    std::printf("wrote %s (%zu rows)\n", (dir / "sweep.csv").c_str(), rows.size());
    return 0;
}

int run_optimize(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    const std::vector<BoundMethod> methods = {BoundMethod::S11Exact, BoundMethod::B123,
                                              BoundMethod::B14, BoundMethod::BAlpha};
    const auto losses = cfg.loss_grid();
    const auto grid = cfg.mu2_grid();
    const auto builder = poisson_source_builder(cfg.k_max);

    std::vector<OptimizeRow> rows(losses.size() * methods.size());
    const auto eval = [&](size_t li) {
        for (size_t mi = 0; mi < methods.size(); ++mi) {
            const auto res = optimize_signal_intensity(cfg.channel, losses[li], cfg.mu1, grid,
                                                       builder, methods[mi], cfg.f_ec,
                                                       cfg.k_max);
            rows[li * methods.size() + mi] =
                OptimizeRow{losses[li], methods[mi], res.mu2_opt, res.r_opt};
        }
    };
    const int n_threads = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(losses.size())));
    if (n_threads == 1) {
        for (size_t i = 0; i < losses.size(); ++i) eval(i);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < n_threads; ++t) {
            pool.emplace_back([&, t] {
                for (size_t i = t; i < losses.size(); i += n_threads) eval(i);
            });
        }
        for (auto& th : pool) th.join();
    }
    write_optimize_csv((dir / "optimize.csv").string(), rows);
    if (cfg.plot) {
        std::vector<PlotSeries> r_series, mu_series;
        for (size_t mi = 0; mi < methods.size(); ++mi) {
            PlotSeries r{to_string(methods[mi]), {}}, mu{to_string(methods[mi]), {}};
            for (size_t li = 0; li < losses.size(); ++li) {
                const auto& row = rows[li * methods.size() + mi];
                r.points.emplace_back(row.loss_db, row.r_opt);
                mu.points.emplace_back(row.loss_db, row.mu2_opt);
            }
            r_series.push_back(std::move(r));
            mu_series.push_back(std::move(mu));
        }
        write_svg_chart((dir / "optimal_rate.svg").string(), "optimal key rate",
                        "total loss (dB)", "R", r_series, true);
        write_svg_chart((dir / "optimal_mu2.svg").string(), "optimal signal intensity",
                        "total loss (dB)", "mu2", mu_series, false);
    }
    std::printf("wrote %s (%zu rows)\n", (dir / "optimize.csv").c_str(), rows.size());
    return 0;
}

int run_validate(const RunConfig& cfg) {
    const auto dir = ensure_out_dir(cfg);
    bool ok = true;
    json report;

    // bound validity and ordering across a coarse loss sweep
    const auto losses = make_grid(cfg.loss_start_db, cfg.loss_stop_db,
                                  std::max(cfg.loss_step_db, 5.0), "loss grid");
    const auto rows = sweep_loss(cfg.channel, losses, cfg.alice(), cfg.bob(), cfg.method,
                                 cfg.f_ec, cfg.k_max, cfg.jobs);
    json sweep_checks = json::array();
    for (const auto& r : rows) {
        if (!r.error.empty()) {
            ok = false;
            sweep_checks.push_back({{"loss_db", r.point.loss_db}, {"error", r.error}});
            continue;
        }
        std::vector<AnalyticBound> all;
        for (BoundMethod m : kYieldMethods) all.push_back(r.point.s11(m));
        all.push_back(r.point.e11(BoundMethod::B123));
        all.push_back(r.point.e11(BoundMethod::S11Exact));
        const auto rep = validate_bounds(all, r.point.s11_true, r.point.e11_true);
        const double s_exact = r.point.s11(BoundMethod::S11Exact).value;
        bool ordering = true;
        for (BoundMethod m : kYieldMethods) {
            ordering = ordering && s_exact >= r.point.s11(m).value - 1e-12;
        }
        ordering = ordering && r.point.e11(BoundMethod::S11Exact).value <=
                                   r.point.e11(BoundMethod::B123).value + 1e-12;
        ok = ok && rep.all_pass && ordering;
        sweep_checks.push_back({{"loss_db", r.point.loss_db},
                                {"validity", to_json(rep)},
                                {"ordering_pass", ordering}});
        std::printf("loss %5.1f dB  validity %s  ordering %s\n", r.point.loss_db,
                    rep.all_pass ? "pass" : "FAIL", ordering ? "pass" : "FAIL");
    }
    report["sweep"] = sweep_checks;

    // solver equivalence against vertex enumeration on truncated instances
    std::mt19937_64 rng(0x5eed0001);
    std::uniform_real_distribution<double> u_decoy(0.05, 0.2), u_signal(0.3, 0.9),
        u_loss(0.0, 40.0);
    int equiv_failures = 0;
    const int n_instances = 25;
    double worst = 0.0;
    for (int it = 0; it < n_instances; ++it) {
        const auto alice =
            ThreeIntensitySource::poisson(u_decoy(rng), u_signal(rng), cfg.k_max, "Alice");
        const auto bob =
            ThreeIntensitySource::poisson(u_decoy(rng), u_signal(rng), cfg.k_max, "Bob");
        ChannelParams params = cfg.channel;
        params.total_loss_db = u_loss(rng);
        const auto ym = simulate_yield_matrix(params, cfg.k_max);
        const auto rg = reduce(compose_observed(alice, bob, ym), alice, bob);
        const auto c = cop_coefficients(rg, alice, bob);

        TruncatedLp lp;
        lp.offset = c.s22_star;
        for (int m = 2; m <= 4; ++m) {
            for (int n = 2; n <= 4; ++n) {
                if (m == 2 && n == 2) continue;
                lp.objective.push_back(c.f11(m, n));
                lp.constraint.push_back(c.f22(m, n));
            }
        }
        const double lp_min = c.s11_star + vertex_enumerate(lp, OptSense::Min).value;
        const double greedy = s11_exact_min_truncated(c, 4).bound.raw;
        const double diff = std::abs(lp_min - greedy);
        worst = std::max(worst, diff);
        if (diff > 1e-9) {
            ++equiv_failures;
            ok = false;
        }
    }
    std::printf("solver vs enumeration: %d/%d instances agree (worst gap %.3e)\n",
                n_instances - equiv_failures, n_instances, worst);
    report["oracle_equivalence"] = {{"instances", n_instances},
                                    {"failures", equiv_failures},
                                    {"worst_gap", worst}};
    report["all_pass"] = ok;

    std::ofstream out(dir / "validate.json", std::ios::binary);
    if (!out) throw IoError("cannot write validate.json");
    out << report.dump(2) << '\n';
    std::printf("%s\n", ok ? "all checks passed" : "validation FAILED");
    return ok ? 0 : 4;
}

}  // namespace mdiqkd
