// Command-line front end: simulate observations, estimate bounds, sweep the
// loss range, optimise the signal intensity and self-validate.

#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "mdiqkd/cli.hpp"
#include "mdiqkd/errors.hpp"

namespace {

int classify_exit(const mdiqkd::Error& e) {
    using namespace mdiqkd;
    if (dynamic_cast<const ConfigError*>(&e) || dynamic_cast<const InvalidParameter*>(&e) ||
        dynamic_cast<const InvalidIntensity*>(&e) || dynamic_cast<const InvalidGrid*>(&e) ||
        dynamic_cast<const InvalidDistribution*>(&e) ||
        dynamic_cast<const DecoyConditionViolated*>(&e) ||
        dynamic_cast<const DegenerateDecoyState*>(&e) ||
        dynamic_cast<const DegenerateSourcePair*>(&e)) {
        return 2;
    }
    return 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"three-intensity decoy-state bounds and key rates for MDI-QKD"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<double> loss_db, mu1, mu2;
    std::optional<std::string> method, out_dir;
    std::optional<int> k_max, jobs;
    bool plot = false;
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--loss-db", loss_db, "override the operating loss (dB)");
    app.add_option("--mu1", mu1, "override the decoy intensity (both parties)");
    app.add_option("--mu2", mu2, "override the signal intensity (both parties)");
    app.add_option("--method", method, "bound method: 123, 124, 134, 234, 14, alpha or exact");
    app.add_option("--kmax", k_max, "photon-number truncation");
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--jobs", jobs, "parallel workers for sweeps");
    app.add_flag("--plot", plot, "also emit SVG charts");

    auto* sim = app.add_subcommand("simulate", "write simulated observations and yields");
    sim->fallthrough();
    auto* bound = app.add_subcommand("bound", "estimate bounds from an observations CSV");
    bound->fallthrough();
    std::string input_csv;
    bool with_truth = false;
    bound->add_option("input", input_csv, "observations CSV")->required();
    bound->add_flag("--truth", with_truth,
                    "include the simulated ground truth from the configured channel");
    auto* sweep = app.add_subcommand("sweep", "bounds and key rate across the loss grid");
    sweep->fallthrough();
    auto* optimize = app.add_subcommand("optimize", "optimal signal intensity per loss point");
    optimize->fallthrough();
    auto* validate = app.add_subcommand("validate", "run validity and equivalence checks");
    validate->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        mdiqkd::RunConfig cfg =
            config_path.empty() ? mdiqkd::RunConfig{} : mdiqkd::load_config(config_path);
        if (loss_db) cfg.channel.total_loss_db = *loss_db;
        if (mu1) {
            cfg.mu1 = *mu1;
            cfg.nu1 = *mu1;
        }
        if (mu2) {
            cfg.mu2 = *mu2;
            cfg.nu2 = *mu2;
        }
        if (method) cfg.method = mdiqkd::method_from_string(*method);
        if (k_max) cfg.k_max = *k_max;
        if (out_dir) cfg.out_dir = *out_dir;
        if (jobs) cfg.jobs = *jobs;
        if (plot) cfg.plot = true;
        if (cfg.k_max < 2) throw mdiqkd::ConfigError("k_max must be at least 2");
        if (cfg.jobs < 1) throw mdiqkd::ConfigError("jobs must be at least 1");

        if (sim->parsed()) return mdiqkd::run_simulate(cfg);
        if (bound->parsed()) return mdiqkd::run_bound(cfg, input_csv, with_truth);
        if (sweep->parsed()) return mdiqkd::run_sweep(cfg);
        if (optimize->parsed()) return mdiqkd::run_optimize(cfg);
        if (validate->parsed()) return mdiqkd::run_validate(cfg);
    } catch (const mdiqkd::Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return classify_exit(e);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "unexpected error: %s\n", e.what());
        return 1;
    }
    return 0;
}
