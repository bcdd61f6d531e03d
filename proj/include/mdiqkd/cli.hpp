#pragma once

#include <optional>
#include <string>
#include <vector>

#include "mdiqkd/channel.hpp"
#include "mdiqkd/keyrate.hpp"

namespace mdiqkd {

/// Run configuration shared by every command.  Defaults reproduce the
/// standard simulation setting: e0 = 0.5, ed = 1.5%, pd = 3e-6, f = 1.16,
/// decoy 0.1 and signal 0.5 on both sides.
struct RunConfig {
    ChannelParams channel;      // loss field acts as the single-point loss
    double mu1 = 0.1;           // Alice decoy intensity
    double mu2 = 0.5;           // Alice signal intensity
    double nu1 = 0.1;           // Bob decoy intensity
    double nu2 = 0.5;           // Bob signal intensity
    double f_ec = 1.16;
    int k_max = 40;
    double loss_start_db = 0.0;
    double loss_stop_db = 40.0;
    double loss_step_db = 0.5;
    BoundMethod method = BoundMethod::S11Exact;
    double mu2_grid_start = 0.0;  // 0 means mu1 + mu2_grid_step
    double mu2_grid_stop = 1.0;
    double mu2_grid_step = 0.01;
    std::string out_dir = "out";
    int jobs = 1;
    bool plot = false;

    std::vector<double> loss_grid() const;
    std::vector<double> mu2_grid() const;
    ThreeIntensitySource alice() const;
    ThreeIntensitySource bob() const;
};

/// Parses a JSON config file; unknown keys are rejected.
RunConfig load_config(const std::string& path);
/// Parses a JSON config object; unknown keys are rejected.
RunConfig config_from_json_text(const std::string& text);

/// Command entry points used by the executable; each returns a process exit
/// code (0 success, 2 config error, 3 data error, 4 validation failure).
int run_simulate(const RunConfig& cfg);
int run_bound(const RunConfig& cfg, const std::string& input_csv, bool with_truth);
int run_sweep(const RunConfig& cfg);
int run_optimize(const RunConfig& cfg);
int run_validate(const RunConfig& cfg);

}  // namespace mdiqkd
