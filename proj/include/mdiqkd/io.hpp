#pragma once

#include <map>
#include <string>
#include <vector>

#include "mdiqkd/channel.hpp"
#include "mdiqkd/keyrate.hpp"
#include "mdiqkd/oracle.hpp"
#include "mdiqkd/statistics.hpp"

#include "json.hpp"

namespace mdiqkd {

/// Shortest round-trip decimal rendering of a double (deterministic).
std::string format_double(double x);

// --- CSV surfaces -----------------------------------------------------------

/// Header: alice,bob,basis,sent,success,error with alice/bob in {o,x,y} and
/// basis in {Z,X}.  Counts may be fractional.
void write_observed_csv(const std::string& path, const std::vector<ObservedStatistics>& stats);
std::map<Basis, ObservedStatistics> read_observed_csv(const std::string& path);

/// Header: m,n,y,t,basis.
void write_yield_csv(const std::string& path, const std::vector<YieldMatrix>& matrices);

/// One row per loss point with every bound, the truth, the requested method's
/// rate and the infinite-decoy rate.
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);

/// Header: loss_db,method,mu2_opt,r_opt.
struct OptimizeRow {
    double loss_db;
    BoundMethod method;
    double mu2_opt;
    double r_opt;
};
void write_optimize_csv(const std::string& path, const std::vector<OptimizeRow>& rows);

// --- JSON surfaces ----------------------------------------------------------

nlohmann::json to_json(const PhotonNumberDistribution& d);
PhotonNumberDistribution distribution_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ObservedStatistics& obs);
nlohmann::json to_json(const AnalyticBound& b);
nlohmann::json to_json(const KnapsackSolution& s);
nlohmann::json to_json(const PointEstimates& p, bool with_truth);
nlohmann::json to_json(const ValidationReport& r);

}  // namespace mdiqkd
