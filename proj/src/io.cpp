#include "mdiqkd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "mdiqkd/errors.hpp"

namespace mdiqkd {

std::string format_double(double x) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc()) throw IoError("failed to format number");
    return std::string(buf, ptr);
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    for (char ch : line) {
        if (ch == ',') {
            fields.push_back(cur);
            cur.clear();
        } else if (ch != '\r') {
            cur.push_back(ch);
        }
    }
    fields.push_back(cur);
    return fields;
}

double parse_number(const std::string& s, int row, int col) {
    try {
        size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("row " + std::to_string(row) + ", column " + std::to_string(col) +
                         ": '" + s + "' is not a number");
    }
}

}  // namespace

void write_observed_csv(const std::string& path, const std::vector<ObservedStatistics>& stats) {
    auto out = open_out(path);
    out << "alice,bob,basis,sent,success,error\n";
    for (const auto& obs : stats) {
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                out << to_string(static_cast<IntensityTag>(i)) << ','
                    << to_string(static_cast<IntensityTag>(j)) << ',' << to_string(obs.basis)
                    << ",1," << format_double(obs.S[i][j]) << ',' << format_double(obs.T[i][j])
                    << '\n';
            }
        }
    }
}

std::map<Basis, ObservedStatistics> read_observed_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::string line;
    if (!std::getline(in, line)) throw ParseError("empty file '" + path + "'");
    if (split_csv_line(line) !=
        std::vector<std::string>{"alice", "bob", "basis", "sent", "success", "error"}) {
        throw ParseError("unexpected header '" + line + "'");
    }
    std::vector<CountRecord> records;
    int row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (line.empty()) continue;
        const auto f = split_csv_line(line);
        if (f.size() != 6) {
            throw ParseError("row " + std::to_string(row) + ": expected 6 fields, got " +
                             std::to_string(f.size()));
        }
        CountRecord r{};
        try {
            r.alice = intensity_from_string(f[0]);
            r.bob = intensity_from_string(f[1]);
            r.basis = basis_from_string(f[2]);
        } catch (const ParseError& e) {
            throw ParseError("row " + std::to_string(row) + ": " + e.what());
        }
        r.sent = parse_number(f[3], row, 4);
        r.success = parse_number(f[4], row, 5);
        r.error = parse_number(f[5], row, 6);
        records.push_back(r);
    }
    std::map<Basis, ObservedStatistics> out;
    for (Basis b : {Basis::Z, Basis::X}) {
        bool has = false;
        for (const auto& r : records) has = has || r.basis == b;
        if (has) out.emplace(b, from_counts(records, b));
    }
    if (out.empty()) throw IncompleteData("no statistics rows in '" + path + "'");
    return out;
}

void write_yield_csv(const std::string& path, const std::vector<YieldMatrix>& matrices) {
    auto out = open_out(path);
    out << "m,n,y,t,basis\n";
    for (const auto& ym : matrices) {
        for (int m = 0; m <= ym.k_max(); ++m) {
            for (int n = 0; n <= ym.k_max(); ++n) {
                out << m << ',' << n << ',' << format_double(ym.yield(m, n)) << ','
                    << format_double(ym.error_yield(m, n)) << ',' << to_string(ym.basis())
                    << '\n';
            }
        }
    }
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    auto out = open_out(path);
    out << "loss_db,s11_123,s11_124,s11_134,s11_234,s11_14,s11_alpha,s11_exact,s11_true,"
           "e11_simple,e11_exact,e11_true,R_method,R_asymptotic,secure\n";
    for (const auto& r : rows) {
        out << format_double(r.point.loss_db);
        if (!r.error.empty()) {
            for (int i = 0; i < 13; ++i) out << ",nan";
            out << ",0\n";
            continue;
        }
        for (BoundMethod m : kYieldMethods) out << ',' << format_double(r.point.s11(m).value);
        out << ',' << format_double(r.point.s11_true);
        out << ',' << format_double(r.point.e11(BoundMethod::B123).value);
        out << ',' << format_double(r.point.e11(BoundMethod::S11Exact).value);
        out << ',' << format_double(r.point.e11_true);
        out << ',' << format_double(r.r_method);
        out << ',' << format_double(r.r_asymptotic);
        out << ',' << (r.secure ? 1 : 0) << '\n';
    }
}

void write_optimize_csv(const std::string& path, const std::vector<OptimizeRow>& rows) {
    auto out = open_out(path);
    out << "loss_db,method,mu2_opt,r_opt\n";
    for (const auto& r : rows) {
        out << format_double(r.loss_db) << ',' << to_string(r.method) << ','
            << format_double(r.mu2_opt) << ',' << format_double(r.r_opt) << '\n';
    }
}

nlohmann::json to_json(const PhotonNumberDistribution& d) {
    return {{"probs", d.probs()}, {"tail_mass", d.tail_mass()}, {"mean", d.mean()}};
}

PhotonNumberDistribution distribution_from_json(const nlohmann::json& j) {
    if (!j.contains("probs")) throw ParseError("distribution JSON lacks 'probs'");
    std::vector<double> probs = j.at("probs").get<std::vector<double>>();
    std::optional<double> mean;
    if (j.contains("mean")) mean = j.at("mean").get<double>();
    return PhotonNumberDistribution::custom(std::move(probs), mean);
}

nlohmann::json to_json(const ObservedStatistics& obs) {
    nlohmann::json cells = nlohmann::json::object();
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const std::string key = std::string(to_string(static_cast<IntensityTag>(i))) +
                                    to_string(static_cast<IntensityTag>(j));
            cells[key] = {{"S", obs.S[i][j]}, {"T", obs.T[i][j]}};
        }
    }
    return {{"basis", to_string(obs.basis)}, {"cells", cells}};
}

nlohmann::json to_json(const AnalyticBound& b) {
    return {{"method", to_string(b.method)},
            {"value", b.value},
            {"raw", b.raw},
            {"clamped", b.clamped}};
}

namespace {
const char* kind_name(SaturatedEntry::Kind k) {
    switch (k) {
        case SaturatedEntry::Kind::Cell: return "cell";
        case SaturatedEntry::Kind::RowTail: return "row_tail";
        case SaturatedEntry::Kind::ColTail: return "col_tail";
        default: return "corner_tail";
    }
}

nlohmann::json entry_json(const SaturatedEntry& e) {
    return {{"kind", kind_name(e.kind)}, {"m", e.m}, {"n", e.n}};
}
}  // namespace

nlohmann::json to_json(const KnapsackSolution& s) {
    const char* status = "solved";
    switch (s.status) {
        case KnapsackSolution::Status::Solved: status = "solved"; break;
        case KnapsackSolution::Status::AllSaturated: status = "all_saturated"; break;
        case KnapsackSolution::Status::ZeroBudget: status = "zero_budget"; break;
        case KnapsackSolution::Status::FallbackAnalytic: status = "fallback_analytic"; break;
    }
    nlohmann::json sat = nlohmann::json::array();
    for (const auto& e : s.saturated) sat.push_back(entry_json(e));
    nlohmann::json j = {{"status", status},
                        {"saturated", sat},
                        {"fractional_weight", s.fractional_weight},
                        {"residual", s.residual},
                        {"threshold_ratio", s.threshold_ratio}};
    if (s.fractional) j["fractional"] = entry_json(*s.fractional);
    return j;
}

nlohmann::json to_json(const PointEstimates& p, bool with_truth) {
    nlohmann::json s11 = nlohmann::json::object();
    nlohmann::json e11 = nlohmann::json::object();
    for (BoundMethod m : kYieldMethods) {
        s11[to_string(m)] = to_json(p.s11(m));
        e11[to_string(m)] = to_json(p.e11(m));
    }
    nlohmann::json j = {{"loss_db", p.loss_db},
                        {"s11", s11},
                        {"e11", e11},
                        {"s_yy_z", p.s_yy_z},
                        {"e_yy_z", p.e_yy_z}};
    if (with_truth) {
        j["s11_true"] = p.s11_true;
        j["e11_true"] = p.e11_true;
    }
    return j;
}

nlohmann::json to_json(const ValidationReport& r) {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"value", c.value},
                          {"truth", c.truth},
                          {"gap", c.gap},
                          {"direction", c.lower_bound ? "lower" : "upper"},
                          {"pass", c.pass}});
    }
    return {{"all_pass", r.all_pass}, {"checks", checks}};
}

}  // namespace mdiqkd
