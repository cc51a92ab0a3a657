#include "agora/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <stdexcept>

namespace agora {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void atomic_write(const std::string& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open for writing: " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string trajectory_csv(const std::vector<DiagnosticsRecord>& records, int dim) {
    std::string out = "t,N,M,m0,";
    for (int i = 1; i <= dim; ++i) out += "m1_" + std::to_string(i) + ",";
    out += "m2,V,V_X,D,M1dist,c1_residual\n";
    for (const DiagnosticsRecord& r : records) {
        out += format_double(r.t) + "," + format_double(r.n) + "," + format_double(r.m) + "," +
               format_double(r.m0) + ",";
        for (int i = 0; i < dim; ++i) out += format_double(r.m1[i]) + ",";
        out += format_double(r.m2) + "," + format_double(r.variance) + "," +
               format_double(r.variance_inflow) + "," + format_double(r.dissipation) + "," +
               format_double(r.m1_dist) + "," + format_double(r.c1_residual) + "\n";
    }
    return out;
}

void write_trajectory_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                          int dim) {
    atomic_write(path, trajectory_csv(records, dim));
}

std::string snapshot_csv(const PositionSnapshot& snap, int dim) {
    std::string out = "agent_index,birth_time";
    for (int i = 1; i <= dim; ++i) out += ",x_" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < snap.positions.size(); ++k) {
        out += std::to_string(k) + "," + format_double(snap.birth_times[k]);
        for (int i = 0; i < dim; ++i) out += "," + format_double(snap.positions[k][i]);
        out += "\n";
    }
    return out;
}

void write_snapshot_csv(const std::string& path, const PositionSnapshot& snap, int dim) {
    atomic_write(path, snapshot_csv(snap, dim));
}

std::string measure_csv(const WeightedParticleMeasure& f) {
    std::string out = "weight";
    for (int i = 1; i <= f.dim; ++i) out += ",x_" + std::to_string(i);
    out += "\n";
    for (std::size_t k = 0; k < f.size(); ++k) {
        out += format_double(f.weights[k]);
        for (int i = 0; i < f.dim; ++i) out += "," + format_double(f.atoms[k][i]);
        out += "\n";
    }
    return out;
}

void write_measure_csv(const std::string& path, const WeightedParticleMeasure& f) {
    atomic_write(path, measure_csv(f));
}

nlohmann::json cluster_json(const ClusterReport& report) {
    nlohmann::json j;
    j["J"] = report.count;
    j["masses"] = report.masses;
    auto centers = nlohmann::json::array();
    for (const Vec& c : report.centers) {
        auto v = nlohmann::json::array();
        for (int i = 0; i < c.dim(); ++i) v.push_back(c[i]);
        centers.push_back(v);
    }
    j["centers"] = centers;
    j["min_inter"] = report.min_inter_distance;
    j["max_intra"] = report.max_intra_diameter;
    return j;
}

nlohmann::json record_json(const DiagnosticsRecord& record, int dim) {
    nlohmann::json j;
    j["t"] = record.t;
    j["N"] = record.n;
    j["M"] = record.m;
    j["m0"] = record.m0;
    auto m1 = nlohmann::json::array();
    for (int i = 0; i < dim; ++i) m1.push_back(record.m1[i]);
    j["m1"] = m1;
    j["m2"] = record.m2;
    j["V"] = record.variance;
    j["V_X"] = record.variance_inflow;
    j["D"] = record.dissipation;
    j["M1dist"] = record.m1_dist;
    j["c1_residual"] = record.c1_residual;
    return j;
}

bool c1_holds_heuristic(const std::vector<DiagnosticsRecord>& records) {
    if (records.empty()) return false;
    const DiagnosticsRecord& last = records.back();
    if (!(last.c1_residual < 0.1)) return false;
    double window_start = last.t - 2.0 * std::numbers::pi;
    double lo = last.c1_residual, hi = last.c1_residual;
    for (const DiagnosticsRecord& r : records) {
        if (r.t < window_start) continue;
        lo = std::min(lo, r.c1_residual);
        hi = std::max(hi, r.c1_residual);
    }
    return hi - lo < 0.5;
}

nlohmann::json summary_json(const Scenario& scenario, GrowthRegime regime,
                            const std::vector<DiagnosticsRecord>& records,
                            const ClusterReport& clusters, bool lemma1_bound_ok) {
    if (records.empty()) throw std::invalid_argument("summary_json: no records");
    nlohmann::json j;
    j["scenario"] = scenario.name;
    j["regime"] = to_string(regime);
    j["final"] = record_json(records.back(), scenario.config.dim);
    j["clusters"] = cluster_json(clusters);
    j["checks"] = {{"c1_holds", c1_holds_heuristic(records)},
                   {"lemma1_bound_ok", lemma1_bound_ok}};
    return j;
}

void write_json(const std::string& path, const nlohmann::json& doc) {
    atomic_write(path, doc.dump(2) + "\n");
}

void write_series_dat(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("write_series_dat: size mismatch");
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += format_double(xs[i]) + " " + format_double(ys[i]) + "\n";
    atomic_write(path, out);
}

}  // namespace agora
