#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "agora/diagnostics.hpp"
#include "agora/kinetic.hpp"
#include "agora/micro.hpp"
#include "agora/scenario.hpp"

namespace agora {

/// Writes content to a sibling temp file and renames it over the target, so a
/// partial file never appears at the declared path.
void atomic_write(const std::string& path, const std::string& content);

/// Time-series CSV, header: t,N,M,m0,m1_1..m1_d,m2,V,V_X,D,M1dist,c1_residual.
/// All numbers printed as shortest round-trip decimals (reruns are
/// byte-identical for identical config + seed).
std::string trajectory_csv(const std::vector<DiagnosticsRecord>& records, int dim);
void write_trajectory_csv(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                          int dim);

/// Per-agent CSV, header: agent_index,birth_time,x_1..x_d.
std::string snapshot_csv(const PositionSnapshot& snap, int dim);
void write_snapshot_csv(const std::string& path, const PositionSnapshot& snap, int dim);

/// Atomic-measure CSV, header: weight,x_1..x_d.
std::string measure_csv(const WeightedParticleMeasure& f);
void write_measure_csv(const std::string& path, const WeightedParticleMeasure& f);

nlohmann::json cluster_json(const ClusterReport& report);
nlohmann::json record_json(const DiagnosticsRecord& record, int dim);

/// Heuristic for the running-average condition: the final inflow-average
/// residual is small (< 0.1) and it has stopped oscillating (trailing-window
/// spread < 0.5 over the last 2*pi of time).
bool c1_holds_heuristic(const std::vector<DiagnosticsRecord>& records);

/// Summary document: {scenario, regime, final, clusters, checks}.
nlohmann::json summary_json(const Scenario& scenario, GrowthRegime regime,
                            const std::vector<DiagnosticsRecord>& records,
                            const ClusterReport& clusters, bool lemma1_bound_ok);

void write_json(const std::string& path, const nlohmann::json& doc);

/// gnuplot-compatible two-column series.
void write_series_dat(const std::string& path, const std::vector<double>& xs,
                      const std::vector<double>& ys);

/// Shortest round-trip decimal rendering used by every writer.
std::string format_double(double v);

}  // namespace agora
