#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "agora/diagnostics.hpp"
#include "agora/growth.hpp"
#include "agora/inflow.hpp"
#include "agora/kernels.hpp"
#include "agora/vec.hpp"

namespace agora {

enum class Integrator { euler, rk4 };

/// Raised when a run exceeds its particle budget (superexponential growth
/// overflows any budget; fail loudly).
struct ResourceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Equal-weight particle discretization of the opinion profile on [0, N_t).
/// Each particle carries mass 1/rho of the agent index interval; newborns are
/// appended at the boundary with the inflow opinion and their birth time.
struct AgentEnsemble {
    int dim = 1;
    double rho = 1.0;                 // particles per unit of s-mass
    double t = 0.0;
    double population = 1.0;          // N_t
    double insertion_accumulator = 0.0;
    std::vector<Vec> positions;
    std::vector<double> birth_times;

    std::size_t size() const { return positions.size(); }
};

/// Initial opinion profile x_0(s) on [0, N_0).
struct InitialProfile {
    enum class Kind { uniform_box, two_blob, point, table };
    Kind kind = Kind::uniform_box;
    Vec box_lo{1}, box_hi{1};                 // uniform_box
    Vec blob_a{1}, blob_b{1};                 // two_blob centers
    double blob_width = 0.1;
    Vec point{1};                             // point
    std::vector<Vec> table;                   // table: cycled over particles
    double sup_norm() const;
};

struct SimConfig {
    InfluenceKernel kernel = InfluenceKernel::type1_constant();
    GrowthRate rate = GrowthRate::constant(0.0);
    InflowProfile profile = InflowProfile::constant(Vec(1, 0.0));
    InitialProfile initial;
    int dim = 1;
    double n0 = 1.0;
    double dt = 1e-3;
    double t_end = 1.0;
    double rho = 100.0;
    Integrator integrator = Integrator::rk4;
    std::size_t snapshot_stride = 10;  // record diagnostics every this many steps
    std::uint64_t seed = 0;
    std::size_t m_max = 200'000;       // hard particle cap
    bool keep_snapshots = false;       // retain position snapshots in memory
    double link_radius = 0.5;          // cluster detection
};

struct PositionSnapshot {
    double t = 0.0;
    std::vector<Vec> positions;
    std::vector<double> birth_times;
};

struct Trajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<PositionSnapshot> snapshots;       // only if keep_snapshots
    PositionSnapshot final_state;                  // always retained
    ClusterReport final_clusters;
    double confinement_radius = 0.0;               // R + eps_dt used by the check
    std::size_t confinement_violations = 0;
    std::size_t inserted_total = 0;
};

/// Velocity of every particle under the pairwise interaction:
/// v_i = (1/M) sum_j psi(|x_j - x_i|)(x_j - x_i).
/// Constant kernels reduce to psi * (mean - x_i), computed in O(M).
std::vector<Vec> rhs(const AgentEnsemble& ensemble, const InfluenceKernel& kernel);

/// Same sum reordered through a unit cell grid; only valid for kernels with
/// support radius <= 1 (falls back to dense rhs otherwise).
std::vector<Vec> neighbor_accelerated_rhs(const AgentEnsemble& ensemble,
                                          const InfluenceKernel& kernel);

/// One step: transport substep (euler or rk4), then insertion of newborns at
/// X(t, N_t) with the accumulator absorbing the fractional count.
/// Returns the number of particles inserted.
std::size_t step(AgentEnsemble& ensemble, const InfluenceKernel& kernel,
                 const InflowProfile& profile, const PopulationPath& path, double dt,
                 Integrator integrator, std::size_t m_max = 200'000);

/// Builds the initial ensemble from the config (deterministic in the seed).
AgentEnsemble make_ensemble(const SimConfig& config);

/// Full run over [0, t_end] recording diagnostics every snapshot stride.
Trajectory run(const SimConfig& config);

}  // namespace agora
