#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "agora/diagnostics.hpp"
#include "agora/micro.hpp"
#include "agora/vec.hpp"

namespace agora {

/// Weighted atomic probability measure: the measure-valued state f_t.
/// Weights are nonnegative and sum to 1 within 1e-12.
struct WeightedParticleMeasure {
    int dim = 1;
    std::vector<Vec> atoms;
    std::vector<double> weights;

    std::size_t size() const { return atoms.size(); }
    double total_weight() const;
    Moments moments() const;
};

/// Interaction velocity V[f](x) = sum_j w_j psi(|a_j - x|)(a_j - x).
Vec v_field(const WeightedParticleMeasure& f, const InfluenceKernel& kernel, const Vec& x);

/// V[f] evaluated at every atom. Constant kernels collapse to psi (M1 - a_i).
std::vector<Vec> v_field_at_atoms(const WeightedParticleMeasure& f, const InfluenceKernel& kernel);

/// One step of the measure evolution:
///  (a) transport every atom along V[f] (euler or rk4);
///  (b) decay all weights by exp(-int_t^{t+dt} b) = N_t / N_{t+dt}
///      (exact integrating factor of the -b f source);
///  (c) append one atom at X(t, N_t) carrying the lost mass;
///  (d) renormalize to total weight 1 and merge atoms below w_min into their
///      nearest neighbor.
/// Returns |sum of weights - 1| observed before renormalization.
double kinetic_step(WeightedParticleMeasure& f, const InfluenceKernel& kernel,
                    const InflowProfile& profile, const PopulationPath& path, double t, double dt,
                    Integrator integrator = Integrator::rk4, double w_min = 1e-8);

/// Equal-weight measure on the ensemble's positions.
WeightedParticleMeasure empirical_of_micro(const AgentEnsemble& ensemble);

/// Initial measure sampled from the config's initial profile: round(rho * N0)
/// equal-weight atoms (a point profile yields a single atom).
WeightedParticleMeasure make_initial_measure(const SimConfig& config);

struct KineticTrajectory {
    std::vector<DiagnosticsRecord> records;
    std::vector<std::pair<double, WeightedParticleMeasure>> snapshots;  // if keep_snapshots
    WeightedParticleMeasure final_measure;
    double confinement_radius = 0.0;
    std::size_t confinement_violations = 0;
    double max_normalization_error = 0.0;  // worst |sum w - 1| seen at any step
};

/// Full measure-valued run over [0, t_end]; same diagnostics cadence as the
/// particle run. An explicit initial measure overrides the config's profile.
KineticTrajectory run_kinetic(const SimConfig& config,
                              std::optional<WeightedParticleMeasure> initial = std::nullopt);

/// W1(mu, nu). d = 1: exact CDF-difference integral. d >= 2: exact discrete
/// optimal transport (network-simplex), capped at 2000 atoms per side.
double w1_distance(const WeightedParticleMeasure& mu, const WeightedParticleMeasure& nu);

struct StabilityReport {
    std::vector<double> times;
    std::vector<double> w1;
    double initial_distance = 0.0;
    double sup_ratio = 0.0;  // sup_t W1(f_t, f~_t) / W1(f_0, f~_0)
    bool ratio_defined = false;
};

/// Evolves two initial measures under the identical scenario and tracks their
/// W1 distance; the ratio is undefined when the initial distance vanishes.
StabilityReport stability_probe(const WeightedParticleMeasure& f0,
                                const WeightedParticleMeasure& f0_tilde, const SimConfig& config);

struct ConcentrationReport {
    enum class Target { mean_limit, boundary, running_average };
    Target target_kind = Target::boundary;
    Vec target{1};               // final target (time-varying kinds: value at t_end)
    std::vector<double> times;
    std::vector<double> w1;      // W1(f_t, delta_target(t))
};

/// Tracks W1(f_t, delta_target): finite total population with strictly
/// positive kernel targets the limiting mean M*; unbounded growth targets the
/// inflow opinion X(t, N_t); vanishing rate targets the running average.
ConcentrationReport concentration_probe(const SimConfig& config,
                                        std::optional<WeightedParticleMeasure> initial
                                        = std::nullopt);

}  // namespace agora
