#include "agora/verify.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "agora/io.hpp"
#include "agora/kinetic.hpp"
#include "agora/micro.hpp"
#include "agora/oracles.hpp"
#include "agora/scenario.hpp"

namespace agora {

namespace {

std::string fmt(double v) { return format_double(v); }

WeightedParticleMeasure measure_of_snapshot(const PositionSnapshot& snap, int dim) {
    WeightedParticleMeasure f;
    f.dim = dim;
    f.atoms = snap.positions;
    f.weights.assign(snap.positions.size(), 1.0 / static_cast<double>(snap.positions.size()));
    return f;
}

WeightedParticleMeasure grid_measure(double lo, double hi, int count) {
    WeightedParticleMeasure f;
    f.dim = 1;
    for (int i = 0; i < count; ++i) {
        double u = (i + 0.5) / count;
        f.atoms.push_back(Vec(1, lo + (hi - lo) * u));
        f.weights.push_back(1.0 / count);
    }
    return f;
}

// ----- criterion 1: mean ODE against the constant-inflow closed form --------

CriterionResult criterion_mean_ode() {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(1.0);
    c.profile = InflowProfile::constant(Vec(1, 0.5));
    c.initial.kind = InitialProfile::Kind::point;
    c.initial.point = Vec(1, 0.0);
    c.dim = 1;
    c.n0 = 5.0;
    c.rho = 200.0;
    c.dt = 1e-3;
    c.t_end = 5.0;
    c.snapshot_stride = 10;

    Trajectory traj = run(c);
    double worst = 0.0, scale = 0.0;
    for (const DiagnosticsRecord& r : traj.records) {
        double oracle = 0.5 * (1.0 - c.n0 / r.n);
        worst = std::max(worst, std::abs(r.m1[0] - oracle));
        scale = std::max(scale, std::abs(oracle));
    }
    CriterionResult res{1, "mean ODE vs constant-inflow closed form", false, worst / scale, 2e-3,
                        ""};
    res.pass = res.measured <= res.limit;
    res.detail = "max |m1 - oracle| = " + fmt(worst) + " relative to oracle scale " + fmt(scale) +
                 " (b=1, X_c=0.5, rho=200, dt=1e-3, T=5)";
    return res;
}

// ----- criterion 2: oscillating inflow, no limit ----------------------------

CriterionResult criterion_oscillation() {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(1.0);
    c.profile = InflowProfile::sinusoidal(Vec(1, 1.0), 1.0, 0.0);
    c.initial.kind = InitialProfile::Kind::point;
    c.initial.point = Vec(1, 0.0);
    c.dim = 1;
    c.n0 = 1.0;
    c.rho = 1.0;
    c.dt = 1e-3;
    c.t_end = 12.0;
    c.snapshot_stride = 10;

    Trajectory traj = run(c);
    double sup_err = 0.0;
    for (const DiagnosticsRecord& r : traj.records) {
        if (r.t < 5.0) continue;
        double oracle = 0.5 * (std::sin(r.t) - std::cos(r.t)) + 0.5 * std::exp(-r.t);
        sup_err = std::max(sup_err, std::abs(r.m1[0] - oracle));
    }
    double lo = kTimeInfinity, hi = -kTimeInfinity;
    double window_start = c.t_end - 2.0 * std::numbers::pi;
    for (const DiagnosticsRecord& r : traj.records) {
        if (r.t < window_start) continue;
        lo = std::min(lo, r.c1_residual);
        hi = std::max(hi, r.c1_residual);
    }
    double oscillation = hi - lo;

    CriterionResult res{2, "oscillating inflow tracks sin-cos solution", false, sup_err, 2e-2, ""};
    res.pass = sup_err <= 2e-2 && oscillation >= 0.5;
    res.detail = "sup error on [5,12] = " + fmt(sup_err) + "; c1_residual trailing oscillation = " +
                 fmt(oscillation) + " (needs >= 0.5, i.e. the running average has no limit)";
    return res;
}

// ----- criterion 3: variance-about-inflow envelope, slow power decay --------
// The particle count for 50 time units of (1+t)^{-1/2} growth is astronomical
// (N_T/N0 ~ e^{12.3}); the envelope is a statement about the macroscopic
// variance, so it is checked on the measure-valued evolution.

CriterionResult criterion_envelope() {
    SimConfig c;
    c.kernel = InfluenceKernel::type2_tent();
    c.rate = GrowthRate::power_decay(0.5);
    c.profile = InflowProfile::constant(Vec(1, 0.25));
    c.initial.kind = InitialProfile::Kind::uniform_box;
    c.initial.box_lo = Vec(1, -1.0);
    c.initial.box_hi = Vec(1, 1.0);
    c.dim = 1;
    c.n0 = 2.0;
    c.rho = 100.0;
    c.dt = 0.05;
    c.t_end = 50.0;
    c.snapshot_stride = 10;
    c.seed = 7;

    KineticTrajectory traj = run_kinetic(c);
    const DiagnosticsRecord& r0 = traj.records.front();
    double base = r0.variance + r0.m1_dist;  // V(0) + |m1(0) - X_c|^2 = V_X(0)
    double worst = 0.0;
    for (const DiagnosticsRecord& r : traj.records) {
        double envelope = base * (c.n0 / r.n);
        worst = std::max(worst, r.variance_inflow / envelope);
    }
    CriterionResult res{3, "variance envelope under (1+t)^{-1/2} growth", false, worst, 1.05, ""};
    res.pass = worst <= 1.05;
    res.detail = "max V_X(t) / ((V(0)+|m1(0)-X_c|^2) N0/N_t) over T=50, tent kernel; N0/N_T = " +
                 fmt(c.n0 / traj.records.back().n);
    return res;
}

// ----- criterion 4: variance decay exponent under power-law rates -----------

double fitted_exponent_for_alpha(double alpha) {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::power_decay(alpha);
    c.profile = InflowProfile::sinusoidal(Vec(1, 1.0), 1.0, 0.0);
    c.initial.kind = InitialProfile::Kind::point;
    c.initial.point = Vec(1, 0.0);
    c.dim = 1;
    c.n0 = 1.0;
    c.dt = 0.02;
    c.t_end = 100.0;
    c.snapshot_stride = 5;  // record every 0.1

    KineticTrajectory traj = run_kinetic(c);

    // the oscillating inflow makes V itself oscillate around the power-law
    // trend; average over one forcing period before fitting
    std::vector<double> ts, vs;
    double half = std::numbers::pi;
    for (double t = 10.0 + half; t <= 100.0 - half; t += 1.0) {
        double acc = 0.0;
        int n = 0;
        for (const DiagnosticsRecord& r : traj.records) {
            if (r.t < t - half || r.t > t + half) continue;
            acc += r.variance;
            ++n;
        }
        if (n == 0) continue;
        ts.push_back(t);
        vs.push_back(acc / n);
    }
    return fit_decay_exponent(ts, vs, 10.0, 100.0);
}

CriterionResult criterion_decay_rate() {
    double e05 = fitted_exponent_for_alpha(0.5);
    double e10 = fitted_exponent_for_alpha(1.0);
    double worst = std::max(std::abs(e05 - 0.5), std::abs(e10 - 1.0));
    CriterionResult res{4, "variance decay exponent matches growth-rate power", false, worst, 0.15,
                        ""};
    res.pass = worst <= 0.15;
    res.detail = "fitted exponents: alpha=0.5 -> " + fmt(e05) + ", alpha=1.0 -> " + fmt(e10) +
                 " (period-averaged V on t in [10,100])";
    return res;
}

// ----- criteria 5 and 12 share the finite-population clustering scenario ----

SimConfig clustering_config() {
    SimConfig c;
    c.kernel = InfluenceKernel::type2_tent();
    c.rate = GrowthRate::power_decay(2.0);
    c.profile = InflowProfile::constant(Vec(1, 0.0));
    c.initial.kind = InitialProfile::Kind::two_blob;
    c.initial.blob_a = Vec(1, -1.5);
    c.initial.blob_b = Vec(1, 1.5);
    c.initial.blob_width = 0.1;
    c.dim = 1;
    c.n0 = 2.0;
    c.rho = 100.0;
    c.dt = 0.02;
    c.t_end = 100.0;
    c.snapshot_stride = 50;
    c.seed = 11;
    return c;
}

CriterionResult criterion_clustering() {
    SimConfig c = clustering_config();
    Trajectory traj = run(c);
    const ClusterReport& rep = traj.final_clusters;
    const DiagnosticsRecord& last = traj.records.back();

    double mass = 0.0, weighted = 0.0;
    for (int k = 0; k < rep.count; ++k) {
        mass += rep.masses[k];
        weighted += rep.masses[k] * rep.centers[k][0];
    }
    double center_vs_m1 = std::abs(weighted / mass - last.m1[0]);

    PopulationPath oracle_path = integrate_population(c.rate, c.n0, 2000.0, 0.05);
    OracleResult limit = m1_limit(c.profile, oracle_path, traj.records.front().m1);
    double m1_err = std::abs(last.m1[0] - limit.value[0]);

    bool pass = rep.count >= 2 && rep.count <= 3 && rep.max_intra_diameter <= 0.05 &&
                rep.min_inter_distance >= 0.95 && center_vs_m1 <= 1e-10 && m1_err <= 1e-2;
    CriterionResult res{5, "two-blob clustering dichotomy, finite population", pass, m1_err, 1e-2,
                        ""};
    res.detail = "J=" + std::to_string(rep.count) + ", max intra=" + fmt(rep.max_intra_diameter) +
                 " (<=0.05), min inter=" + fmt(rep.min_inter_distance) +
                 " (>=0.95), |mass-avg center - m1|=" + fmt(center_vs_m1) +
                 " (<=1e-10), |m1 - m1_limit|=" + fmt(m1_err);
    return res;
}

CriterionResult criterion_dissipation_integrability() {
    SimConfig c = clustering_config();
    Trajectory traj = run(c);

    double total = 0.0, tail = 0.0;
    double tail_start = 0.9 * c.t_end;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
        const DiagnosticsRecord& a = traj.records[k - 1];
        const DiagnosticsRecord& b = traj.records[k];
        double inc = 0.5 * (a.dissipation + b.dissipation) * (b.t - a.t);
        total += inc;
        if (a.t >= tail_start) tail += inc;
    }
    double ratio = tail / total;
    CriterionResult res{12, "dissipation time-integral saturates", ratio < 0.01, ratio, 0.01, ""};
    res.detail = "int D dt = " + fmt(total) + ", final-10% increment = " + fmt(tail) +
                 " (finite-population two-blob scenario, T=100)";
    return res;
}

// ----- criterion 6: confinement across every bundled scenario ---------------

CriterionResult criterion_confinement(const std::string& scenario_dir) {
    namespace fs = std::filesystem;
    if (scenario_dir.empty() || !fs::is_directory(scenario_dir))
        throw std::invalid_argument("criterion 6 needs the bundled scenario directory (got '" +
                                    scenario_dir + "')");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(scenario_dir))
        if (e.path().extension() == ".toml") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw std::invalid_argument("criterion 6: no .toml scenarios in " + scenario_dir);

    std::size_t violations = 0;
    std::string seen;
    for (const fs::path& file : files) {
        Scenario sc = load_scenario_file(file.string());
        if (sc.mode == RunMode::micro || sc.mode == RunMode::both)
            violations += run(sc.config).confinement_violations;
        if (sc.mode == RunMode::kinetic || sc.mode == RunMode::both)
            violations += run_kinetic(sc.config).confinement_violations;
        if (!seen.empty()) seen += ", ";
        seen += sc.name;
    }
    CriterionResult res{6,    "state confinement across bundled scenarios",
                        violations == 0, static_cast<double>(violations), 0.0, ""};
    res.detail = std::to_string(files.size()) + " scenarios (" + seen +
                 "); bound max(sup|x0|, X_B) + dt*psi_M*2R per step";
    return res;
}

// ----- criterion 7: kinetic moment ODE residuals + mass conservation --------

CriterionResult criterion_kinetic_moments() {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(1.0);
    c.profile = InflowProfile::sinusoidal(Vec(1, 1.0), 1.0, 0.0);
    c.initial.kind = InitialProfile::Kind::point;
    c.initial.point = Vec(1, 0.0);
    c.dim = 1;
    c.n0 = 1.0;
    c.dt = 1e-3;
    c.t_end = 5.0;
    c.snapshot_stride = 10;

    KineticTrajectory traj = run_kinetic(c);
    double worst = 0.0;
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
        const DiagnosticsRecord& a = traj.records[k - 1];
        const DiagnosticsRecord& b = traj.records[k];
        double t_mid = 0.5 * (a.t + b.t);
        double m1_mid = 0.5 * (a.m1[0] + b.m1[0]);
        double fd = (b.m1[0] - a.m1[0]) / (b.t - a.t);
        double rhs = -m1_mid + std::sin(t_mid);  // b == 1
        worst = std::max(worst, std::abs(fd - rhs));
    }
    bool mass_ok = traj.max_normalization_error <= 1e-12;
    CriterionResult res{7, "kinetic first-moment ODE residual", worst <= 5e-3 && mass_ok, worst,
                        5e-3, ""};
    res.detail = "max |dM1/dt - (-b M1 + b X)| = " + fmt(worst) + "; worst |sum w - 1| = " +
                 fmt(traj.max_normalization_error) + " (<= 1e-12)";
    return res;
}

// ----- criterion 8: particle vs measure evolution, with refinement ----------

double micro_kinetic_gap(double dt, double rho, std::size_t stride) {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::power_decay(2.0);
    c.profile = InflowProfile::constant(Vec(1, 0.5));
    c.initial.kind = InitialProfile::Kind::uniform_box;
    c.initial.box_lo = Vec(1, -1.0);
    c.initial.box_hi = Vec(1, 1.0);
    c.dim = 1;
    c.n0 = 1.0;
    c.rho = rho;
    c.dt = dt;
    c.t_end = 10.0;
    c.snapshot_stride = stride;
    c.keep_snapshots = true;
    c.seed = 3;

    Trajectory micro = run(c);
    WeightedParticleMeasure f0 = measure_of_snapshot(micro.snapshots.front(), c.dim);
    KineticTrajectory kin = run_kinetic(c, f0);

    if (micro.snapshots.size() != kin.snapshots.size())
        throw std::runtime_error("micro/kinetic snapshot cadence mismatch");
    double sup = 0.0;
    for (std::size_t k = 0; k < micro.snapshots.size(); ++k) {
        WeightedParticleMeasure mu = measure_of_snapshot(micro.snapshots[k], c.dim);
        sup = std::max(sup, w1_distance(mu, kin.snapshots[k].second));
    }
    return sup;
}

CriterionResult criterion_micro_kinetic() {
    double base = micro_kinetic_gap(0.01, 200.0, 10);
    double refined = micro_kinetic_gap(0.005, 400.0, 20);
    bool pass = base <= 5e-2 && refined <= 0.7 * base;
    CriterionResult res{8, "particle run matches measure run in W1", pass, base, 5e-2, ""};
    res.detail = "sup_{t<=10} W1 = " + fmt(base) + " at (dt=0.01, rho=200); " + fmt(refined) +
                 " after dt/2, 2rho (needs >= 30% reduction: ratio " +
                 fmt(base > 0 ? refined / base : 0.0) + ")";
    return res;
}

// ----- criterion 9: concentration targets ------------------------------------

CriterionResult criterion_concentration() {
    // unbounded growth, constant inflow: decay envelope sqrt(V_X(0) N0/N_t)
    SimConfig a;
    a.kernel = InfluenceKernel::type1_constant();
    a.rate = GrowthRate::constant(1.0);
    a.profile = InflowProfile::constant(Vec(1, 0.5));
    a.initial.kind = InitialProfile::Kind::uniform_box;
    a.initial.box_lo = Vec(1, -1.0);
    a.initial.box_hi = Vec(1, 1.0);
    a.dim = 1;
    a.n0 = 1.0;
    a.rho = 300.0;
    a.dt = 0.01;
    a.t_end = 6.0;
    a.snapshot_stride = 10;
    a.seed = 5;

    WeightedParticleMeasure f0 = make_initial_measure(a);
    double vx0 = variance_about(f0.atoms, f0.weights, a.profile.evaluate(0.0, a.n0));
    PopulationPath path_a = integrate_population(a.rate, a.n0, a.t_end, a.dt);
    ConcentrationReport rep_a = concentration_probe(a, f0);
    double worst_ratio = 0.0;
    for (std::size_t k = 0; k < rep_a.times.size(); ++k) {
        if (rep_a.times[k] < 1.0) continue;
        double envelope = std::sqrt(vx0 * a.n0 / path_a.value(rep_a.times[k]));
        worst_ratio = std::max(worst_ratio, rep_a.w1[k] / envelope);
    }

    // finite total population, everywhere-positive kernel: limit mean M*
    SimConfig b = a;
    b.rate = GrowthRate::power_decay(2.0);
    b.profile = InflowProfile::constant(Vec(1, 1.0));
    b.rho = 200.0;
    b.dt = 0.05;
    b.t_end = 100.0;
    b.snapshot_stride = 20;

    WeightedParticleMeasure g0 = make_initial_measure(b);
    Vec m1_0 = g0.moments().m1;
    KineticTrajectory kin = run_kinetic(b, g0);
    PopulationPath oracle_path = integrate_population(b.rate, b.n0, 2000.0, 0.05);
    Vec m_star = m1_limit(b.profile, oracle_path, m1_0).value;
    double w1_final = 0.0;
    const WeightedParticleMeasure& fT = kin.final_measure;
    for (std::size_t i = 0; i < fT.size(); ++i)
        w1_final += fT.weights[i] * (fT.atoms[i] - m_star).norm();

    bool pass = worst_ratio <= 1.1 && w1_final <= 5e-2;
    CriterionResult res{9, "concentration at inflow / limiting mean", pass, w1_final, 5e-2, ""};
    res.detail = "exponential case: max W1/sqrt(V_X(0) N0/N_t) = " + fmt(worst_ratio) +
                 " (<= 1.1, t >= 1); finite case: W1(f_100, delta_M*) = " + fmt(w1_final) +
                 " with M* = " + fmt(m_star[0]);
    return res;
}

// ----- criterion 10: stability of the measure evolution ---------------------

double stability_ratio(double dt, std::size_t stride) {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(0.2);
    c.profile = InflowProfile::constant(Vec(1, 0.0));
    c.dim = 1;
    c.n0 = 1.0;
    c.dt = dt;
    c.t_end = 5.0;
    c.snapshot_stride = stride;

    WeightedParticleMeasure f0 = grid_measure(-0.5, 0.5, 101);
    WeightedParticleMeasure g0 = grid_measure(-0.4, 0.6, 101);
    StabilityReport rep = stability_probe(f0, g0, c);
    if (!rep.ratio_defined) throw std::runtime_error("stability probe: zero initial distance");
    return rep.sup_ratio;
}

CriterionResult criterion_stability() {
    double r1 = stability_ratio(0.01, 10);
    double r2 = stability_ratio(0.005, 20);
    double rel = std::abs(r1 - r2) / r1;
    bool pass = std::isfinite(r1) && std::isfinite(r2) && rel <= 0.05;
    CriterionResult res{10, "stability ratio finite and refinement-stable", pass, rel, 0.05, ""};
    res.detail = "sup_t W1(f,f~)/W1(f0,f~0) = " + fmt(r1) + " at dt=0.01, " + fmt(r2) +
                 " at dt=0.005 (blobs offset 0.1, psi=1, b=0.2, T=5)";
    return res;
}

// ----- criterion 11: W1 solver correctness -----------------------------------

WeightedParticleMeasure delta_at(int dim, std::initializer_list<double> coords) {
    WeightedParticleMeasure f;
    f.dim = dim;
    Vec x(dim, 0.0);
    int i = 0;
    for (double c : coords) x[i++] = c;
    f.atoms = {x};
    f.weights = {1.0};
    return f;
}

/// Exact W1 between equal-weight lists of the same length: minimum over all
/// assignments, found by exhaustive permutation (reference oracle only).
double w1_bruteforce(const std::vector<Vec>& xs, const std::vector<Vec>& ys) {
    std::vector<int> perm(ys.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = kTimeInfinity;
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i) cost += (xs[i] - ys[perm[i]]).norm();
        best = std::min(best, cost);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best / static_cast<double>(xs.size());
}

/// Expands a rational-weight measure (weights multiples of 1/denominator)
/// into an equal-weight atom list.
std::vector<Vec> expand(const WeightedParticleMeasure& f, int denominator) {
    std::vector<Vec> out;
    for (std::size_t i = 0; i < f.size(); ++i) {
        int copies = static_cast<int>(std::llround(f.weights[i] * denominator));
        for (int k = 0; k < copies; ++k) out.push_back(f.atoms[i]);
    }
    return out;
}

CriterionResult criterion_w1_correctness() {
    double worst = 0.0;
    std::string notes;

    // tagged fixed examples
    {
        WeightedParticleMeasure mu = grid_measure(-1.0, 1.0, 7);
        worst = std::max(worst, std::abs(w1_distance(mu, mu)));
        worst = std::max(worst,
                         std::abs(w1_distance(delta_at(1, {0.0}), delta_at(1, {1.0})) - 1.0));
        worst = std::max(worst,
                         std::abs(w1_distance(delta_at(2, {0.0, 0.0}), delta_at(2, {1.0, 0.0})) -
                                  1.0));
        WeightedParticleMeasure half;
        half.dim = 1;
        half.atoms = {Vec(1, 0.0), Vec(1, 2.0)};
        half.weights = {0.5, 0.5};
        worst = std::max(worst, std::abs(w1_distance(half, delta_at(1, {1.0})) - 1.0));
        notes = "fixed examples dev " + fmt(worst);
    }

    std::mt19937_64 rng(42);
    auto random_measure = [&](int dim, int quarters_atoms) {
        WeightedParticleMeasure f;
        f.dim = dim;
        std::vector<int> parts(quarters_atoms, 1);  // weights k/4, k >= 1
        for (int extra = 4 - quarters_atoms; extra > 0; --extra)
            parts[rng() % quarters_atoms] += 1;
        for (int q : parts) {
            Vec x(dim, 0.0);
            for (int i = 0; i < dim; ++i)
                x[i] = -1.0 + 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53;
            f.atoms.push_back(x);
            f.weights.push_back(q / 4.0);
        }
        return f;
    };

    // d = 2 solver against permutation brute force on <= 4-atom measures
    double bf_dev = 0.0;
    for (int trial = 0; trial < 40; ++trial) {
        int na = 1 + static_cast<int>(rng() % 4), nb = 1 + static_cast<int>(rng() % 4);
        WeightedParticleMeasure mu = random_measure(2, na), nu = random_measure(2, nb);
        double exact = w1_bruteforce(expand(mu, 4), expand(nu, 4));
        bf_dev = std::max(bf_dev, std::abs(w1_distance(mu, nu) - exact));
    }
    worst = std::max(worst, bf_dev);
    notes += "; brute-force dev " + fmt(bf_dev);

    // metric axioms in d = 1 and d = 2
    double axiom_dev = 0.0;
    for (int dim : {1, 2}) {
        for (int trial = 0; trial < 25; ++trial) {
            WeightedParticleMeasure p = random_measure(dim, 1 + static_cast<int>(rng() % 4));
            WeightedParticleMeasure q = random_measure(dim, 1 + static_cast<int>(rng() % 4));
            WeightedParticleMeasure r = random_measure(dim, 1 + static_cast<int>(rng() % 4));
            double pq = w1_distance(p, q), qp = w1_distance(q, p);
            double pr = w1_distance(p, r), rq = w1_distance(r, q);
            axiom_dev = std::max(axiom_dev, std::abs(pq - qp));          // symmetry
            axiom_dev = std::max(axiom_dev, std::abs(w1_distance(p, p)));  // identity
            axiom_dev = std::max(axiom_dev, pq - (pr + rq));             // triangle
        }
    }
    worst = std::max(worst, axiom_dev);
    notes += "; axiom dev " + fmt(axiom_dev);

    CriterionResult res{11, "W1 solver exact on examples, axioms, brute force", worst <= 1e-9,
                        worst, 1e-9, notes};
    return res;
}

}  // namespace

CriterionResult run_criterion(int id, const std::string& scenario_dir) {
    switch (id) {
        case 1: return criterion_mean_ode();
        case 2: return criterion_oscillation();
        case 3: return criterion_envelope();
        case 4: return criterion_decay_rate();
        case 5: return criterion_clustering();
        case 6: return criterion_confinement(scenario_dir);
        case 7: return criterion_kinetic_moments();
        case 8: return criterion_micro_kinetic();
        case 9: return criterion_concentration();
        case 10: return criterion_stability();
        case 11: return criterion_w1_correctness();
        case 12: return criterion_dissipation_integrability();
        default: throw std::invalid_argument("unknown criterion id " + std::to_string(id));
    }
}

std::vector<int> suite_criteria(const std::string& suite) {
    if (suite == "moments") return {1, 2};
    if (suite == "variance") return {3, 4};
    if (suite == "clusters") return {5, 6, 12};
    if (suite == "kinetic") return {7, 8, 9};
    if (suite == "stability") return {10, 11};
    throw std::invalid_argument("unknown verify suite '" + suite +
                                "' (expected moments|variance|clusters|kinetic|stability)");
}

std::vector<CriterionResult> run_suite(const std::string& suite,
                                       const std::string& scenario_dir) {
    std::vector<CriterionResult> out;
    for (int id : suite_criteria(suite)) out.push_back(run_criterion(id, scenario_dir));
    return out;
}

std::string format_result(const CriterionResult& r) {
    std::ostringstream os;
    os << "[" << (r.pass ? "PASS" : "FAIL") << "] criterion " << r.id << ": " << r.name
       << " | measured " << format_double(r.measured) << " vs limit " << format_double(r.limit);
    if (!r.detail.empty()) os << " | " << r.detail;
    return os.str();
}

}  // namespace agora
