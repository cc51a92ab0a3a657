#include "agora/kinetic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "agora/oracles.hpp"

namespace agora {

double WeightedParticleMeasure::total_weight() const {
    // Neumaier-compensated sum: the 1e-12 normalization invariant must not be
    // eaten by naive accumulation over thousands of atoms
    double s = 0.0, c = 0.0;
    for (double w : weights) {
        double t = s + w;
        c += (std::abs(s) >= std::abs(w)) ? (s - t) + w : (w - t) + s;
        s = t;
    }
    return s + c;
}

Moments WeightedParticleMeasure::moments() const { return agora::moments(atoms, weights); }

Vec v_field(const WeightedParticleMeasure& f, const InfluenceKernel& kernel, const Vec& x) {
    Vec v(x.dim(), 0.0);
    for (std::size_t j = 0; j < f.size(); ++j) {
        Vec diff = f.atoms[j] - x;
        v += diff * (f.weights[j] * kernel(diff.norm()));
    }
    return v;
}

namespace {

std::vector<Vec> velocities(const std::vector<Vec>& atoms, const std::vector<double>& weights,
                            const InfluenceKernel& kernel) {
    std::size_t a = atoms.size();
    int dim = atoms.empty() ? 1 : atoms[0].dim();
    std::vector<Vec> v(a, Vec(dim, 0.0));
    if (a < 2) return v;

    if (kernel.kind() == InfluenceKernel::Kind::type1_constant) {
        // psi constant and sum w = 1: V[f](a_i) = psi (M1 - a_i)
        Vec m1(dim, 0.0);
        for (std::size_t j = 0; j < a; ++j) m1 += atoms[j] * weights[j];
        double psi = kernel(0.0);
        for (std::size_t i = 0; i < a; ++i) v[i] = (m1 - atoms[i]) * psi;
        return v;
    }

    for (std::size_t i = 0; i < a; ++i) {
        for (std::size_t j = i + 1; j < a; ++j) {
            Vec diff = atoms[j] - atoms[i];
            double psi = kernel(diff.norm());
            v[i] += diff * (psi * weights[j]);
            v[j] -= diff * (psi * weights[i]);
        }
    }
    return v;
}

void transport(std::vector<Vec>& atoms, const std::vector<double>& weights,
               const InfluenceKernel& kernel, double dt, Integrator integrator) {
    std::vector<Vec> k1 = velocities(atoms, weights, kernel);
    std::size_t a = atoms.size();
    if (integrator == Integrator::euler) {
        for (std::size_t i = 0; i < a; ++i) atoms[i] += k1[i] * dt;
        return;
    }
    std::vector<Vec> stage(a);
    for (std::size_t i = 0; i < a; ++i) stage[i] = atoms[i] + k1[i] * (0.5 * dt);
    std::vector<Vec> k2 = velocities(stage, weights, kernel);
    for (std::size_t i = 0; i < a; ++i) stage[i] = atoms[i] + k2[i] * (0.5 * dt);
    std::vector<Vec> k3 = velocities(stage, weights, kernel);
    for (std::size_t i = 0; i < a; ++i) stage[i] = atoms[i] + k3[i] * dt;
    std::vector<Vec> k4 = velocities(stage, weights, kernel);
    for (std::size_t i = 0; i < a; ++i)
        atoms[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
}

void merge_light_atoms(WeightedParticleMeasure& f, double w_min) {
    if (f.size() < 2) return;
    std::vector<bool> dead(f.size(), false);
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (dead[i] || f.weights[i] >= w_min) continue;
        std::size_t nearest = f.size();
        double best = kTimeInfinity;
        for (std::size_t j = 0; j < f.size(); ++j) {
            if (j == i || dead[j]) continue;
            double d2 = (f.atoms[j] - f.atoms[i]).norm2();
            if (d2 < best) {
                best = d2;
                nearest = j;
            }
        }
        if (nearest == f.size()) break;  // nothing left to absorb into
        f.weights[nearest] += f.weights[i];
        dead[i] = true;
    }
    std::size_t out = 0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        if (dead[i]) continue;
        f.atoms[out] = f.atoms[i];
        f.weights[out] = f.weights[i];
        ++out;
    }
    f.atoms.resize(out);
    f.weights.resize(out);
}

}  // namespace

std::vector<Vec> v_field_at_atoms(const WeightedParticleMeasure& f,
                                  const InfluenceKernel& kernel) {
    return velocities(f.atoms, f.weights, kernel);
}

double kinetic_step(WeightedParticleMeasure& f, const InfluenceKernel& kernel,
                    const InflowProfile& profile, const PopulationPath& path, double t, double dt,
                    Integrator integrator, double w_min) {
    transport(f.atoms, f.weights, kernel, dt, integrator);

    // exp(-int_t^{t+dt} b) = N_t / N_{t+dt}: exact decay of every existing atom
    double decay = std::exp(-(path.rate_integral(t + dt) - path.rate_integral(t)));
    if (!(decay > 0.0) || decay > 1.0 + 1e-12)
        throw std::runtime_error("kinetic_step: invalid weight decay factor");
    double inflow_weight = 1.0 - decay;
    for (double& w : f.weights) w *= decay;
    if (inflow_weight > 0.0) {
        f.atoms.push_back(profile.evaluate(t, path.value(t)));
        f.weights.push_back(inflow_weight);
    }

    double total = f.total_weight();
    double error = std::abs(total - 1.0);
    for (double& w : f.weights) w /= total;
    merge_light_atoms(f, w_min);
    return error;
}

WeightedParticleMeasure empirical_of_micro(const AgentEnsemble& ensemble) {
    if (ensemble.size() == 0) throw std::invalid_argument("empirical_of_micro: empty ensemble");
    WeightedParticleMeasure f;
    f.dim = ensemble.dim;
    f.atoms = ensemble.positions;
    f.weights.assign(ensemble.size(), 1.0 / static_cast<double>(ensemble.size()));
    return f;
}

WeightedParticleMeasure make_initial_measure(const SimConfig& config) {
    if (config.initial.kind == InitialProfile::Kind::point) {
        WeightedParticleMeasure f;
        f.dim = config.dim;
        f.atoms = {config.initial.point};
        f.weights = {1.0};
        return f;
    }
    return empirical_of_micro(make_ensemble(config));
}

KineticTrajectory run_kinetic(const SimConfig& config,
                              std::optional<WeightedParticleMeasure> initial) {
    PopulationPath path = integrate_population(config.rate, config.n0, config.t_end, config.dt);
    WeightedParticleMeasure f = initial ? std::move(*initial) : make_initial_measure(config);

    double sup_a0 = 0.0;
    for (const Vec& a : f.atoms) sup_a0 = std::max(sup_a0, a.norm());
    double radius = std::max(sup_a0, config.profile.bound());
    double eps_dt = config.dt * config.kernel.sup_bound() * 2.0 * radius;

    KineticTrajectory traj;
    traj.confinement_radius = radius + eps_dt;

    auto record = [&](double t) {
        DiagnosticsRecord r;
        r.t = t;
        r.n = path.value(t);
        r.m = static_cast<double>(f.size());
        Moments mo = f.moments();
        r.m0 = f.total_weight();
        r.m1 = mo.m1;
        r.m2 = mo.m2;
        Vec x_in = config.profile.evaluate(t, r.n);
        r.variance = variance(f.atoms, f.weights, mo.m1);
        r.variance_inflow = variance_about(f.atoms, f.weights, x_in);
        r.dissipation = dissipation(f.atoms, f.weights, config.kernel);
        r.m1_dist = (mo.m1 - x_in).norm2();
        r.c1_residual = c1_residual(config.profile, path, t);
        traj.records.push_back(std::move(r));
        if (config.keep_snapshots) traj.snapshots.emplace_back(t, f);
    };

    record(0.0);
    auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    for (std::size_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * config.dt;
        double err = kinetic_step(f, config.kernel, config.profile, path, t, config.dt,
                                  config.integrator);
        err = std::max(err, std::abs(f.total_weight() - 1.0));
        traj.max_normalization_error = std::max(traj.max_normalization_error, err);
        for (const Vec& a : f.atoms) {
            if (!a.finite()) throw ResourceError("non-finite atom state");
            if (a.norm() > traj.confinement_radius) ++traj.confinement_violations;
        }
        if ((k + 1) % config.snapshot_stride == 0 || k + 1 == steps)
            record(static_cast<double>(k + 1) * config.dt);
    }
    traj.final_measure = std::move(f);
    return traj;
}

StabilityReport stability_probe(const WeightedParticleMeasure& f0,
                                const WeightedParticleMeasure& f0_tilde,
                                const SimConfig& config) {
    PopulationPath path = integrate_population(config.rate, config.n0, config.t_end, config.dt);
    WeightedParticleMeasure f = f0, g = f0_tilde;

    StabilityReport rep;
    rep.initial_distance = w1_distance(f, g);
    rep.ratio_defined = rep.initial_distance > 1e-15;
    rep.times.push_back(0.0);
    rep.w1.push_back(rep.initial_distance);
    rep.sup_ratio = rep.ratio_defined ? 1.0 : 0.0;

    auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    for (std::size_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * config.dt;
        kinetic_step(f, config.kernel, config.profile, path, t, config.dt, config.integrator);
        kinetic_step(g, config.kernel, config.profile, path, t, config.dt, config.integrator);
        if ((k + 1) % config.snapshot_stride == 0 || k + 1 == steps) {
            double d = w1_distance(f, g);
            rep.times.push_back(static_cast<double>(k + 1) * config.dt);
            rep.w1.push_back(d);
            if (rep.ratio_defined)
                rep.sup_ratio = std::max(rep.sup_ratio, d / rep.initial_distance);
        }
    }
    return rep;
}

ConcentrationReport concentration_probe(const SimConfig& config,
                                        std::optional<WeightedParticleMeasure> initial) {
    PopulationPath path = integrate_population(config.rate, config.n0, config.t_end, config.dt);
    WeightedParticleMeasure f = initial ? std::move(*initial) : make_initial_measure(config);
    Vec m1_0 = f.moments().m1;

    ConcentrationReport rep;
    bool rate_vanishes = config.rate.kind() == GrowthRate::Kind::power_decay &&
                         config.rate.alpha() > 0.0 && config.rate.alpha() <= 1.0;
    bool rate_is_zero =
        config.rate.kind() == GrowthRate::Kind::constant && config.rate.value() == 0.0;
    if (path.regime() == GrowthRegime::finite || rate_is_zero) {
        rep.target_kind = ConcentrationReport::Target::mean_limit;
        rep.target = rate_is_zero ? m1_0 : m1_limit(config.profile, path, m1_0).value;
    } else if (rate_vanishes) {
        rep.target_kind = ConcentrationReport::Target::running_average;
        rep.target = c1_average(config.profile, path, config.t_end);
    } else if (path.regime() == GrowthRegime::exponential ||
               path.regime() == GrowthRegime::superexponential) {
        rep.target_kind = ConcentrationReport::Target::boundary;
        rep.target = config.profile.evaluate(config.t_end, path.value(config.t_end));
    } else {
        throw std::invalid_argument("concentration_probe: scenario fits no concentration case");
    }

    auto target_at = [&](double t) -> Vec {
        switch (rep.target_kind) {
            case ConcentrationReport::Target::boundary:
                return config.profile.evaluate(t, path.value(t));
            case ConcentrationReport::Target::running_average:
                return t > 0.0 ? c1_average(config.profile, path, t) : m1_0;
            case ConcentrationReport::Target::mean_limit: return rep.target;
        }
        return rep.target;
    };
    auto w1_to_point = [&](const Vec& p) {
        double d = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) d += f.weights[i] * (f.atoms[i] - p).norm();
        return d;
    };

    rep.times.push_back(0.0);
    rep.w1.push_back(w1_to_point(target_at(0.0)));
    auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    for (std::size_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * config.dt;
        kinetic_step(f, config.kernel, config.profile, path, t, config.dt, config.integrator);
        if ((k + 1) % config.snapshot_stride == 0 || k + 1 == steps) {
            double tk = static_cast<double>(k + 1) * config.dt;
            rep.times.push_back(tk);
            rep.w1.push_back(w1_to_point(target_at(tk)));
        }
    }
    return rep;
}

}  // namespace agora
