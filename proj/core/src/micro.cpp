#include "agora/micro.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <unordered_map>

namespace agora {

double InitialProfile::sup_norm() const {
    switch (kind) {
        case Kind::uniform_box: {
            double s2 = 0.0;
            for (int i = 0; i < box_lo.dim(); ++i) {
                double m = std::max(std::abs(box_lo[i]), std::abs(box_hi[i]));
                s2 += m * m;
            }
            return std::sqrt(s2);
        }
        case Kind::two_blob: {
            double half = 0.5 * blob_width * std::sqrt(static_cast<double>(blob_a.dim()));
            return std::max(blob_a.norm(), blob_b.norm()) + half;
        }
        case Kind::point: return point.norm();
        case Kind::table: {
            double s = 0.0;
            for (const Vec& v : table) s = std::max(s, v.norm());
            return s;
        }
    }
    return 0.0;
}

namespace {

// deterministic uniform in [0,1): fixed mapping from the raw 64-bit stream,
// independent of the standard library's distribution implementation
double uniform01(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

Vec sample_initial(const InitialProfile& prof, int dim, std::size_t index, std::size_t count,
                   std::mt19937_64& rng) {
    switch (prof.kind) {
        case InitialProfile::Kind::uniform_box: {
            Vec x(dim, 0.0);
            for (int i = 0; i < dim; ++i)
                x[i] = prof.box_lo[i] + (prof.box_hi[i] - prof.box_lo[i]) * uniform01(rng);
            return x;
        }
        case InitialProfile::Kind::two_blob: {
            const Vec& center = (index < count / 2) ? prof.blob_a : prof.blob_b;
            Vec x(dim, 0.0);
            for (int i = 0; i < dim; ++i)
                x[i] = center[i] + prof.blob_width * (uniform01(rng) - 0.5);
            return x;
        }
        case InitialProfile::Kind::point: return prof.point;
        case InitialProfile::Kind::table: return prof.table[index % prof.table.size()];
    }
    return Vec(dim, 0.0);
}

std::vector<Vec> velocities_dense(const std::vector<Vec>& xs, const InfluenceKernel& kernel) {
    std::size_t m = xs.size();
    int dim = xs.empty() ? 1 : xs[0].dim();
    std::vector<Vec> v(m, Vec(dim, 0.0));
    if (m < 2) return v;
    double inv_m = 1.0 / static_cast<double>(m);

    if (kernel.kind() == InfluenceKernel::Kind::type1_constant) {
        Vec mean(dim, 0.0);
        for (const Vec& x : xs) mean += x;
        mean *= inv_m;
        double psi = kernel(0.0);
        for (std::size_t i = 0; i < m; ++i) v[i] = (mean - xs[i]) * psi;
        return v;
    }

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            Vec diff = xs[j] - xs[i];
            double w = kernel(diff.norm()) * inv_m;
            v[i] += diff * w;
            v[j] -= diff * w;
        }
    }
    return v;
}

struct CellKey {
    long long x = 0, y = 0, z = 0;
    bool operator==(const CellKey&) const = default;
};
struct CellHash {
    std::size_t operator()(const CellKey& k) const {
        std::size_t h = std::hash<long long>()(k.x);
        h = h * 0x9e3779b97f4a7c15ull + std::hash<long long>()(k.y);
        h = h * 0x9e3779b97f4a7c15ull + std::hash<long long>()(k.z);
        return h;
    }
};

std::vector<Vec> velocities_binned(const std::vector<Vec>& xs, const InfluenceKernel& kernel) {
    std::size_t m = xs.size();
    int dim = xs.empty() ? 1 : xs[0].dim();
    std::vector<Vec> v(m, Vec(dim, 0.0));
    if (m < 2) return v;
    double inv_m = 1.0 / static_cast<double>(m);
    double cell = kernel.support_radius();

    auto key_of = [&](const Vec& x) {
        CellKey k;
        k.x = static_cast<long long>(std::floor(x[0] / cell));
        if (dim > 1) k.y = static_cast<long long>(std::floor(x[1] / cell));
        if (dim > 2) k.z = static_cast<long long>(std::floor(x[2] / cell));
        return k;
    };

    std::unordered_map<CellKey, std::vector<std::size_t>, CellHash> grid;
    grid.reserve(m / 4 + 1);
    for (std::size_t i = 0; i < m; ++i) grid[key_of(xs[i])].push_back(i);

    double support2 = cell * cell;
    auto cross_pair = [&](std::size_t i, std::size_t j) {
        Vec diff = xs[j] - xs[i];
        double r2 = diff.norm2();
        if (r2 > support2) return;
        double w = kernel(std::sqrt(r2)) * inv_m;
        v[i] += diff * w;
        v[j] -= diff * w;
    };

    for (const auto& [key, members] : grid) {
        for (std::size_t a = 0; a < members.size(); ++a)
            for (std::size_t b = a + 1; b < members.size(); ++b)
                cross_pair(members[a], members[b]);

        // each unordered cell pair is visited once: only the lexicographically
        // positive half of the neighbor offsets
        for (long long dx = -1; dx <= 1; ++dx) {
            for (long long dy = (dim > 1 ? -1 : 0); dy <= (dim > 1 ? 1 : 0); ++dy) {
                for (long long dz = (dim > 2 ? -1 : 0); dz <= (dim > 2 ? 1 : 0); ++dz) {
                    bool positive = dx > 0 || (dx == 0 && dy > 0) || (dx == 0 && dy == 0 && dz > 0);
                    if (!positive) continue;
                    auto it = grid.find(CellKey{key.x + dx, key.y + dy, key.z + dz});
                    if (it == grid.end()) continue;
                    for (std::size_t i : members)
                        for (std::size_t j : it->second) cross_pair(i, j);
                }
            }
        }
    }
    return v;
}

}  // namespace

std::vector<Vec> rhs(const AgentEnsemble& ensemble, const InfluenceKernel& kernel) {
    return velocities_dense(ensemble.positions, kernel);
}

std::vector<Vec> neighbor_accelerated_rhs(const AgentEnsemble& ensemble,
                                          const InfluenceKernel& kernel) {
    if (!kernel.compactly_supported()) return rhs(ensemble, kernel);
    return velocities_binned(ensemble.positions, kernel);
}

namespace {

std::vector<Vec> velocities(const std::vector<Vec>& xs, const InfluenceKernel& kernel) {
    // the binned route pays off once the dense double loop dominates
    if (kernel.compactly_supported() && xs.size() > 1024) return velocities_binned(xs, kernel);
    return velocities_dense(xs, kernel);
}

void transport(std::vector<Vec>& xs, const InfluenceKernel& kernel, double dt,
               Integrator integrator) {
    std::vector<Vec> k1 = velocities(xs, kernel);
    if (integrator == Integrator::euler) {
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] += k1[i] * dt;
        return;
    }
    std::size_t m = xs.size();
    std::vector<Vec> stage(m);
    for (std::size_t i = 0; i < m; ++i) stage[i] = xs[i] + k1[i] * (0.5 * dt);
    std::vector<Vec> k2 = velocities(stage, kernel);
    for (std::size_t i = 0; i < m; ++i) stage[i] = xs[i] + k2[i] * (0.5 * dt);
    std::vector<Vec> k3 = velocities(stage, kernel);
    for (std::size_t i = 0; i < m; ++i) stage[i] = xs[i] + k3[i] * dt;
    std::vector<Vec> k4 = velocities(stage, kernel);
    for (std::size_t i = 0; i < m; ++i)
        xs[i] += (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]) * (dt / 6.0);
}

}  // namespace

std::size_t step(AgentEnsemble& ensemble, const InfluenceKernel& kernel,
                 const InflowProfile& profile, const PopulationPath& path, double dt,
                 Integrator integrator, std::size_t m_max) {
    double t = ensemble.t;
    double n_cur = ensemble.population;
    double n_next = path.value(t + dt);

    transport(ensemble.positions, kernel, dt, integrator);

    // newborns enter at the boundary opinion evaluated at the step's start
    Vec born_at = profile.evaluate(t, n_cur);
    ensemble.insertion_accumulator += ensemble.rho * (n_next - n_cur);
    auto inserted = static_cast<std::size_t>(std::max(0.0, std::floor(ensemble.insertion_accumulator)));
    ensemble.insertion_accumulator -= static_cast<double>(inserted);

    if (ensemble.size() + inserted > m_max)
        throw ResourceError("particle cap exceeded (M_max = " + std::to_string(m_max) + ")");
    for (std::size_t k = 0; k < inserted; ++k) {
        ensemble.positions.push_back(born_at);
        ensemble.birth_times.push_back(t);
    }
    ensemble.t = t + dt;
    ensemble.population = n_next;
    return inserted;
}

AgentEnsemble make_ensemble(const SimConfig& config) {
    AgentEnsemble e;
    e.dim = config.dim;
    e.rho = config.rho;
    e.population = config.n0;
    auto m0 = static_cast<std::size_t>(std::llround(config.rho * config.n0));
    if (m0 == 0) throw std::invalid_argument("make_ensemble: rho * N0 rounds to zero particles");
    if (m0 > config.m_max) throw ResourceError("initial ensemble already exceeds M_max");
    std::mt19937_64 rng(config.seed);
    e.positions.reserve(m0);
    for (std::size_t i = 0; i < m0; ++i)
        e.positions.push_back(sample_initial(config.initial, config.dim, i, m0, rng));
    e.birth_times.assign(m0, 0.0);
    return e;
}

Trajectory run(const SimConfig& config) {
    PopulationPath path = integrate_population(config.rate, config.n0, config.t_end, config.dt);
    AgentEnsemble ensemble = make_ensemble(config);

    double sup_x0 = 0.0;
    for (const Vec& x : ensemble.positions) sup_x0 = std::max(sup_x0, x.norm());
    double radius = std::max(sup_x0, config.profile.bound());
    double eps_dt = config.dt * config.kernel.sup_bound() * 2.0 * radius;

    Trajectory traj;
    traj.confinement_radius = radius + eps_dt;

    std::vector<double> weights;
    auto record = [&](double t) {
        weights.assign(ensemble.size(), 1.0 / static_cast<double>(ensemble.size()));
        DiagnosticsRecord r;
        r.t = t;
        r.n = ensemble.population;
        r.m = static_cast<double>(ensemble.size());
        Moments mo = moments(ensemble.positions, weights);
        r.m0 = mo.m0;
        r.m1 = mo.m1;
        r.m2 = mo.m2;
        Vec x_in = config.profile.evaluate(t, ensemble.population);
        r.variance = variance(ensemble.positions, weights, mo.m1);
        r.variance_inflow = variance_about(ensemble.positions, weights, x_in);
        r.dissipation = dissipation(ensemble.positions, weights, config.kernel);
        r.m1_dist = (mo.m1 - x_in).norm2();
        r.c1_residual = c1_residual(config.profile, path, t);
        traj.records.push_back(std::move(r));
        if (config.keep_snapshots)
            traj.snapshots.push_back({t, ensemble.positions, ensemble.birth_times});
    };

    record(0.0);
    auto steps = static_cast<std::size_t>(std::llround(config.t_end / config.dt));
    for (std::size_t k = 0; k < steps; ++k) {
        traj.inserted_total +=
            step(ensemble, config.kernel, config.profile, path, config.dt, config.integrator,
                 config.m_max);
        for (const Vec& x : ensemble.positions) {
            if (!x.finite()) throw ResourceError("non-finite particle state");
            if (x.norm() > traj.confinement_radius) ++traj.confinement_violations;
        }
        if ((k + 1) % config.snapshot_stride == 0 || k + 1 == steps)
            record(static_cast<double>(k + 1) * config.dt);
    }
    traj.final_state = {ensemble.t, ensemble.positions, ensemble.birth_times};
    traj.final_clusters = detect_clusters(ensemble.positions, config.link_radius, config.rho);
    return traj;
}

}  // namespace agora
