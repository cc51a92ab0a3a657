#include "agora/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace agora {

Moments moments(std::span<const Vec> xs, std::span<const double> weights) {
    if (xs.empty()) throw std::invalid_argument("moments: empty state");
    Moments mo;
    mo.m1 = Vec(xs[0].dim(), 0.0);
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mo.m1 += xs[i] * weights[i];
        mo.m2 += weights[i] * xs[i].norm2();
    }
    return mo;
}

Moments moments_equal_weight(std::span<const Vec> xs) {
    if (xs.empty()) throw std::invalid_argument("moments: empty ensemble");
    Moments mo;
    mo.m1 = Vec(xs[0].dim(), 0.0);
    for (const Vec& x : xs) {
        mo.m1 += x;
        mo.m2 += x.norm2();
    }
    double inv = 1.0 / static_cast<double>(xs.size());
    mo.m1 *= inv;
    mo.m2 *= inv;
    return mo;
}

double variance(std::span<const Vec> xs, std::span<const double> weights, const Vec& m1) {
    return variance_about(xs, weights, m1);
}

double variance_about(std::span<const Vec> xs, std::span<const double> weights, const Vec& x_ref) {
    double v = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) v += weights[i] * (xs[i] - x_ref).norm2();
    return v;
}

double dissipation(std::span<const Vec> xs, std::span<const double> weights,
                   const InfluenceKernel& kernel) {
    if (xs.empty()) throw std::invalid_argument("dissipation: empty state");
    if (kernel.kind() == InfluenceKernel::Kind::type1_constant) {
        // psi constant: D = 2 psi (m2 - |m1|^2)
        Moments mo = moments(xs, weights);
        return 2.0 * kernel(0.0) * std::max(0.0, mo.m2 - mo.m1.norm2());
    }
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        for (std::size_t j = i + 1; j < xs.size(); ++j) {
            double r2 = (xs[i] - xs[j]).norm2();
            d += 2.0 * weights[i] * weights[j] * kernel(std::sqrt(r2)) * r2;
        }
    }
    return d;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int a) {
        while (parent[a] != a) a = parent[a] = parent[parent[a]];
        return a;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[b] = a;
    }
};

}  // namespace

ClusterReport detect_clusters(std::span<const Vec> xs, double link_radius, double rho) {
    if (!(link_radius > 0.0)) throw std::invalid_argument("detect_clusters: link_radius must be > 0");
    std::size_t m = xs.size();
    ClusterReport rep;
    rep.labels.assign(m, -1);
    if (m == 0) return rep;
    int dim = xs[0].dim();

    UnionFind uf(m);
    if (dim == 1) {
        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](int a, int b) { return xs[a][0] < xs[b][0]; });
        for (std::size_t k = 1; k < m; ++k) {
            if (xs[order[k]][0] - xs[order[k - 1]][0] <= link_radius)
                uf.unite(order[k - 1], order[k]);
        }
    } else {
        double r2 = link_radius * link_radius;
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if ((xs[i] - xs[j]).norm2() <= r2) uf.unite(static_cast<int>(i), static_cast<int>(j));
    }

    std::vector<int> root_to_cluster(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        int r = uf.find(static_cast<int>(i));
        if (root_to_cluster[r] < 0) {
            root_to_cluster[r] = rep.count++;
            rep.centers.emplace_back(dim, 0.0);
            rep.masses.push_back(0.0);
        }
        int c = root_to_cluster[r];
        rep.labels[i] = c;
        rep.centers[c] += xs[i];
        rep.masses[c] += 1.0;
    }
    for (int c = 0; c < rep.count; ++c) {
        rep.centers[c] *= 1.0 / rep.masses[c];
        rep.masses[c] /= rho;
    }

    rep.max_intra_diameter = 0.0;
    if (dim == 1) {
        std::vector<double> lo(rep.count, 1e300), hi(rep.count, -1e300);
        for (std::size_t i = 0; i < m; ++i) {
            lo[rep.labels[i]] = std::min(lo[rep.labels[i]], xs[i][0]);
            hi[rep.labels[i]] = std::max(hi[rep.labels[i]], xs[i][0]);
        }
        for (int c = 0; c < rep.count; ++c)
            rep.max_intra_diameter = std::max(rep.max_intra_diameter, hi[c] - lo[c]);
    } else {
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i + 1; j < m; ++j)
                if (rep.labels[i] == rep.labels[j])
                    rep.max_intra_diameter =
                        std::max(rep.max_intra_diameter, (xs[i] - xs[j]).norm());
    }
    rep.min_inter_distance = rep.count > 1 ? 1e300 : 0.0;
    for (int a = 0; a < rep.count; ++a)
        for (int b = a + 1; b < rep.count; ++b)
            rep.min_inter_distance =
                std::min(rep.min_inter_distance, (rep.centers[a] - rep.centers[b]).norm());
    return rep;
}

double fit_decay_exponent(std::span<const double> ts, std::span<const double> vs, double t_lo,
                          double t_hi) {
    if (ts.size() != vs.size()) throw std::invalid_argument("fit_decay_exponent: size mismatch");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        if (ts[i] < t_lo || ts[i] > t_hi) continue;
        if (!(vs[i] > 0.0)) continue;  // shrink the window past non-positive samples
        double x = std::log(ts[i]), y = std::log(vs[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 2) throw std::invalid_argument("fit_decay_exponent: fewer than two usable samples");
    double dn = static_cast<double>(n);
    double slope = (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
    return -slope;
}

double variance_identity_residual(const DiagnosticsRecord& a, const DiagnosticsRecord& b,
                                  double rate_mid) {
    double dt = b.t - a.t;
    if (!(dt > 0.0)) throw std::invalid_argument("variance_identity_residual: records not ordered");
    double dv = (b.variance - a.variance) / dt;
    double v_mid = 0.5 * (a.variance + b.variance);
    double m1d_mid = 0.5 * (a.m1_dist + b.m1_dist);
    double d_mid = 0.5 * (a.dissipation + b.dissipation);
    return std::abs(dv - (-rate_mid * v_mid + rate_mid * m1d_mid - d_mid));
}

}  // namespace agora
