#include "agora/inflow.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agora {

InflowProfile InflowProfile::constant(Vec xc) {
    InflowProfile p;
    p.kind_ = Kind::constant;
    p.dim_ = xc.dim();
    p.xc_ = xc;
    p.bound_ = xc.norm();
    return p;
}

InflowProfile InflowProfile::eventually_constant(Vec xc, double t0) {
    if (!(t0 > 0.0)) throw std::invalid_argument("inflow: eventually_constant needs t0 > 0");
    InflowProfile p;
    p.kind_ = Kind::eventually_constant;
    p.dim_ = xc.dim();
    p.xc_ = xc;
    p.t0_ = t0;
    p.bound_ = xc.norm();
    return p;
}

InflowProfile InflowProfile::sinusoidal(Vec amplitude, double frequency, double phase) {
    InflowProfile p;
    p.kind_ = Kind::sinusoidal;
    p.dim_ = amplitude.dim();
    p.amplitude_ = amplitude;
    p.frequency_ = frequency;
    p.phase_ = phase;
    p.bound_ = amplitude.norm();
    return p;
}

InflowProfile InflowProfile::population_power(Vec c, Vec big_c, double eps, double n_min) {
    if (c.dim() != big_c.dim()) throw std::invalid_argument("inflow: dimension mismatch");
    if (!(eps > 0.0)) throw std::invalid_argument("inflow: population_power needs eps > 0");
    if (!(n_min > 0.0)) throw std::invalid_argument("inflow: population_power needs N0 > 0");
    InflowProfile p;
    p.kind_ = Kind::population_power;
    p.dim_ = c.dim();
    p.c_ = c;
    p.big_c_ = big_c;
    p.eps_ = eps;
    // populations only grow, so N^-eps is maximal at n_min
    p.bound_ = c.norm() + big_c.norm() * std::pow(n_min, -eps);
    return p;
}

InflowProfile InflowProfile::from_table(std::vector<std::pair<double, Vec>> points) {
    if (points.empty()) throw std::invalid_argument("inflow: empty table");
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    InflowProfile p;
    p.kind_ = Kind::table;
    p.dim_ = points.front().second.dim();
    double bound = 0.0;
    for (const auto& [t, v] : points) {
        if (v.dim() != p.dim_) throw std::invalid_argument("inflow: table dimension mismatch");
        if (!v.finite()) throw std::invalid_argument("inflow: non-finite table value");
        bound = std::max(bound, v.norm());
        (void)t;
    }
    p.bound_ = bound;
    p.table_ = std::move(points);
    return p;
}

Vec InflowProfile::evaluate(double t, double n) const {
    if (t < 0.0) throw std::invalid_argument("inflow: t must be >= 0");
    if (!(n > 0.0)) throw std::invalid_argument("inflow: N must be > 0");
    switch (kind_) {
        case Kind::constant: return xc_;
        case Kind::eventually_constant: {
            if (t >= t0_) return xc_;
            double u = 1.0 - t / t0_;
            return xc_ * (1.0 - u * u);
        }
        case Kind::sinusoidal: return amplitude_ * std::sin(frequency_ * t + phase_);
        case Kind::population_power: return c_ + big_c_ * std::pow(n, -eps_);
        case Kind::table: {
            if (t <= table_.front().first) return table_.front().second;
            if (t >= table_.back().first) return table_.back().second;
            auto it = std::upper_bound(
                table_.begin(), table_.end(), t,
                [](double tt, const auto& e) { return tt < e.first; });
            auto lo = std::prev(it);
            double w = (t - lo->first) / (it->first - lo->first);
            return lo->second * (1.0 - w) + it->second * w;
        }
    }
    return xc_;
}

Vec InflowProfile::time_derivative(double t, double n, double b) const {
    switch (kind_) {
        case Kind::constant: return Vec(dim_, 0.0);
        case Kind::eventually_constant: {
            if (t >= t0_) return Vec(dim_, 0.0);
            double u = 1.0 - t / t0_;
            return xc_ * (2.0 * u / t0_);
        }
        case Kind::sinusoidal:
            return amplitude_ * (frequency_ * std::cos(frequency_ * t + phase_));
        case Kind::population_power:
            // X_t = 0, X_N = -eps C N^(-eps-1), Ndot = b N
            return big_c_ * (-eps_ * std::pow(n, -eps_) * b);
        case Kind::table:
            throw std::invalid_argument("inflow: table profile is not differentiable");
    }
    return Vec(dim_, 0.0);
}

std::string InflowProfile::name() const {
    switch (kind_) {
        case Kind::constant: return "constant";
        case Kind::eventually_constant: return "eventually_constant";
        case Kind::sinusoidal: return "sinusoidal";
        case Kind::population_power: return "population_power";
        case Kind::table: return "table";
    }
    return "constant";
}

namespace {

/// Trapezoid of s -> f(s) against ds on the path grid up to time t, with a
/// fractional last cell handled by interpolation.
template <typename F>
Vec trapezoid_on_path(const PopulationPath& path, double t, int dim, F&& integrand) {
    if (t < 0.0 || t > path.horizon() + 1e-12 * std::max(1.0, path.horizon()))
        throw std::out_of_range("inflow quadrature: time outside path horizon");
    t = std::min(t, path.horizon());
    Vec acc(dim, 0.0);
    std::size_t m = path.grid_size();
    Vec prev = integrand(path.grid_time(0), path.grid_value(0));
    double t_prev = path.grid_time(0);
    for (std::size_t k = 1; k < m && t_prev < t; ++k) {
        double tk = std::min(path.grid_time(k), t);
        double nk = tk == path.grid_time(k) ? path.grid_value(k) : path.value(tk);
        Vec cur = integrand(tk, nk);
        acc += (cur + prev) * (0.5 * (tk - t_prev));
        prev = cur;
        t_prev = tk;
    }
    return acc;
}

}  // namespace

Vec c1_average(const InflowProfile& profile, const PopulationPath& path, double t) {
    const auto& rate = path.rate();
    Vec integral = trapezoid_on_path(path, t, profile.dim(), [&](double s, double n) {
        return profile.evaluate(s, n) * (rate(s, n) * n);  // X dN = X b N ds
    });
    return integral * (1.0 / path.value(t));
}

double c1_residual(const InflowProfile& profile, const PopulationPath& path, double t) {
    return (c1_average(profile, path, t) - profile.evaluate(t, path.value(t))).norm();
}

Vec c1_prime_integral(const InflowProfile& profile, const PopulationPath& path, double t) {
    if (!profile.differentiable())
        throw std::invalid_argument("c1_prime_integral: profile not differentiable");
    const auto& rate = path.rate();
    Vec integral = trapezoid_on_path(path, t, profile.dim(), [&](double s, double n) {
        return profile.time_derivative(s, n, rate(s, n)) * n;
    });
    return integral * (1.0 / path.value(t));
}

}  // namespace agora
