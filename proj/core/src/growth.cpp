#include "agora/growth.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agora {

std::string to_string(GrowthRegime r) {
    switch (r) {
        case GrowthRegime::finite: return "finite";
        case GrowthRegime::linear: return "linear";
        case GrowthRegime::subexponential: return "subexponential";
        case GrowthRegime::exponential: return "exponential";
        case GrowthRegime::superexponential: return "superexponential";
        case GrowthRegime::unclassified: return "unclassified";
    }
    return "unclassified";
}

GrowthRate GrowthRate::constant(double value) {
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("growth rate: constant value must be finite and >= 0");
    GrowthRate r;
    r.kind_ = Kind::constant;
    r.value_ = value;
    return r;
}

GrowthRate GrowthRate::power_decay(double alpha) {
    if (!std::isfinite(alpha)) throw std::invalid_argument("growth rate: alpha must be finite");
    GrowthRate r;
    r.kind_ = Kind::power_decay;
    r.alpha_ = alpha;
    return r;
}

GrowthRate GrowthRate::from_table(std::vector<std::pair<double, double>> points) {
    if (points.empty()) throw std::invalid_argument("growth rate: empty table");
    std::sort(points.begin(), points.end());
    for (const auto& [t, b] : points) {
        if (!std::isfinite(t) || !std::isfinite(b) || b < 0.0)
            throw std::invalid_argument("growth rate: table entries must be finite with b >= 0");
    }
    GrowthRate r;
    r.kind_ = Kind::table;
    r.table_ = std::move(points);
    return r;
}

GrowthRate GrowthRate::custom(std::function<double(double, double)> fn) {
    if (!fn) throw std::invalid_argument("growth rate: null custom function");
    GrowthRate r;
    r.kind_ = Kind::custom;
    r.custom_ = std::move(fn);
    return r;
}

double GrowthRate::operator()(double t, double n) const {
    switch (kind_) {
        case Kind::constant: return value_;
        case Kind::power_decay: return std::pow(1.0 + t, -alpha_);
        case Kind::table: {
            // piecewise linear, clamped outside the tabulated range
            if (t <= table_.front().first) return table_.front().second;
            if (t >= table_.back().first) return table_.back().second;
            auto it = std::upper_bound(table_.begin(), table_.end(), std::make_pair(t, 0.0),
                                       [](const auto& a, const auto& b) { return a.first < b.first; });
            auto lo = std::prev(it);
            double w = (t - lo->first) / (it->first - lo->first);
            return (1.0 - w) * lo->second + w * it->second;
        }
        case Kind::custom: return custom_(t, n);
    }
    return 0.0;
}

GrowthRegime classify_growth(const GrowthRate& rate) {
    switch (rate.kind()) {
        case GrowthRate::Kind::constant:
            return rate.value() > 0.0 ? GrowthRegime::exponential : GrowthRegime::finite;
        case GrowthRate::Kind::power_decay: {
            double a = rate.alpha();
            if (a > 1.0) return GrowthRegime::finite;
            if (a == 1.0) return GrowthRegime::linear;
            if (a > 0.0) return GrowthRegime::subexponential;
            if (a == 0.0) return GrowthRegime::exponential;
            return GrowthRegime::superexponential;
        }
        default: return GrowthRegime::unclassified;
    }
}

PopulationPath::PopulationPath(GrowthRate rate, double n0, double t_end, double dt,
                               std::vector<double> t, std::vector<double> n,
                               std::vector<double> bint)
    : rate_(std::move(rate)),
      n0_(n0),
      dt_(dt),
      regime_(classify_growth(rate_)),
      t_(std::move(t)),
      n_(std::move(n)),
      bint_(std::move(bint)) {
    (void)t_end;
}

std::size_t PopulationPath::cell(double t) const {
    if (t < 0.0 || t > t_.back() + 1e-12 * std::max(1.0, t_.back()))
        throw std::out_of_range("PopulationPath: time outside horizon");
    if (t >= t_.back()) return t_.size() - 2;
    auto k = static_cast<std::size_t>(t / dt_);
    if (k >= t_.size() - 1) k = t_.size() - 2;
    // guard against floating point edge cases at cell boundaries
    while (k > 0 && t < t_[k]) --k;
    while (k + 2 < t_.size() && t >= t_[k + 1]) ++k;
    return k;
}

namespace {
double hermite(double t0, double t1, double y0, double y1, double d0, double d1, double t) {
    double h = t1 - t0;
    double u = (t - t0) / h;
    double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * h * d0 +
           (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * h * d1;
}
}  // namespace

double PopulationPath::value(double t) const {
    if (t_.size() == 1) return n_[0];
    std::size_t k = cell(t);
    double b0 = rate_(t_[k], n_[k]);
    double b1 = rate_(t_[k + 1], n_[k + 1]);
    return hermite(t_[k], t_[k + 1], n_[k], n_[k + 1], b0 * n_[k], b1 * n_[k + 1], t);
}

double PopulationPath::rate_integral(double t) const {
    if (t_.size() == 1) return 0.0;
    std::size_t k = cell(t);
    double b0 = rate_(t_[k], n_[k]);
    double b1 = rate_(t_[k + 1], n_[k + 1]);
    return hermite(t_[k], t_[k + 1], bint_[k], bint_[k + 1], b0, b1, t);
}

double PopulationPath::rate_at(double t) const { return rate_(t, value(t)); }

PopulationPath integrate_population(const GrowthRate& rate, double n0, double t_end, double dt) {
    if (!(n0 > 0.0)) throw std::invalid_argument("integrate_population: N0 must be > 0");
    if (!(dt > 0.0)) throw std::invalid_argument("integrate_population: dt must be > 0");
    if (t_end < 0.0) throw std::invalid_argument("integrate_population: t_end must be >= 0");

    auto eval = [&](double t, double n) {
        double b = rate(t, n);
        if (!std::isfinite(b)) throw std::invalid_argument("growth rate evaluated non-finite");
        if (b < 0.0) throw std::invalid_argument("growth rate evaluated negative");
        return b;
    };

    auto steps = static_cast<std::size_t>(std::llround(t_end / dt));
    std::vector<double> ts, ns, bs;
    ts.reserve(steps + 1);
    ns.reserve(steps + 1);
    bs.reserve(steps + 1);
    ts.push_back(0.0);
    ns.push_back(n0);
    bs.push_back(0.0);

    double n = n0, bint = 0.0;
    for (std::size_t k = 0; k < steps; ++k) {
        double t = static_cast<double>(k) * dt;
        // RK4 on the joint state (N, B) with dN = bN, dB = b
        double b1 = eval(t, n);
        double k1n = b1 * n;
        double b2 = eval(t + 0.5 * dt, n + 0.5 * dt * k1n);
        double k2n = b2 * (n + 0.5 * dt * k1n);
        double b3 = eval(t + 0.5 * dt, n + 0.5 * dt * k2n);
        double k3n = b3 * (n + 0.5 * dt * k2n);
        double b4 = eval(t + dt, n + dt * k3n);
        double k4n = b4 * (n + dt * k3n);
        n += dt / 6.0 * (k1n + 2 * k2n + 2 * k3n + k4n);
        bint += dt / 6.0 * (b1 + 2 * b2 + 2 * b3 + b4);
        ts.push_back(static_cast<double>(k + 1) * dt);
        ns.push_back(n);
        bs.push_back(bint);
    }
    return PopulationPath(rate, n0, t_end, dt, std::move(ts), std::move(ns), std::move(bs));
}

double generalized_inverse(const PopulationPath& path, double s) {
    if (s < 0.0) throw std::invalid_argument("generalized_inverse: s must be >= 0");
    if (s < path.n0()) return 0.0;
    std::size_t m = path.grid_size();
    // first grid index with N > s
    std::size_t lo = 0, hi = m;
    while (lo < hi) {
        std::size_t mid = (lo + hi) / 2;
        if (path.grid_value(mid) > s)
            hi = mid;
        else
            lo = mid + 1;
    }
    if (lo >= m) return kTimeInfinity;
    if (lo == 0) return 0.0;
    // refine by bisection on the interpolant inside cell [lo-1, lo]
    double a = path.grid_time(lo - 1), b = path.grid_time(lo);
    for (int it = 0; it < 60 && b - a > 1e-15 * std::max(1.0, b); ++it) {
        double mid = 0.5 * (a + b);
        if (path.value(mid) > s)
            b = mid;
        else
            a = mid;
    }
    return b;
}

}  // namespace agora
