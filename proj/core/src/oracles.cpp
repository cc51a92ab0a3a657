#include "agora/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace agora {

namespace {

/// Trapezoid of s -> f(s, N_s) dN_s on the path grid up to t, striding over
/// every `stride`-th node (stride 2 gives the step-halving comparison).
template <typename F>
Vec path_integral(const PopulationPath& path, double t, int dim, std::size_t stride, F&& f) {
    Vec acc(dim, 0.0);
    const auto& rate = path.rate();
    auto density = [&](double s, double n) { return f(s, n) * (rate(s, n) * n); };
    double t_prev = path.grid_time(0);
    Vec prev = density(t_prev, path.grid_value(0));
    for (std::size_t k = stride; t_prev < t; k += stride) {
        std::size_t idx = std::min(k, path.grid_size() - 1);
        double tk = std::min(path.grid_time(idx), t);
        double nk = tk == path.grid_time(idx) ? path.grid_value(idx) : path.value(tk);
        Vec cur = density(tk, nk);
        acc += (cur + prev) * (0.5 * (tk - t_prev));
        prev = cur;
        t_prev = tk;
        if (idx == path.grid_size() - 1) break;
    }
    return acc;
}

}  // namespace

OracleResult m1_closed_form(const InflowProfile& profile, const PopulationPath& path,
                            const Vec& m1_0, double t) {
    if (t < 0.0 || t > path.horizon() + 1e-9 * std::max(1.0, path.horizon()))
        throw std::out_of_range("m1_closed_form: t outside path horizon");
    t = std::min(t, path.horizon());
    double n_t = path.value(t);
    double ratio = path.n0() / n_t;

    OracleResult res;
    res.t = t;
    if (profile.kind() == InflowProfile::Kind::constant) {
        Vec xc = profile.evaluate(t, n_t);
        res.value = xc + (m1_0 - xc) * ratio;
        res.method = OracleResult::Method::closed_form;
        return res;
    }

    auto x_of = [&](double s, double n) { return profile.evaluate(s, n); };
    Vec fine = path_integral(path, t, profile.dim(), 1, x_of);
    Vec coarse = path_integral(path, t, profile.dim(), 2, x_of);
    res.value = m1_0 * ratio + fine * (1.0 / n_t);
    res.method = OracleResult::Method::quadrature;
    res.estimated_error = (fine - coarse).norm() / n_t;
    return res;
}

OracleResult m1_limit(const InflowProfile& profile, const PopulationPath& path, const Vec& m1_0) {
    if (path.regime() != GrowthRegime::finite)
        throw std::invalid_argument("m1_limit: growth regime is not finite");

    double n_t = path.value(path.horizon());
    double n_inf = n_t;
    const GrowthRate& rate = path.rate();
    if (rate.kind() == GrowthRate::Kind::power_decay && rate.alpha() > 1.0) {
        // int_0^inf (1+s)^(-alpha) ds = 1/(alpha-1), so N_inf = N0 e^{1/(alpha-1)}
        n_inf = path.n0() * std::exp(1.0 / (rate.alpha() - 1.0));
    }
    if (!(n_t >= 0.999 * n_inf))
        throw std::invalid_argument("m1_limit: path horizon too short (N_T < 0.999 N_inf)");

    auto x_of = [&](double s, double n) { return profile.evaluate(s, n); };
    Vec fine = path_integral(path, path.horizon(), profile.dim(), 1, x_of);
    Vec coarse = path_integral(path, path.horizon(), profile.dim(), 2, x_of);

    OracleResult res;
    res.t = kTimeInfinity;
    res.value = m1_0 * (path.n0() / n_inf) + fine * (1.0 / n_inf);
    res.method = OracleResult::Method::quadrature;
    res.estimated_error =
        (fine - coarse).norm() / n_inf + profile.bound() * (n_inf - n_t) / n_inf;
    return res;
}

double variance_bound_const_x(double v_x_0, const PopulationPath& path, double t) {
    if (v_x_0 < 0.0) throw std::invalid_argument("variance_bound_const_x: negative variance");
    return v_x_0 * path.n0() / path.value(t);
}

double lemma3_average(const std::function<double(double)>& g, const PopulationPath& path,
                      double t) {
    double acc = 0.0;
    const auto& rate = path.rate();
    double t_prev = path.grid_time(0);
    double prev = g(t_prev) * rate(t_prev, path.grid_value(0)) * path.grid_value(0);
    for (std::size_t k = 1; k < path.grid_size() && t_prev < t; ++k) {
        double tk = std::min(path.grid_time(k), t);
        double nk = tk == path.grid_time(k) ? path.grid_value(k) : path.value(tk);
        double cur = g(tk) * rate(tk, nk) * nk;
        acc += 0.5 * (cur + prev) * (tk - t_prev);
        prev = cur;
        t_prev = tk;
    }
    return acc / path.value(t);
}

}  // namespace agora
