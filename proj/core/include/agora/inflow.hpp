#pragma once

#include <string>
#include <utility>
#include <vector>

#include "agora/growth.hpp"
#include "agora/vec.hpp"

namespace agora {

/// Boundary profile X(t, N_t): the opinion assigned to agents entering the
/// system at time t. Uniformly bounded by bound() in Euclidean norm.
class InflowProfile {
public:
    enum class Kind { constant, eventually_constant, sinusoidal, population_power, table };

    static InflowProfile constant(Vec xc);
    /// Ramps C^1-smoothly from 0 at t = 0 to xc at t = t0, constant after.
    static InflowProfile eventually_constant(Vec xc, double t0);
    /// amplitude * sin(frequency * t + phase), componentwise amplitude.
    static InflowProfile sinusoidal(Vec amplitude, double frequency, double phase);
    /// X(N) = c + C * N^(-eps); depends on the population only.
    static InflowProfile population_power(Vec c, Vec big_c, double eps, double n_min);
    /// Piecewise-linear in t, clamped outside the tabulated range. Not
    /// differentiable for the (C1') quadrature.
    static InflowProfile from_table(std::vector<std::pair<double, Vec>> points);

    Vec evaluate(double t, double n) const;
    /// Total derivative dX/dt = X_t + X_N * b * N (analytic per preset).
    Vec time_derivative(double t, double n, double b) const;

    bool differentiable() const { return kind_ != Kind::table; }
    double bound() const { return bound_; }
    int dim() const { return dim_; }
    Kind kind() const { return kind_; }
    std::string name() const;

private:
    InflowProfile() = default;
    Kind kind_ = Kind::constant;
    int dim_ = 1;
    double bound_ = 0.0;
    Vec xc_{1};
    double t0_ = 0.0;
    Vec amplitude_{1};
    double frequency_ = 1.0, phase_ = 0.0;
    Vec c_{1}, big_c_{1};
    double eps_ = 0.0;
    std::vector<std::pair<double, Vec>> table_;
};

/// (1/N_t) int_0^t X(s, N_s) dN_s by trapezoidal quadrature on the path grid.
Vec c1_average(const InflowProfile& profile, const PopulationPath& path, double t);

/// |c1_average(t) - X(t, N_t)|; condition (C1) holds iff this vanishes.
double c1_residual(const InflowProfile& profile, const PopulationPath& path, double t);

/// (1/N_t) int_0^t dX/dt(s, N_s) N_s ds; condition (C1') holds iff this
/// vanishes. Throws for non-differentiable profiles.
Vec c1_prime_integral(const InflowProfile& profile, const PopulationPath& path, double t);

}  // namespace agora
