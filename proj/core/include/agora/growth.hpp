#pragma once

#include <functional>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace agora {

/// Asymptotic regime of the population N_t for t -> infinity.
enum class GrowthRegime {
    finite,
    linear,
    subexponential,
    exponential,
    superexponential,
    unclassified,
};

std::string to_string(GrowthRegime r);

/// Nonnegative growth rate b(t, N) driving dN/dt = b(t,N) N.
///
/// power_decay is regularized to b(t) = (1+t)^(-alpha) so the rate stays
/// continuous at t = 0 while keeping the t^(-alpha) tail.
class GrowthRate {
public:
    enum class Kind { constant, power_decay, table, custom };

    static GrowthRate constant(double value);
    static GrowthRate power_decay(double alpha);
    static GrowthRate from_table(std::vector<std::pair<double, double>> points);
    static GrowthRate custom(std::function<double(double, double)> fn);

    double operator()(double t, double n) const;

    Kind kind() const { return kind_; }
    double alpha() const { return alpha_; }
    double value() const { return value_; }

private:
    GrowthRate() = default;
    Kind kind_ = Kind::constant;
    double value_ = 0.0;
    double alpha_ = 0.0;
    std::vector<std::pair<double, double>> table_;
    std::function<double(double, double)> custom_;
};

GrowthRegime classify_growth(const GrowthRate& rate);

/// Trajectory of N_t on a fixed grid, with the cumulative rate integral
/// B(t) = int_0^t b(s, N_s) ds stored alongside. Immutable once built.
class PopulationPath {
public:
    PopulationPath(GrowthRate rate, double n0, double t_end, double dt,
                   std::vector<double> t, std::vector<double> n, std::vector<double> bint);

    double n0() const { return n0_; }
    double dt() const { return dt_; }
    double horizon() const { return t_.back(); }
    const GrowthRate& rate() const { return rate_; }
    GrowthRegime regime() const { return regime_; }

    std::size_t grid_size() const { return t_.size(); }
    double grid_time(std::size_t k) const { return t_[k]; }
    double grid_value(std::size_t k) const { return n_[k]; }
    double grid_rate_integral(std::size_t k) const { return bint_[k]; }

    /// N(t) by cubic Hermite interpolation on the grid (derivative b N is known).
    double value(double t) const;
    /// int_0^t b(s, N_s) ds, same interpolation scheme.
    double rate_integral(double t) const;
    /// b(t, N_t).
    double rate_at(double t) const;

private:
    std::size_t cell(double t) const;

    GrowthRate rate_;
    double n0_ = 1.0;
    double dt_ = 0.0;
    GrowthRegime regime_ = GrowthRegime::unclassified;
    std::vector<double> t_, n_, bint_;
};

/// Integrates dN/dt = b(t,N) N with classical RK4 on the grid {0, dt, ..., t_end}.
/// Rejects non-finite or negative rate samples.
PopulationPath integrate_population(const GrowthRate& rate, double n0, double t_end, double dt);

constexpr double kTimeInfinity = std::numeric_limits<double>::infinity();

/// Generalized inverse inf{t : N_t > s}. Returns kTimeInfinity when the path
/// never exceeds s within its horizon.
double generalized_inverse(const PopulationPath& path, double s);

}  // namespace agora
