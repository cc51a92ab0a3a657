#pragma once

#include <functional>

#include "agora/growth.hpp"
#include "agora/inflow.hpp"
#include "agora/vec.hpp"

namespace agora {

/// Reference value with a quadrature error estimate (step-halving for
/// quadrature results, 0 for closed forms).
struct OracleResult {
    enum class Method { closed_form, quadrature };
    double t = 0.0;
    Vec value{1};
    Method method = Method::quadrature;
    double estimated_error = 0.0;
};

/// Mean of the opinion profile by the integrating-factor solution:
/// m1(t) = (N0/N_t) m1(0) + (1/N_t) int_0^t X dN.
/// Constant inflow collapses to the closed form X_c + (m1(0)-X_c) N0/N_t.
OracleResult m1_closed_form(const InflowProfile& profile, const PopulationPath& path,
                            const Vec& m1_0, double t);

/// Limit of m1 for finite total population:
/// (N0/N_inf) m1(0) + (1/N_inf) int_0^inf X dN.
/// Requires the path horizon to reach N_T >= 0.999 N_inf; the truncated tail
/// contributes at most X_B (N_inf - N_T)/N_inf to estimated_error.
OracleResult m1_limit(const InflowProfile& profile, const PopulationPath& path, const Vec& m1_0);

/// Variance-about-inflow envelope for constant X:
/// V_X(t) <= V_X(0) e^{-int b} = V_X(0) N0/N_t.
double variance_bound_const_x(double v_x_0, const PopulationPath& path, double t);

/// (1/N_t) int_0^t g(s) dN_s for bounded g; vanishes as t -> infinity when
/// g -> 0 and N_inf = infinity.
double lemma3_average(const std::function<double(double)>& g, const PopulationPath& path,
                      double t);

}  // namespace agora
