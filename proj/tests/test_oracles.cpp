#include <cmath>

#include "doctest.h"

#include "agora/oracles.hpp"

using namespace agora;

TEST_CASE("mean closed form") {
    SUBCASE("constant inflow") {
        auto prof = InflowProfile::constant(Vec::scalar(0.5));
        PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 8.0, 1e-3);
        auto r = m1_closed_form(prof, path, Vec::scalar(-1.0), 3.0);
        CHECK(r.method == OracleResult::Method::closed_form);
        CHECK(r.value[0] ==
              doctest::Approx(0.5 + (-1.0 - 0.5) * std::exp(-3.0)).epsilon(1e-8));
    }
    SUBCASE("oscillating inflow under exponential growth") {
        auto prof = InflowProfile::sinusoidal(Vec::scalar(1.0), 1.0, 0.0);
        PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 12.0, 1e-3);
        double t = 10.0;
        auto r = m1_closed_form(prof, path, Vec::scalar(0.0), t);
        double expect = 0.5 * (std::sin(t) - std::cos(t)) + 0.5 * std::exp(-t);
        CHECK(r.method == OracleResult::Method::quadrature);
        CHECK(r.value[0] == doctest::Approx(expect).epsilon(1e-4));
    }
    SUBCASE("no growth keeps the initial mean") {
        auto prof = InflowProfile::sinusoidal(Vec::scalar(1.0), 1.0, 0.0);
        PopulationPath path = integrate_population(GrowthRate::constant(0.0), 1.0, 2.0, 1e-2);
        auto r = m1_closed_form(prof, path, Vec::scalar(0.3), 2.0);
        CHECK(r.value[0] == doctest::Approx(0.3).epsilon(1e-10));
    }
    SUBCASE("quadrature error estimate bounds the discretization error") {
        auto prof = InflowProfile::sinusoidal(Vec::scalar(1.0), 1.0, 0.0);
        PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 12.0, 1e-3);
        double t = 10.0;
        auto r = m1_closed_form(prof, path, Vec::scalar(0.0), t);
        double exact = 0.5 * (std::sin(t) - std::cos(t)) + 0.5 * std::exp(-t);
        CHECK(std::abs(r.value[0] - exact) <= 10.0 * r.estimated_error + 1e-12);
    }
}

TEST_CASE("limiting mean for finite total population") {
    // alpha = 2: N_inf = N0 e^{1/(alpha-1)} = e
    PopulationPath path = integrate_population(GrowthRate::power_decay(2.0), 1.0, 2000.0, 0.05);
    SUBCASE("constant inflow formula") {
        auto prof = InflowProfile::constant(Vec::scalar(1.0));
        auto r = m1_limit(prof, path, Vec::scalar(0.0));
        double n_inf = std::exp(1.0);
        double expect = 1.0 - 1.0 / n_inf;  // X_c + (m1_0 - X_c) N0/N_inf
        CHECK(r.value[0] == doctest::Approx(expect).epsilon(1e-3));
    }
    SUBCASE("starting on the inflow opinion stays there") {
        auto prof = InflowProfile::constant(Vec::scalar(0.7));
        auto r = m1_limit(prof, path, Vec::scalar(0.7));
        // exact up to the truncated tail of the horizon
        CHECK(std::abs(r.value[0] - 0.7) <= 2.0 * r.estimated_error + 1e-9);
    }
    SUBCASE("non-finite growth has no limit") {
        PopulationPath exp_path =
            integrate_population(GrowthRate::constant(1.0), 1.0, 10.0, 1e-2);
        auto prof = InflowProfile::constant(Vec::scalar(0.5));
        CHECK_THROWS(m1_limit(prof, exp_path, Vec::scalar(0.0)));
    }
    SUBCASE("a horizon short of the limit is rejected") {
        PopulationPath short_path =
            integrate_population(GrowthRate::power_decay(2.0), 1.0, 100.0, 0.05);
        auto prof = InflowProfile::constant(Vec::scalar(0.5));
        CHECK_THROWS(m1_limit(prof, short_path, Vec::scalar(0.0)));
    }
}

TEST_CASE("variance envelope for constant inflow") {
    PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 3.0, 1e-3);
    CHECK(variance_bound_const_x(2.0, path, std::log(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-6));
    PopulationPath flat = integrate_population(GrowthRate::constant(0.0), 1.0, 3.0, 1e-2);
    CHECK(variance_bound_const_x(2.0, flat, 3.0) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("population-weighted averages of a scalar signal") {
    PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 30.0, 1e-2);
    SUBCASE("constant signal") {
        auto r = lemma3_average([](double) { return 0.7; }, path, 5.0);
        CHECK(r == doctest::Approx(0.7 * (1.0 - std::exp(-5.0))).epsilon(1e-4));
    }
    SUBCASE("vanishing signal averages to zero") {
        auto g = [](double s) { return 1.0 / (1.0 + s); };
        double a10 = lemma3_average(g, path, 10.0);
        double a30 = lemma3_average(g, path, 30.0);
        CHECK(a30 < a10);
        CHECK(a30 < 0.05);
    }
    SUBCASE("zero signal") {
        CHECK(lemma3_average([](double) { return 0.0; }, path, 10.0) == 0.0);
    }
}

TEST_CASE("averaging identity links the mean to the derivative integral") {
    // m1(t) - X(t, N_t) + (C1' integral) has magnitude |m1_0 - X(0, N0)| N0/N_t
    PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 10.0, 1e-3);
    std::vector<InflowProfile> profiles;
    profiles.push_back(InflowProfile::sinusoidal(Vec::scalar(0.8), 1.0, 0.3));
    profiles.push_back(
        InflowProfile::population_power(Vec::scalar(0.2), Vec::scalar(1.0), 0.5, 1.0));
    profiles.push_back(InflowProfile::eventually_constant(Vec::scalar(1.0), 2.0));
    Vec m1_0 = Vec::scalar(-0.5);
    for (const auto& prof : profiles) {
        for (double t : {3.0, 7.0}) {
            Vec lhs = m1_closed_form(prof, path, m1_0, t).value -
                      prof.evaluate(t, path.value(t)) + c1_prime_integral(prof, path, t);
            double rhs = (m1_0 - prof.evaluate(0.0, 1.0)).norm() * std::exp(-t);
            CHECK(lhs.norm() == doctest::Approx(rhs).epsilon(5e-3));
        }
    }
}
