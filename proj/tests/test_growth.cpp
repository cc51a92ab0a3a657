#include <cmath>

#include "doctest.h"

#include "agora/growth.hpp"

using namespace agora;

TEST_CASE("zero rate keeps the population constant") {
    PopulationPath p = integrate_population(GrowthRate::constant(0.0), 3.0, 10.0, 0.01);
    CHECK(p.value(0.0) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p.value(4.5) == doctest::Approx(3.0).epsilon(1e-12));
    CHECK(p.value(10.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("unit rate gives exponential growth") {
    PopulationPath p = integrate_population(GrowthRate::constant(1.0), 1.0, 2.0, 1e-3);
    CHECK(p.value(1.0) == doctest::Approx(std::exp(1.0)).epsilon(1e-9));
}

TEST_CASE("rate 1/(1+t) gives N_9 = 10") {
    // int_0^t (1+s)^-1 ds = ln(1+t), so N_t = N0 (1+t)
    PopulationPath p = integrate_population(GrowthRate::power_decay(1.0), 1.0, 9.0, 1e-3);
    CHECK(p.value(9.0) == doctest::Approx(10.0).epsilon(1e-8));
}

TEST_CASE("integration rejects invalid rates") {
    CHECK_THROWS(integrate_population(GrowthRate::constant(1.0), -1.0, 1.0, 0.01));
    CHECK_THROWS(integrate_population(GrowthRate::custom([](double, double) { return -1.0; }),
                                      1.0, 1.0, 0.01));
    CHECK_THROWS(integrate_population(
        GrowthRate::custom([](double t, double) { return t > 0.5 ? std::nan("") : 0.0; }), 1.0,
        1.0, 0.01));
}

TEST_CASE("growth regime classification") {
    CHECK(classify_growth(GrowthRate::power_decay(1.0)) == GrowthRegime::linear);
    CHECK(classify_growth(GrowthRate::power_decay(0.0)) == GrowthRegime::exponential);
    CHECK(classify_growth(GrowthRate::power_decay(2.0)) == GrowthRegime::finite);
    CHECK(classify_growth(GrowthRate::power_decay(0.5)) == GrowthRegime::subexponential);
    CHECK(classify_growth(GrowthRate::power_decay(-0.5)) == GrowthRegime::superexponential);
    CHECK(classify_growth(GrowthRate::constant(1.0)) == GrowthRegime::exponential);
    CHECK(classify_growth(GrowthRate::constant(0.0)) == GrowthRegime::finite);
    CHECK(classify_growth(GrowthRate::from_table({{0.0, 1.0}, {1.0, 0.5}})) ==
          GrowthRegime::unclassified);
}

TEST_CASE("generalized inverse") {
    PopulationPath p = integrate_population(GrowthRate::constant(1.0), 1.0, 3.0, 1e-3);
    SUBCASE("below the initial population") { CHECK(generalized_inverse(p, 0.5) == 0.0); }
    SUBCASE("inverts the exponential") {
        CHECK(generalized_inverse(p, std::exp(1.0)) == doctest::Approx(1.0).epsilon(1e-6));
    }
    SUBCASE("constant path never exceeds N0") {
        PopulationPath flat = integrate_population(GrowthRate::constant(0.0), 1.0, 3.0, 1e-3);
        CHECK(generalized_inverse(flat, 1.0) == kTimeInfinity);
    }
}

TEST_CASE("path monotonicity and semi-explicit consistency") {
    PopulationPath p = integrate_population(GrowthRate::power_decay(0.7), 2.0, 5.0, 1e-3);
    for (std::size_t k = 1; k < p.grid_size(); ++k) {
        CHECK(p.grid_value(k) >= p.grid_value(k - 1));
        double semi = p.n0() * std::exp(p.grid_rate_integral(k));
        CHECK(std::abs(p.grid_value(k) - semi) / p.grid_value(k) <= 1e-6);
    }
}

TEST_CASE("inverse consistency on interior mass values") {
    PopulationPath p = integrate_population(GrowthRate::constant(1.0), 1.0, 4.0, 1e-2);
    double n_end = p.value(4.0);
    for (double frac : {0.1, 0.35, 0.62, 0.9}) {
        double s = 1.0 + frac * (n_end - 1.0);
        double t = generalized_inverse(p, s);
        REQUIRE(t < kTimeInfinity);
        double eps_grid = p.value(std::min(4.0, t + p.dt())) - p.value(std::max(0.0, t - p.dt()));
        CHECK(p.value(t) >= s - 1e-9);
        CHECK(p.value(t) <= s + eps_grid + 1e-9);
    }
}

TEST_CASE("rate-integral dichotomy for power decay") {
    // alpha <= 1: int b diverges; alpha > 1: it saturates
    PopulationPath slow = integrate_population(GrowthRate::power_decay(0.8), 1.0, 1000.0, 0.05);
    CHECK(slow.rate_integral(1000.0) - slow.rate_integral(500.0) > 0.5);
    PopulationPath fast = integrate_population(GrowthRate::power_decay(1.5), 1.0, 1000.0, 0.05);
    CHECK(fast.rate_integral(1000.0) - fast.rate_integral(500.0) < 0.05);
}

TEST_CASE("rate constructors validate inputs") {
    CHECK_THROWS(GrowthRate::constant(-1.0));
    CHECK_THROWS(GrowthRate::from_table({}));
    CHECK_THROWS(GrowthRate::from_table({{0.0, -2.0}}));
}
