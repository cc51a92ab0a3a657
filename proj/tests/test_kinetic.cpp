#include <cmath>

#include "doctest.h"

#include "agora/kinetic.hpp"

using namespace agora;

namespace {

WeightedParticleMeasure measure_1d(std::vector<double> xs, std::vector<double> ws) {
    WeightedParticleMeasure f;
    f.dim = 1;
    for (double x : xs) f.atoms.push_back(Vec::scalar(x));
    f.weights = std::move(ws);
    return f;
}

}  // namespace

TEST_CASE("interaction velocity field examples") {
    auto psi1 = InfluenceKernel::type1_constant();
    SUBCASE("a point mass does not move itself") {
        auto f = measure_1d({0.3}, {1.0});
        CHECK(v_field(f, psi1, Vec::scalar(0.3)).norm() == 0.0);
    }
    SUBCASE("a unit mass at 1 pulls the origin with unit speed") {
        auto f = measure_1d({1.0}, {1.0});
        CHECK(v_field(f, psi1, Vec::scalar(0.0))[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
    SUBCASE("a symmetric pair balances at the midpoint") {
        auto f = measure_1d({0.0, 1.0}, {0.5, 0.5});
        CHECK(v_field(f, InfluenceKernel::type2_tent(), Vec::scalar(0.5))[0] ==
              doctest::Approx(0.0).epsilon(1e-15));
    }
    SUBCASE("atom-wise evaluation matches pointwise evaluation") {
        auto f = measure_1d({-0.5, 0.2, 0.9}, {0.2, 0.3, 0.5});
        auto at_atoms = v_field_at_atoms(f, psi1);
        for (std::size_t i = 0; i < f.size(); ++i)
            CHECK((at_atoms[i] - v_field(f, psi1, f.atoms[i])).norm() <= 1e-14);
    }
}

TEST_CASE("one step of the measure evolution") {
    auto psi1 = InfluenceKernel::type1_constant();
    auto profile = InflowProfile::constant(Vec::scalar(0.5));

    SUBCASE("no growth is pure transport") {
        PopulationPath path = integrate_population(GrowthRate::constant(0.0), 1.0, 1.0, 0.1);
        auto f = measure_1d({0.0, 1.0}, {0.5, 0.5});
        kinetic_step(f, psi1, profile, path, 0.0, 0.1);
        CHECK(f.size() == 2);
        CHECK(f.weights[0] == 0.5);
        CHECK(f.weights[1] == 0.5);
        // the pair contracts toward its midpoint
        CHECK(f.atoms[1][0] - f.atoms[0][0] == doctest::Approx(std::exp(-0.1)).epsilon(1e-6));
    }
    SUBCASE("unit growth decays old mass by the exact integrating factor") {
        PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 1.0, 0.1);
        auto f = measure_1d({0.0}, {1.0});
        kinetic_step(f, psi1, profile, path, 0.0, 0.1);
        REQUIRE(f.size() == 2);
        double decay = std::exp(-0.1);
        CHECK(f.weights[0] == doctest::Approx(decay).epsilon(1e-9));
        CHECK(f.weights[1] == doctest::Approx(1.0 - decay).epsilon(1e-8));
        CHECK(f.atoms[1][0] == 0.5);  // inflow opinion at the step start
    }
    SUBCASE("the mean moves by -b(M1 - X) to leading order") {
        PopulationPath path = integrate_population(GrowthRate::constant(1.0), 1.0, 1.0, 0.01);
        auto f = measure_1d({-0.4, 0.1, 0.8}, {0.25, 0.5, 0.25});
        double m1_before = f.moments().m1[0];
        kinetic_step(f, psi1, profile, path, 0.0, 0.01);
        double m1_after = f.moments().m1[0];
        double predicted = m1_before + 0.01 * (-m1_before + 0.5);
        CHECK(m1_after == doctest::Approx(predicted).epsilon(1e-3));
    }
    SUBCASE("featherweight atoms merge into their nearest neighbor") {
        auto f = measure_1d({0.0, 1e-4, 5.0}, {0.6 - 1e-12, 1e-12, 0.4});
        PopulationPath path = integrate_population(GrowthRate::constant(0.0), 1.0, 1.0, 0.01);
        kinetic_step(f, psi1, profile, path, 0.0, 0.01, Integrator::rk4, 1e-8);
        CHECK(f.size() == 2);
        CHECK(f.weights[0] == doctest::Approx(0.6).epsilon(1e-12));
    }
}

TEST_CASE("empirical measure of a particle ensemble") {
    AgentEnsemble e;
    e.dim = 1;
    e.rho = 4.0;
    e.population = 1.0;
    for (double x : {0.0, 0.5, 1.0, 2.5}) {
        e.positions.push_back(Vec::scalar(x));
        e.birth_times.push_back(0.0);
    }
    auto f = empirical_of_micro(e);
    REQUIRE(f.size() == 4);
    for (double w : f.weights) CHECK(w == 0.25);
    auto mf = f.moments();
    auto me = moments_equal_weight(e.positions);
    CHECK((mf.m1 - me.m1).norm() <= 1e-15);
    CHECK(mf.m2 == doctest::Approx(me.m2).epsilon(1e-15));
}

namespace {

SimConfig kinetic_config() {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(1.0);
    c.profile = InflowProfile::constant(Vec::scalar(0.5));
    c.initial.kind = InitialProfile::Kind::uniform_box;
    c.initial.box_lo = Vec::scalar(-1.0);
    c.initial.box_hi = Vec::scalar(1.0);
    c.n0 = 1.0;
    c.dt = 0.01;
    c.t_end = 4.0;
    c.rho = 100.0;
    c.snapshot_stride = 10;
    c.seed = 4;
    return c;
}

}  // namespace

TEST_CASE("measure-valued run conserves mass and stays confined") {
    KineticTrajectory traj = run_kinetic(kinetic_config());
    REQUIRE(!traj.records.empty());
    CHECK(traj.max_normalization_error <= 1e-12);
    CHECK(traj.confinement_violations == 0);
    CHECK(traj.final_measure.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
    // old mass decays as N0/N_t, so the mean approaches the inflow opinion
    CHECK(traj.records.back().m1[0] == doctest::Approx(0.5).epsilon(5e-2));
}

TEST_CASE("W1 distance basics") {
    auto d0 = measure_1d({0.0}, {1.0});
    auto d1 = measure_1d({1.0}, {1.0});
    CHECK(w1_distance(d0, d0) == 0.0);
    CHECK(w1_distance(d0, d1) == doctest::Approx(1.0).epsilon(1e-12));
    auto split = measure_1d({0.0, 2.0}, {0.5, 0.5});
    auto mid = measure_1d({1.0}, {1.0});
    CHECK(w1_distance(split, mid) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS(w1_distance(d0, measure_1d({0.0}, {0.5})));  // not normalized
}

TEST_CASE("identical initial measures stay at distance zero") {
    auto f0 = measure_1d({-0.5, 0.0, 0.5}, {0.25, 0.5, 0.25});
    SimConfig c = kinetic_config();
    c.t_end = 2.0;
    StabilityReport rep = stability_probe(f0, f0, c);
    CHECK(!rep.ratio_defined);
    for (double d : rep.w1) CHECK(d <= 1e-10);
}

TEST_CASE("distinct initial measures keep a bounded distance ratio") {
    auto f0 = measure_1d({-0.5, 0.5}, {0.5, 0.5});
    auto g0 = measure_1d({-0.4, 0.6}, {0.5, 0.5});
    SimConfig c = kinetic_config();
    c.t_end = 2.0;
    StabilityReport rep = stability_probe(f0, g0, c);
    REQUIRE(rep.ratio_defined);
    CHECK(rep.initial_distance == doctest::Approx(0.1).epsilon(1e-9));
    CHECK(rep.sup_ratio >= 1.0 - 1e-12);
    CHECK(rep.sup_ratio < 10.0);
}

TEST_CASE("concentration probe targets the inflow under exponential growth") {
    SimConfig c = kinetic_config();
    ConcentrationReport rep = concentration_probe(c);
    CHECK(rep.target_kind == ConcentrationReport::Target::boundary);
    CHECK(rep.target[0] == 0.5);
    REQUIRE(!rep.w1.empty());
    CHECK(rep.w1.back() < rep.w1.front());
    CHECK(rep.w1.back() < 0.1);
}
