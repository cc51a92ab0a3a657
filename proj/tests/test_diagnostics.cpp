#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "agora/diagnostics.hpp"
#include "agora/micro.hpp"

using namespace agora;

namespace {

std::vector<Vec> points_1d(const std::vector<double>& xs) {
    std::vector<Vec> out;
    for (double x : xs) out.push_back(Vec::scalar(x));
    return out;
}

std::vector<double> equal_weights(std::size_t n) {
    return std::vector<double>(n, 1.0 / static_cast<double>(n));
}

}  // namespace

TEST_CASE("moment examples") {
    SUBCASE("a point mass") {
        auto xs = points_1d({0.7});
        auto m = moments_equal_weight(xs);
        CHECK(m.m0 == 1.0);
        CHECK(m.m1[0] == 0.7);
        CHECK(m.m2 == doctest::Approx(0.49).epsilon(1e-15));
    }
    SUBCASE("symmetric pair") {
        auto xs = points_1d({-1.0, 1.0});
        auto m = moments_equal_weight(xs);
        CHECK(m.m1[0] == 0.0);
        CHECK(m.m2 == 1.0);
    }
    SUBCASE("uniform sample mean agrees with the direct average") {
        std::mt19937_64 gen(5);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        std::vector<Vec> xs;
        double direct = 0.0;
        for (int i = 0; i < 100; ++i) {
            double x = dist(gen);
            xs.push_back(Vec::scalar(x));
            direct += x;
        }
        direct /= 100.0;
        CHECK(moments_equal_weight(xs).m1[0] == doctest::Approx(direct).epsilon(1e-13));
    }
}

TEST_CASE("variance about the mean and about a reference point") {
    auto xs = points_1d({-1.0, 1.0});
    auto w = equal_weights(2);
    auto m = moments(xs, w);
    CHECK(variance(xs, w, m.m1) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(variance_about(xs, w, Vec::scalar(0.0)) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(variance_about(xs, w, Vec::scalar(1.0)) == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("variance identities on random clouds") {
    std::mt19937_64 gen(17);
    std::normal_distribution<double> dist(0.3, 0.8);
    std::vector<Vec> xs;
    for (int i = 0; i < 300; ++i) {
        Vec x(2);
        x[0] = dist(gen);
        x[1] = dist(gen);
        xs.push_back(x);
    }
    auto w = equal_weights(xs.size());
    auto m = moments(xs, w);
    double v = variance(xs, w, m.m1);
    Vec ref(2);
    ref[0] = -0.4;
    ref[1] = 0.9;
    // V_X = V + |m1 - X|^2 and V = m2 - |m1|^2
    CHECK(variance_about(xs, w, ref) ==
          doctest::Approx(v + (m.m1 - ref).norm2()).epsilon(1e-10));
    CHECK(m.m2 - m.m1.norm2() == doctest::Approx(v).epsilon(1e-10));
}

TEST_CASE("dissipation examples") {
    SUBCASE("two atoms under a constant kernel") {
        auto xs = points_1d({0.0, 1.0});
        auto w = equal_weights(2);
        // D = 2 * (1/4) * 1 * 1 = 0.5
        CHECK(dissipation(xs, w, InfluenceKernel::type1_constant()) ==
              doctest::Approx(0.5).epsilon(1e-14));
    }
    SUBCASE("pairs outside the support contribute nothing") {
        auto xs = points_1d({0.0, 2.0});
        CHECK(dissipation(xs, equal_weights(2), InfluenceKernel::type2_tent()) == 0.0);
    }
    SUBCASE("a point mass dissipates nothing") {
        auto xs = points_1d({0.4});
        CHECK(dissipation(xs, equal_weights(1), InfluenceKernel::type1_constant()) == 0.0);
    }
    SUBCASE("the constant-kernel fast path equals the pairwise sum") {
        std::mt19937_64 gen(3);
        std::uniform_real_distribution<double> dist(-2.0, 2.0);
        std::vector<Vec> xs;
        for (int i = 0; i < 64; ++i) xs.push_back(Vec::scalar(dist(gen)));
        auto w = equal_weights(xs.size());
        double fast = dissipation(xs, w, InfluenceKernel::type1_constant());
        double direct = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (std::size_t j = 0; j < xs.size(); ++j)
                direct += w[i] * w[j] * (xs[i] - xs[j]).norm2();
        CHECK(fast == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("cluster detection") {
    SUBCASE("one tight cloud is one cluster") {
        auto xs = points_1d({0.0, 0.1, 0.2, 0.05});
        auto rep = detect_clusters(xs, 0.5, 4.0);
        CHECK(rep.count == 1);
        CHECK(rep.max_intra_diameter == doctest::Approx(0.2).epsilon(1e-14));
    }
    SUBCASE("two separated blobs") {
        auto xs = points_1d({0.0, 0.1, 2.0, 2.1, 2.05});
        auto rep = detect_clusters(xs, 0.5, 5.0);
        REQUIRE(rep.count == 2);
        // masses are reported in s-units: member counts / rho
        double mass_total = 0.0;
        Vec weighted_center(1);
        for (int j = 0; j < rep.count; ++j) {
            mass_total += rep.masses[j];
            weighted_center += rep.masses[j] * rep.centers[j];
        }
        CHECK(mass_total == doctest::Approx(1.0).epsilon(1e-14));
        auto m = moments_equal_weight(xs);
        CHECK((1.0 / mass_total * weighted_center - m.m1).norm() <= 1e-10);
        CHECK(rep.min_inter_distance > 1.5);
        CHECK(rep.max_intra_diameter <= 0.1 + 1e-14);
    }
    SUBCASE("union-find path in two dimensions") {
        std::vector<Vec> xs;
        for (double s : {-1.0, 1.0})
            for (int i = 0; i < 5; ++i) {
                Vec x(2);
                x[0] = s + 0.01 * i;
                x[1] = 0.01 * i;
                xs.push_back(x);
            }
        CHECK(detect_clusters(xs, 0.3, 10.0).count == 2);
    }
}

TEST_CASE("decay exponent fit recovers synthetic power laws") {
    std::vector<double> ts, v1, v2;
    for (double t = 1.0; t <= 100.0; t += 0.5) {
        ts.push_back(t);
        v1.push_back(1.0 / t);
        v2.push_back(5.0 * std::pow(t, -0.5));
    }
    CHECK(fit_decay_exponent(ts, v1, 1.0, 100.0) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(fit_decay_exponent(ts, v2, 1.0, 100.0) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("variance identity residual along a particle run") {
    SimConfig c;
    c.kernel = InfluenceKernel::type1_constant();
    c.rate = GrowthRate::constant(0.0);
    c.profile = InflowProfile::constant(Vec::scalar(0.0));
    c.initial.kind = InitialProfile::Kind::uniform_box;
    c.initial.box_lo = Vec::scalar(-1.0);
    c.initial.box_hi = Vec::scalar(1.0);
    c.n0 = 1.0;
    c.dt = 1e-3;
    c.t_end = 1.0;
    c.rho = 200.0;
    c.snapshot_stride = 1;
    c.seed = 8;
    Trajectory traj = run(c);
    REQUIRE(traj.records.size() > 10);
    for (std::size_t k = 1; k < traj.records.size(); ++k) {
        CHECK(variance_identity_residual(traj.records[k - 1], traj.records[k], 0.0) <= 1e-3);
    }
    // a point mass satisfies the identity exactly
    DiagnosticsRecord a, b;
    a.t = 0.0;
    b.t = 1.0;
    CHECK(variance_identity_residual(a, b, 1.0) == 0.0);
}
