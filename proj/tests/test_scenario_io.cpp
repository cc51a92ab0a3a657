#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "agora/io.hpp"
#include "agora/scenario.hpp"
#include "agora/toml_lite.hpp"

using namespace agora;
namespace fs = std::filesystem;

namespace {

const char* kSampleDoc = R"(# sample scenario
name = "sample"
mode = "micro"

[growth]
kind = "constant"
value = 1.0

[kernel]
kind = "type2_tent"

[inflow]
kind = "constant"
value = [0.5]

[initial]
kind = "uniform_box"
lo = [-1.0]
hi = [1.0]

[numerics]
dim = 1
n0 = 1.0
dt = 0.01
t_end = 2.0
rho = 50.0
integrator = "rk4"
snapshot_stride = 10
seed = 1
)";

}  // namespace

TEST_CASE("config text parsing") {
    SUBCASE("sections, types, arrays and comments") {
        auto doc = parse_toml_lite(
            "title = \"x\"  # trailing comment\n"
            "flag = true\n"
            "[a.b]\n"
            "n = 3\n"
            "x = 1.5\n"
            "v = [1.0, 2.0, 3.0,]\n"
            "nested = [[0.0, 1.0], [1.0, 0.5]]\n");
        CHECK(doc["title"] == "x");
        CHECK(doc["flag"] == true);
        CHECK(doc["a"]["b"]["n"] == 3);
        CHECK(doc["a"]["b"]["n"].is_number_integer());
        CHECK(doc["a"]["b"]["x"] == 1.5);
        CHECK(doc["a"]["b"]["v"].size() == 3);
        CHECK(doc["a"]["b"]["nested"][1][1] == 0.5);
    }
    SUBCASE("rejected inputs") {
        CHECK_THROWS(parse_toml_lite("a = 1\na = 2\n"));          // duplicate key
        CHECK_THROWS(parse_toml_lite("[[items]]\nx = 1\n"));      // array of tables
        CHECK_THROWS(parse_toml_lite("a = @\n"));                 // bad value
        CHECK_THROWS(parse_toml_lite("a = 1 trailing\n"));
        CHECK_THROWS(parse_toml_lite("a b = 1\n"));
    }
}

TEST_CASE("scenario loading") {
    SUBCASE("sample document round-trips") {
        Scenario s = load_scenario(parse_toml_lite(kSampleDoc));
        CHECK(s.name == "sample");
        CHECK(s.mode == RunMode::micro);
        CHECK(s.config.dim == 1);
        CHECK(s.config.dt == 0.01);
        CHECK(s.config.rho == 50.0);
        CHECK(s.config.kernel.name() == "type2_tent");
        CHECK(s.config.profile.evaluate(0.0, 1.0)[0] == 0.5);
    }
    SUBCASE("unknown keys are rejected with their path") {
        auto doc = parse_toml_lite(kSampleDoc);
        doc["bogus"] = 1;
        CHECK_THROWS(load_scenario(doc));
        doc = parse_toml_lite(kSampleDoc);
        doc["numerics"]["bogus"] = 1;
        CHECK_THROWS(load_scenario(doc));
        doc = parse_toml_lite(kSampleDoc);
        doc["kernel"]["lambda"] = 1.0;  // not a key of type2_tent
        CHECK_THROWS(load_scenario(doc));
    }
    SUBCASE("all bundled scenarios load") {
        int seen = 0;
        for (const auto& entry : fs::directory_iterator(AGORA_SCENARIO_DIR)) {
            if (entry.path().extension() != ".toml") continue;
            Scenario s = load_scenario_file(entry.path().string());
            CHECK(!s.name.empty());
            ++seen;
        }
        CHECK(seen >= 10);
    }
}

TEST_CASE("atomic file writes") {
    fs::path dir = fs::temp_directory_path() / "agora_io_test";
    fs::remove_all(dir);
    fs::path target = dir / "nested" / "out.txt";
    atomic_write(target.string(), "hello\n");
    std::ifstream in(target);
    std::stringstream got;
    got << in.rdbuf();
    CHECK(got.str() == "hello\n");
    for (const auto& entry : fs::directory_iterator(target.parent_path()))
        CHECK(entry.path().extension() != ".tmp");
    fs::remove_all(dir);
}

TEST_CASE("trajectory CSV format") {
    DiagnosticsRecord r;
    r.t = 0.5;
    r.n = 2.0;
    r.m = 100.0;
    r.m1 = Vec::scalar(0.25);
    r.m2 = 0.125;
    std::string csv = trajectory_csv({r}, 1);
    auto first_line = csv.substr(0, csv.find('\n'));
    CHECK(first_line == "t,N,M,m0,m1_1,m2,V,V_X,D,M1dist,c1_residual");
    CHECK(csv.find("0.5,2,100,1,0.25,0.125") != std::string::npos);
}

TEST_CASE("shortest round-trip rendering") {
    for (double v : {0.1, 1.0 / 3.0, 1e-17, -2.5e300, 0.0, 42.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(1.0) == "1");
}

TEST_CASE("running-average heuristic") {
    auto make_records = [](double final_residual, double spread) {
        std::vector<DiagnosticsRecord> rs;
        for (double t = 0.0; t <= 20.0; t += 0.1) {
            DiagnosticsRecord r;
            r.t = t;
            r.c1_residual = final_residual + (t > 13.0 ? 0.0 : spread);
            rs.push_back(r);
        }
        return rs;
    };
    CHECK(c1_holds_heuristic(make_records(0.01, 0.0)));
    CHECK(!c1_holds_heuristic(make_records(0.5, 0.0)));   // residual too large
    std::vector<DiagnosticsRecord> osc;
    for (double t = 0.0; t <= 20.0; t += 0.1) {
        DiagnosticsRecord r;
        r.t = t;
        r.c1_residual = 0.35 + 0.35 * std::sin(3.0 * t);  // keeps oscillating
        osc.push_back(r);
    }
    CHECK(!c1_holds_heuristic(osc));
}
