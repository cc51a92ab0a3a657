#include "agora/scenario.hpp"

#include <set>
#include <stdexcept>

#include "agora/toml_lite.hpp"

namespace agora {

namespace {

using nlohmann::json;

[[noreturn]] void reject(const std::string& where, const std::string& what) {
    throw std::invalid_argument("scenario." + where + ": " + what);
}

void check_keys(const json& obj, const std::string& where, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!allowed.count(it.key())) reject(where, "unknown key '" + it.key() + "'");
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
    if (!obj.contains(key)) reject(where, "missing key '" + key + "'");
    return obj.at(key);
}

double number(const json& v, const std::string& where) {
    if (!v.is_number()) reject(where, "expected a number");
    return v.get<double>();
}

std::string text(const json& v, const std::string& where) {
    if (!v.is_string()) reject(where, "expected a string");
    return v.get<std::string>();
}

Vec vec_of(const json& v, int dim, const std::string& where) {
    if (!v.is_array()) reject(where, "expected a vector (array of numbers)");
    if (static_cast<int>(v.size()) != dim)
        reject(where, "vector has " + std::to_string(v.size()) + " components, expected " +
                          std::to_string(dim));
    Vec out(dim, 0.0);
    for (int i = 0; i < dim; ++i) out[i] = number(v[i], where);
    return out;
}

std::vector<std::pair<double, double>> scalar_table(const json& v, const std::string& where) {
    if (!v.is_array() || v.empty()) reject(where, "expected a nonempty array of [t, value] pairs");
    std::vector<std::pair<double, double>> pts;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != 2) reject(where, "each entry must be [t, value]");
        pts.emplace_back(number(row[0], where), number(row[1], where));
    }
    return pts;
}

}  // namespace

std::string to_string(RunMode m) {
    switch (m) {
        case RunMode::micro: return "micro";
        case RunMode::kinetic: return "kinetic";
        case RunMode::both: return "both";
    }
    return "micro";
}

GrowthRate make_rate(const json& spec) {
    const std::string where = "growth";
    std::string kind = text(require(spec, where, "kind"), where);
    if (kind == "constant") {
        check_keys(spec, where, {"kind", "value"});
        return GrowthRate::constant(number(require(spec, where, "value"), where));
    }
    if (kind == "power_decay") {
        check_keys(spec, where, {"kind", "alpha"});
        return GrowthRate::power_decay(number(require(spec, where, "alpha"), where));
    }
    if (kind == "table") {
        check_keys(spec, where, {"kind", "points"});
        return GrowthRate::from_table(scalar_table(require(spec, where, "points"), where));
    }
    reject(where, "unknown kind '" + kind + "'");
}

InfluenceKernel make_kernel(const json& spec) {
    const std::string where = "kernel";
    std::string kind = text(require(spec, where, "kind"), where);
    if (kind == "type1_constant") {
        check_keys(spec, where, {"kind"});
        return InfluenceKernel::type1_constant();
    }
    if (kind == "type1_exponential") {
        check_keys(spec, where, {"kind", "lambda"});
        return InfluenceKernel::type1_exponential(number(require(spec, where, "lambda"), where));
    }
    if (kind == "type2_bump") {
        check_keys(spec, where, {"kind"});
        return InfluenceKernel::type2_bump();
    }
    if (kind == "type2_tent") {
        check_keys(spec, where, {"kind"});
        return InfluenceKernel::type2_tent();
    }
    if (kind == "table") {
        check_keys(spec, where, {"kind", "points", "lipschitz"});
        return InfluenceKernel::from_table(scalar_table(require(spec, where, "points"), where),
                                           number(require(spec, where, "lipschitz"), where));
    }
    reject(where, "unknown kind '" + kind + "'");
}

InflowProfile make_profile(const json& spec, int dim, double n0) {
    const std::string where = "inflow";
    std::string kind = text(require(spec, where, "kind"), where);
    if (kind == "constant") {
        check_keys(spec, where, {"kind", "value"});
        return InflowProfile::constant(vec_of(require(spec, where, "value"), dim, where));
    }
    if (kind == "eventually_constant") {
        check_keys(spec, where, {"kind", "value", "t0"});
        return InflowProfile::eventually_constant(
            vec_of(require(spec, where, "value"), dim, where),
            number(require(spec, where, "t0"), where));
    }
    if (kind == "sinusoidal") {
        check_keys(spec, where, {"kind", "amplitude", "frequency", "phase"});
        double freq = spec.contains("frequency") ? number(spec["frequency"], where) : 1.0;
        double phase = spec.contains("phase") ? number(spec["phase"], where) : 0.0;
        return InflowProfile::sinusoidal(vec_of(require(spec, where, "amplitude"), dim, where),
                                         freq, phase);
    }
    if (kind == "population_power") {
        check_keys(spec, where, {"kind", "offset", "coefficient", "eps"});
        return InflowProfile::population_power(
            vec_of(require(spec, where, "offset"), dim, where),
            vec_of(require(spec, where, "coefficient"), dim, where),
            number(require(spec, where, "eps"), where), n0);
    }
    if (kind == "table") {
        check_keys(spec, where, {"kind", "points"});
        const json& pts = require(spec, where, "points");
        if (!pts.is_array() || pts.empty()) reject(where, "points must be a nonempty array");
        std::vector<std::pair<double, Vec>> table;
        for (const auto& row : pts) {
            if (!row.is_array() || row.size() != 2) reject(where, "each entry must be [t, vector]");
            table.emplace_back(number(row[0], where), vec_of(row[1], dim, where));
        }
        return InflowProfile::from_table(std::move(table));
    }
    reject(where, "unknown kind '" + kind + "'");
}

InitialProfile make_initial(const json& spec, int dim) {
    const std::string where = "initial";
    std::string kind = text(require(spec, where, "kind"), where);
    InitialProfile p;
    if (kind == "uniform_box") {
        check_keys(spec, where, {"kind", "lo", "hi"});
        p.kind = InitialProfile::Kind::uniform_box;
        p.box_lo = vec_of(require(spec, where, "lo"), dim, where);
        p.box_hi = vec_of(require(spec, where, "hi"), dim, where);
        for (int i = 0; i < dim; ++i)
            if (!(p.box_lo[i] <= p.box_hi[i])) reject(where, "lo must be <= hi componentwise");
        return p;
    }
    if (kind == "two_blob") {
        check_keys(spec, where, {"kind", "center_a", "center_b", "width"});
        p.kind = InitialProfile::Kind::two_blob;
        p.blob_a = vec_of(require(spec, where, "center_a"), dim, where);
        p.blob_b = vec_of(require(spec, where, "center_b"), dim, where);
        p.blob_width = number(require(spec, where, "width"), where);
        if (!(p.blob_width > 0.0)) reject(where, "width must be > 0");
        return p;
    }
    if (kind == "point") {
        check_keys(spec, where, {"kind", "at"});
        p.kind = InitialProfile::Kind::point;
        p.point = vec_of(require(spec, where, "at"), dim, where);
        return p;
    }
    if (kind == "table") {
        check_keys(spec, where, {"kind", "points"});
        const json& pts = require(spec, where, "points");
        if (!pts.is_array() || pts.empty()) reject(where, "points must be a nonempty array");
        p.kind = InitialProfile::Kind::table;
        for (const auto& row : pts) p.table.push_back(vec_of(row, dim, where));
        return p;
    }
    reject(where, "unknown kind '" + kind + "'");
}

Scenario load_scenario(const json& doc) {
    check_keys(doc, "(top level)",
               {"name", "mode", "growth", "kernel", "inflow", "initial", "numerics"});
    Scenario sc;
    sc.name = text(require(doc, "(top level)", "name"), "name");

    std::string mode = doc.contains("mode") ? text(doc["mode"], "mode") : "micro";
    if (mode == "micro") sc.mode = RunMode::micro;
    else if (mode == "kinetic") sc.mode = RunMode::kinetic;
    else if (mode == "both") sc.mode = RunMode::both;
    else reject("mode", "must be micro | kinetic | both");

    const json& num = require(doc, "(top level)", "numerics");
    check_keys(num, "numerics",
               {"dim", "n0", "dt", "t_end", "rho", "integrator", "snapshot_stride", "seed",
                "m_max", "link_radius"});
    SimConfig& c = sc.config;
    c.dim = static_cast<int>(number(require(num, "numerics", "dim"), "numerics.dim"));
    if (c.dim < 1 || c.dim > 3) reject("numerics.dim", "must be 1, 2 or 3");
    c.n0 = number(require(num, "numerics", "n0"), "numerics.n0");
    c.dt = number(require(num, "numerics", "dt"), "numerics.dt");
    c.t_end = number(require(num, "numerics", "t_end"), "numerics.t_end");
    c.rho = number(require(num, "numerics", "rho"), "numerics.rho");
    if (!(c.n0 > 0.0) || !(c.dt > 0.0) || !(c.t_end > 0.0) || !(c.rho > 0.0))
        reject("numerics", "n0, dt, t_end, rho must all be > 0");
    if (num.contains("integrator")) {
        std::string ig = text(num["integrator"], "numerics.integrator");
        if (ig == "euler") c.integrator = Integrator::euler;
        else if (ig == "rk4") c.integrator = Integrator::rk4;
        else reject("numerics.integrator", "must be euler | rk4");
    }
    if (num.contains("snapshot_stride")) {
        double s = number(num["snapshot_stride"], "numerics.snapshot_stride");
        if (s < 1) reject("numerics.snapshot_stride", "must be >= 1");
        c.snapshot_stride = static_cast<std::size_t>(s);
    }
    if (num.contains("seed")) c.seed = static_cast<std::uint64_t>(number(num["seed"], "numerics.seed"));
    if (num.contains("m_max")) {
        double m = number(num["m_max"], "numerics.m_max");
        if (m < 1) reject("numerics.m_max", "must be >= 1");
        c.m_max = static_cast<std::size_t>(m);
    }
    if (num.contains("link_radius")) {
        c.link_radius = number(num["link_radius"], "numerics.link_radius");
        if (!(c.link_radius > 0.0)) reject("numerics.link_radius", "must be > 0");
    }

    c.rate = make_rate(require(doc, "(top level)", "growth"));
    c.kernel = make_kernel(require(doc, "(top level)", "kernel"));
    c.profile = make_profile(require(doc, "(top level)", "inflow"), c.dim, c.n0);
    c.initial = make_initial(require(doc, "(top level)", "initial"), c.dim);
    return sc;
}

Scenario load_scenario_file(const std::string& path) {
    return load_scenario(load_toml_file(path));
}

}  // namespace agora
