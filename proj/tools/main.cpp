// Scenario runner and verification front-end for the consensus-dynamics core.
//
// Commands:
//   agora run CONFIG       execute a scenario, write trajectory CSV + summary JSON
//   agora verify SUITE     run an acceptance suite (moments|variance|clusters|kinetic|stability|all)
//   agora sweep CONFIG     rerun a scenario across values of one parameter
//   agora report DIR       emit gnuplot-ready two-column series from a run directory

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "agora/io.hpp"
#include "agora/kinetic.hpp"
#include "agora/micro.hpp"
#include "agora/scenario.hpp"
#include "agora/toml_lite.hpp"
#include "agora/verify.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitBadConfig = 2;
constexpr int kExitRuntimeAbort = 3;

struct GlobalOpts {
    std::string out = "out";
    int workers = 1;
    long long seed = -1;  // < 0 means: keep the scenario's seed
};

agora::Scenario load_with_overrides(const std::string& config_path, const GlobalOpts& g) {
    agora::Scenario sc = agora::load_scenario_file(config_path);
    if (g.seed >= 0) sc.config.seed = static_cast<std::uint64_t>(g.seed);
    return sc;
}

int do_run(const agora::Scenario& sc, const std::string& out_dir) {
    namespace fs = std::filesystem;
    agora::SimConfig cfg = sc.config;
    bool want_micro = sc.mode != agora::RunMode::kinetic;
    bool want_kinetic = sc.mode != agora::RunMode::micro;
    if (sc.mode == agora::RunMode::both) cfg.keep_snapshots = true;

    std::optional<agora::Trajectory> micro;
    std::optional<agora::KineticTrajectory> kinetic;
    if (want_micro) micro = agora::run(cfg);
    if (want_kinetic) {
        // in 'both' mode the measure run starts from the particle run's own
        // initial data so the two stay directly comparable
        std::optional<agora::WeightedParticleMeasure> f0;
        if (micro && !micro->snapshots.empty()) {
            agora::WeightedParticleMeasure m;
            m.dim = cfg.dim;
            m.atoms = micro->snapshots.front().positions;
            m.weights.assign(m.atoms.size(), 1.0 / static_cast<double>(m.atoms.size()));
            f0 = std::move(m);
        }
        kinetic = agora::run_kinetic(cfg, std::move(f0));
    }

    const auto& primary_records = micro ? micro->records : kinetic->records;
    agora::write_trajectory_csv((fs::path(out_dir) / "trajectory.csv").string(), primary_records,
                                cfg.dim);
    if (micro && kinetic)
        agora::write_trajectory_csv((fs::path(out_dir) / "trajectory_kinetic.csv").string(),
                                    kinetic->records, cfg.dim);

    if (micro)
        agora::write_snapshot_csv((fs::path(out_dir) / "final_snapshot.csv").string(),
                                  micro->final_state, cfg.dim);
    if (kinetic)
        agora::write_measure_csv((fs::path(out_dir) / "final_measure.csv").string(),
                                 kinetic->final_measure);

    if (micro && kinetic) {
        std::vector<double> ts, w1s;
        std::size_t n = std::min(micro->snapshots.size(), kinetic->snapshots.size());
        for (std::size_t k = 0; k < n; ++k) {
            agora::WeightedParticleMeasure mu;
            mu.dim = cfg.dim;
            mu.atoms = micro->snapshots[k].positions;
            mu.weights.assign(mu.atoms.size(), 1.0 / static_cast<double>(mu.atoms.size()));
            ts.push_back(micro->snapshots[k].t);
            w1s.push_back(agora::w1_distance(mu, kinetic->snapshots[k].second));
        }
        agora::write_series_dat((fs::path(out_dir) / "w1_micro_vs_kinetic.dat").string(), ts, w1s);
    }

    agora::PopulationPath path =
        agora::integrate_population(cfg.rate, cfg.n0, cfg.t_end, cfg.dt);
    bool lemma1_ok = (!micro || micro->confinement_violations == 0) &&
                     (!kinetic || kinetic->confinement_violations == 0);
    agora::ClusterReport clusters;
    if (micro) clusters = micro->final_clusters;
    else
        clusters = agora::detect_clusters(kinetic->final_measure.atoms, cfg.link_radius,
                                          static_cast<double>(kinetic->final_measure.size()) /
                                              path.value(cfg.t_end));
    nlohmann::json summary =
        agora::summary_json(sc, path.regime(), primary_records, clusters, lemma1_ok);
    agora::write_json((fs::path(out_dir) / "summary.json").string(), summary);

    std::cout << "wrote " << out_dir << "/trajectory.csv and summary.json (scenario '" << sc.name
              << "', regime " << agora::to_string(path.regime()) << ")\n";
    return kExitOk;
}

int cmd_run(const std::string& config_path, const GlobalOpts& g) {
    agora::Scenario sc;
    try {
        sc = load_with_overrides(config_path, g);
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    }
    try {
        return do_run(sc, g.out);
    } catch (const std::exception& e) {
        std::cerr << "run aborted: " << e.what() << "\n";
        return kExitRuntimeAbort;
    }
}

int cmd_verify(const std::string& suite, const std::string& scenario_dir) {
    std::vector<int> ids;
    try {
        if (suite == "all") {
            for (int i = 1; i <= agora::kCriterionCount; ++i) ids.push_back(i);
        } else {
            ids = agora::suite_criteria(suite);
        }
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitBadConfig;
    }
    bool all_pass = true;
    for (int id : ids) {
        agora::CriterionResult r = agora::run_criterion(id, scenario_dir);
        std::cout << agora::format_result(r) << "\n";
        all_pass = all_pass && r.pass;
    }
    return all_pass ? kExitOk : kExitFailedCheck;
}

void patch_json_path(nlohmann::json& doc, const std::string& dotted, double value) {
    nlohmann::json* cur = &doc;
    std::stringstream ss(dotted);
    std::string part;
    std::vector<std::string> parts;
    while (std::getline(ss, part, '.')) parts.push_back(part);
    if (parts.empty()) throw std::invalid_argument("empty parameter path");
    for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
        if (!cur->contains(parts[i]))
            throw std::invalid_argument("parameter path not found: " + dotted);
        cur = &(*cur)[parts[i]];
    }
    if (!cur->contains(parts.back()))
        throw std::invalid_argument("parameter path not found: " + dotted);
    (*cur)[parts.back()] = value;
}

struct SweepCell {
    double value = 0.0;
    bool ok = false;
    std::string row;
};

SweepCell run_sweep_cell(nlohmann::json doc, const std::string& param, double value,
                         long long seed) {
    SweepCell cell;
    cell.value = value;
    try {
        patch_json_path(doc, param, value);
        agora::Scenario sc = agora::load_scenario(doc);
        if (seed >= 0) sc.config.seed = static_cast<std::uint64_t>(seed);

        std::vector<agora::DiagnosticsRecord> records;
        if (sc.mode == agora::RunMode::kinetic)
            records = agora::run_kinetic(sc.config).records;
        else
            records = agora::run(sc.config).records;

        std::vector<double> ts, vs;
        for (const auto& r : records) {
            ts.push_back(r.t);
            vs.push_back(r.variance);
        }
        std::string exponent = "nan";
        try {
            double e = agora::fit_decay_exponent(ts, vs, 0.5 * sc.config.t_end, sc.config.t_end);
            exponent = agora::format_double(e);
        } catch (const std::exception&) {
        }
        const auto& last = records.back();
        cell.row = agora::format_double(value) + "," + agora::format_double(last.variance) + "," +
                   agora::format_double(last.m1[0]) + "," + exponent;
        cell.ok = true;
    } catch (const std::exception& e) {
        cell.row = agora::format_double(value) + ",error: " + e.what() + ",,";
    }
    return cell;
}

int cmd_sweep(const std::string& config_path, const std::string& param,
              const std::vector<double>& values, const GlobalOpts& g) {
    if (values.empty()) {
        std::cerr << "sweep: empty values list\n";
        return kExitBadConfig;
    }
    nlohmann::json doc;
    try {
        doc = agora::load_toml_file(config_path);
        agora::load_scenario(doc);  // validate before launching cells
    } catch (const std::exception& e) {
        std::cerr << "invalid config: " << e.what() << "\n";
        return kExitBadConfig;
    }

    std::vector<SweepCell> cells(values.size());
    std::size_t next = 0;
    std::size_t budget = std::max(1, g.workers);
    while (next < values.size()) {
        std::size_t batch = std::min(budget, values.size() - next);
        std::vector<std::future<SweepCell>> futs;
        for (std::size_t i = 0; i < batch; ++i)
            futs.push_back(std::async(std::launch::async, run_sweep_cell, doc, param,
                                      values[next + i], g.seed));
        for (std::size_t i = 0; i < batch; ++i) cells[next + i] = futs[i].get();
        next += batch;
    }

    std::string csv = param + ",final_V,final_m1_1,decay_exponent\n";
    bool any_failed = false;
    for (const SweepCell& c : cells) {
        csv += c.row + "\n";
        any_failed = any_failed || !c.ok;
    }
    agora::atomic_write((std::filesystem::path(g.out) / "sweep.csv").string(), csv);
    std::cout << "wrote " << g.out << "/sweep.csv (" << values.size() << " cells)\n";
    return any_failed ? kExitFailedCheck : kExitOk;
}

int cmd_report(const std::string& run_dir) {
    namespace fs = std::filesystem;
    fs::path csv = fs::path(run_dir) / "trajectory.csv";
    std::ifstream in(csv);
    if (!in) {
        std::cerr << "report: cannot open " << csv.string() << "\n";
        return kExitBadConfig;
    }
    std::string header;
    std::getline(in, header);
    std::vector<std::string> cols;
    {
        std::stringstream ss(header);
        std::string c;
        while (std::getline(ss, c, ',')) cols.push_back(c);
    }
    std::vector<std::vector<double>> data(cols.size());
    std::string line;
    while (std::getline(in, line)) {
        std::stringstream ss(line);
        std::string tok;
        std::size_t i = 0;
        while (std::getline(ss, tok, ',') && i < cols.size()) data[i++].push_back(std::stod(tok));
    }
    if (data[0].empty()) {
        std::cerr << "report: no rows in " << csv.string() << "\n";
        return kExitBadConfig;
    }
    for (std::size_t i = 1; i < cols.size(); ++i) {
        fs::path out = fs::path(run_dir) / (cols[i] + ".dat");
        agora::write_series_dat(out.string(), data[0], data[i]);
    }
    std::cout << "wrote " << cols.size() - 1 << " series files under " << run_dir << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"consensus-dynamics scenario runner"};
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--workers", g.workers, "parallel worker budget (sweep)")
        ->capture_default_str();
    app.add_option("--seed", g.seed, "override the scenario seed");

    std::string config_path, suite = "all", param;
    std::vector<double> values;
    std::string scenario_dir = AGORA_SCENARIO_DIR;
    std::string report_dir;

    CLI::App* run = app.add_subcommand("run", "execute a scenario");
    run->add_option("config", config_path, "scenario file")->required();

    CLI::App* verify = app.add_subcommand("verify", "run acceptance checks");
    verify->add_option("suite", suite,
                       "moments|variance|clusters|kinetic|stability|all");
    verify->add_option("--scenarios", scenario_dir, "bundled scenario directory")
        ->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "rerun across parameter values");
    sweep->add_option("config", config_path, "scenario file")->required();
    sweep->add_option("--param", param, "dotted config path, e.g. growth.alpha")->required();
    sweep->add_option("--values", values, "values to sweep")->delimiter(',');

    CLI::App* report = app.add_subcommand("report", "emit plot series from a run directory");
    report->add_option("dir", report_dir, "run output directory")->required();

    // let global options (--out, --seed, ...) appear after the subcommand too
    for (CLI::App* sub : app.get_subcommands({})) sub->fallthrough();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed()) return cmd_run(config_path, g);
        if (verify->parsed()) return cmd_verify(suite, scenario_dir);
        if (sweep->parsed()) return cmd_sweep(config_path, param, values, g);
        if (report->parsed()) return cmd_report(report_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntimeAbort;
    }
    return kExitOk;
}
