#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "agora/micro.hpp"

namespace agora {

enum class RunMode { micro, kinetic, both };

std::string to_string(RunMode m);

/// A declarative run description: which model(s) to evolve and every numeric
/// parameter of the scenario. Schema violations and unknown keys are rejected
/// at load time with the offending key path in the message.
struct Scenario {
    std::string name;
    RunMode mode = RunMode::micro;
    SimConfig config;
};

GrowthRate make_rate(const nlohmann::json& spec);
InfluenceKernel make_kernel(const nlohmann::json& spec);
InflowProfile make_profile(const nlohmann::json& spec, int dim, double n0);
InitialProfile make_initial(const nlohmann::json& spec, int dim);

Scenario load_scenario(const nlohmann::json& doc);
Scenario load_scenario_file(const std::string& path);

}  // namespace agora
