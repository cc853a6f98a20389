#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "itrex/groundstate.hpp"
#include "itrex/qls.hpp"

namespace itrex {

using json = nlohmann::ordered_json;

// Schema / reference-resolution problems (exit code 2 at the CLI).
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// Oracle comparison failed in --check mode (exit code 4 at the CLI).
struct CheckFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline constexpr const char* kConfigSchema = "itrex-config-v1";
inline constexpr const char* kResultSchema = "itrex-result-v1";

// Parsed experiment description: named objects plus the task block.
struct ExperimentConfig {
    json raw;
    std::string task;

    static ExperimentConfig parse(const json& j);
    static ExperimentConfig load(const std::string& path);

    HamiltonianSum hamiltonian(const std::string& name) const;
    StateVector state(const std::string& name) const;
    GateProgram program(const json& spec) const;
    InterleavedCircuit circuit(const std::string& name) const;
    Observable observable(const std::string& name) const;
    EvalMode mode() const;
    double eps() const;
    int order() const;
};

// Execute the task named in the config.  Returns the result JSON; throws
// ConfigError / CheckFailure / std::exception per the exit-code contract.
json run_config(const ExperimentConfig& cfg, bool check, int workers);

// Sweep task: one CSV row per axis point plus a trailing fit row.
std::string sweep_config(const ExperimentConfig& cfg, int workers);

}  // namespace itrex
