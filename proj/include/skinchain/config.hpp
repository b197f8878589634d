// config.hpp — run configuration shared by the CLI commands
#pragma once

#include "skinchain/dynamics.hpp"
#include "skinchain/model.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace skinchain::config {

// Flat key-value configuration: sections chain / protocol / numerics / output.
// Populated from a config file and/or command-line flags (flags win).
struct RunConfig {
    // [chain]
    model::ChainParams chain{11, 1.0, 0.0, 1.0, 1.0};

    // [protocol]
    std::string kind = "direct";       // direct | pontus | both
    std::vector<int> initial_sites{1}; // 1-based site indices of |n⟩⟨n| states
    double tau = 0.0;                  // single preparation time (relax command)
    double eps1 = 0.0;                 // 0 selects π/(2 τ)
    double tau_min = 0.0, tau_max = 0.0, tau_step = 0.0; // sweep grid

    // [numerics]
    double threshold = 0.01;
    double dt = 0.01;
    double horizon = 200.0;
    double integrator_tol = 1e-9;
    std::string trel_mode = "settling"; // settling | first-crossing

    // [output]
    std::string out_dir = ".";
    std::string format = "csv"; // csv | json
    std::uint64_t seed = 0;     // seed for randomized validation runs

    void validate() const; // throws ConfigError

    dynamics::TrelMode parsed_trel_mode() const;
    dynamics::ProtocolOptions protocol_options(bool early_stop) const;
    std::vector<double> sweep_tau_grid() const; // tau_min : tau_step : tau_max
    double effective_eps1() const;              // eps1 or π/(2 τ)
};

// Loads an INI/TOML-style config file (sections [chain], [protocol],
// [numerics], [output]; # and ; comments; quoted strings; bracketed integer
// lists) into an existing RunConfig. Command-line flags are applied after
// this, so they override file values. Throws ConfigError on unknown keys or
// malformed values.
void load_config_file(RunConfig& cfg, const std::string& path);

} // namespace skinchain::config
