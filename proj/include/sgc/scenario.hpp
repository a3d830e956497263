#pragma once

#include "sgc/cost.hpp"
#include "sgc/simulator.hpp"

#include <map>
#include <string>

namespace sgc {

// Parsed scenario file: canteen and model blocks with defaults applied,
// plus an optional study block of free-form arguments for the command line.
struct ScenarioConfig {
    CanteenProfile profile;
    ModelParams model;
    PriceCatalog catalog;
    SimOptions sim;
    int n_meals = 100;
    double calibration_target = 0.84;
    bool beta_given = false; // true when the scenario pins the coefficient
    std::map<std::string, std::string> study;

    // Calibrates the transmission coefficient against the stable-period
    // target unless the scenario pinned it explicitly.
    void ensure_calibrated();
};

// Loads and validates a scenario file (flat INI: [section] plus key = value,
// '#'/';' comments). Unknown sections or keys are rejected with the
// offending name and line. An empty file yields the full baseline defaults.
ScenarioConfig load_scenario(const std::string& path);

ScenarioConfig default_scenario();

// Human-readable echo of the effective configuration.
std::string effective_config_echo(const ScenarioConfig& config);

// Price-catalog resolution order: SGC_PRICE_CATALOG environment variable,
// then the scenario's [prices] catalog path, then built-in defaults.
PriceCatalog resolve_price_catalog(const ScenarioConfig& config);

} // namespace sgc
