#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "starsec/closed_form.hpp"
#include "starsec/geometry.hpp"
#include "starsec/monte_carlo.hpp"
#include "starsec/optimizer.hpp"
#include "starsec/rf_stats.hpp"

namespace starsec {

// Malformed or invariant-violating configuration; the message names the
// offending field or the file line.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class SweepVariable { PsDbm, M, Kappa, Zeta };

// One figure-style sweep: the swept variable, its values, and the report
// columns to emit. kappas/powers_dbm fan the sweep out into one CSV per
// family value (ignored when they coincide with the swept variable).
struct SweepSpec {
    SweepVariable variable = SweepVariable::PsDbm;
    std::vector<double> values;
    std::vector<std::string> outputs;
    std::vector<double> kappas;
    std::vector<double> powers_dbm;
};

struct OptimizeSpec {
    SearchBox box;
    OptimizerSettings settings;
};

struct ScenarioConfig {
    NodeLayout layout;
    Position3D uav;  // operating UAV position for reports and sweeps
    FadingParams fading;
    PowerConfig power;
    PhaseErrorModel phase;
    int elements = 1;  // STAR-RIS element count M
    double w1 = 0.45;  // transmit-region secrecy weight
    double w2 = 0.55;  // reflect-region secrecy weight; w1 <= w2, w1 + w2 = 1
    int quad_order = 64;
    McSettings mc;
    std::optional<SweepSpec> sweep;
    std::optional<OptimizeSpec> optimize;
};

// Parses and fully validates a scenario file. Missing file or unreadable
// path throws IoError; parse errors (with line numbers) and invariant
// violations (naming the field) throw ConfigError.
ScenarioConfig load_config(const std::string& path);

// Same grammar from an in-memory string; origin names the source in errors.
ScenarioConfig load_config_text(const std::string& text, const std::string& origin);

// Canonical resolved form: every field explicit, defaults applied, stable key
// order, shortest round-trip number formatting. Reparsing it reproduces the
// config exactly.
std::string serialize_config(const ScenarioConfig& cfg);

const char* to_string(SweepVariable v);
const char* to_string(EvePhaseModel m);

}  // namespace starsec
