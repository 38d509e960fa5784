#pragma once

#include <string>
#include <vector>

#include "starsec/scenario.hpp"

namespace starsec {

// Test hook: scales the fitted Gamma spread before the distribution-fit
// check. omega_scale = 1 is the honest configuration; anything else is a
// deliberate corruption used as a negative control.
struct ValidationHooks {
    double omega_scale = 1.0;
};

struct CheckResult {
    int criterion = 0;
    std::string name;
    double measured = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::string detail;
};

struct ValidationReport {
    std::vector<CheckResult> checks;

    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
};

// The full validation suite (criteria 1 through 9). Checks that need Monte
// Carlo honor cfg.mc; closed-form checks are deterministic.
ValidationReport run_validate(const ScenarioConfig& cfg,
                              const ValidationHooks& hooks = {});

// One criterion group; criterion must be in [1, 9].
ValidationReport run_validate_criterion(const ScenarioConfig& cfg, int criterion,
                                        const ValidationHooks& hooks = {});

// One line per check: PASS/FAIL, name, measured value, tolerance, detail.
std::string format_report(const ValidationReport& report);

}  // namespace starsec
