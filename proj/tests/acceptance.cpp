// Acceptance gate: runs one numbered criterion group (or all of them) against
// the bundled baseline scenario and prints one PASS/FAIL line per check with
// the measured value and its pinned tolerance. Exit 0 only if every check in
// the selected group passes.

#include <cstdlib>
#include <iostream>
#include <string>

#include "starsec/scenario.hpp"
#include "starsec/validation.hpp"

int main(int argc, char** argv) {
    std::string config_path = std::string(SCENARIO_DIR) + "/baseline.cfg";
    int criterion = 0;  // 0 runs all nine groups
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--criterion" && i + 1 < argc) {
            criterion = std::atoi(argv[++i]);
            if (criterion < 1 || criterion > 9) {
                std::cerr << "--criterion must be in 1..9\n";
                return 2;
            }
        } else if (arg == "--config" && i + 1 < argc) {
            config_path = argv[++i];
        } else {
            std::cerr << "usage: acceptance [--criterion N] [--config PATH]\n";
            return 2;
        }
    }

    try {
        const starsec::ScenarioConfig cfg = starsec::load_config(config_path);
        const starsec::ValidationReport report =
            criterion ? starsec::run_validate_criterion(cfg, criterion)
                      : starsec::run_validate(cfg);
        std::cout << starsec::format_report(report);
        int passed = 0;
        for (const auto& check : report.checks) passed += check.pass ? 1 : 0;
        std::cout << passed << " of " << report.checks.size() << " checks passed\n";
        return report.all_pass() ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
