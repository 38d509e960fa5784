#pragma once

#include <filesystem>
#include <vector>

#include "starsec/optimizer.hpp"
#include "starsec/scenario.hpp"

namespace starsec {

// One CSV per sweep (and per family value), written under out_dir. Every CSV
// starts with '#' metadata lines carrying the tool version and the fully
// resolved config, then a header row, then one row per swept value with the
// requested metrics at 9 significant digits. Output is byte-identical across
// runs for identical config and seed. with_mc appends mc_<metric>_mean and
// mc_<metric>_se columns.
std::vector<std::filesystem::path> run_sweep(const ScenarioConfig& cfg,
                                             const SweepSpec& spec, bool with_mc,
                                             const std::filesystem::path& out_dir);

struct OptimizeArtifacts {
    OptResult result;
    std::filesystem::path trace_csv;    // columns: round, wssr (nondecreasing)
    std::filesystem::path summary_csv;  // one row: x, y, z, zeta_star, wssr_star, rounds
};

OptimizeArtifacts run_optimize(const ScenarioConfig& cfg, const SearchBox& box,
                               const OptimizerSettings& settings,
                               const std::filesystem::path& out_dir);

}  // namespace starsec
