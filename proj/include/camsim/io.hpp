#ifndef CAMSIM_IO_HPP
#define CAMSIM_IO_HPP

#include <filesystem>
#include <string>

#include "camsim/sim.hpp"

namespace camsim {

// Locale-independent fixed-point formatting; CSV cells must not depend on
// the process locale.
std::string format_fixed(double value, int precision);

// Emits the full output set for one run into `dir` (created if needed):
// run_meta.json, scenario.csv, pdr_vs_distance.csv, pdr_vs_distance_by_role.csv,
// pir_vs_distance.csv, pir_vs_distance_by_role.csv, bins_20ms.csv,
// fairness.csv, controller_trace.csv. Byte-identical for identical configs.
void write_run_outputs(const std::filesystem::path& dir, const RunConfig& cfg,
                       const RunResult& result);

}  // namespace camsim

#endif
