#ifndef CAMSIM_SWEEP_HPP
#define CAMSIM_SWEEP_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "camsim/config.hpp"

namespace camsim {

// Cross-product experiment grid over a shared base config. Lists left out of
// the spec file default to the base config's single value.
struct SweepSpec {
  std::vector<DccVariant> variants;
  std::vector<Density> densities;
  std::vector<double> alphas;
  std::vector<std::uint64_t> seeds;
  RunConfig base;

  std::size_t run_count() const {
    return variants.size() * densities.size() * alphas.size() * seeds.size();
  }
};

SweepSpec sweep_spec_from_json(const nlohmann::json& j);
SweepSpec load_sweep_spec(const std::filesystem::path& file);

struct SweepRunInfo {
  std::string dir;  // relative to the sweep output directory
  std::string variant;
  std::string density;
  double alpha = 1.0;
  std::uint64_t seed = 0;
  std::string status;  // "ok" or "error: ..."
};

std::string sweep_run_dir_name(const DccVariant& variant, Density density, double alpha,
                               std::uint64_t seed);

// Executes the grid, one isolated run per cell, `parallelism` runs at a time.
// Failures are recorded in the returned infos (and index.csv) and do not
// stop the sweep. Writes <out_dir>/index.csv when done.
std::vector<SweepRunInfo> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                    int parallelism);

}  // namespace camsim

#endif
