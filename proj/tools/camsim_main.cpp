// Command-line front end: single runs, experiment sweeps, figure rendering,
// and config validation.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "camsim/config.hpp"
#include "camsim/io.hpp"
#include "camsim/plot.hpp"
#include "camsim/sim.hpp"
#include "camsim/sweep.hpp"

namespace fs = std::filesystem;

namespace {

int cmd_run(const std::string& config_path, const std::string& out_dir,
            std::optional<std::uint64_t> seed) {
  camsim::RunConfig cfg = camsim::load_run_config(config_path);
  if (seed) cfg.seed = *seed;
  const camsim::RunResult result = camsim::run_simulation(cfg);
  camsim::write_run_outputs(out_dir, cfg, result);

  const auto jain = result.metrics->jain();
  std::cout << "wrote " << out_dir << "  (variant=" << cfg.variant.name()
            << " density=" << to_string(cfg.density) << " seed=" << cfg.seed
            << " vehicles=" << result.scenario->vehicle_count()
            << " frames_tx=" << result.metrics->total_transmitted_frames()
            << " jain=" << (jain ? camsim::format_fixed(*jain, 4) : std::string("undefined"))
            << ")\n";
  return 0;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir, int parallelism) {
  const camsim::SweepSpec spec = camsim::load_sweep_spec(spec_path);
  const auto infos = camsim::run_sweep(spec, out_dir, parallelism);
  int failures = 0;
  for (const auto& info : infos) {
    if (info.status != "ok") {
      ++failures;
      std::cerr << info.dir << ": " << info.status << '\n';
    }
  }
  std::cout << "wrote " << infos.size() << " runs to " << out_dir << " (" << failures
            << " failed)\n";
  return failures == 0 ? 0 : 1;
}

int cmd_plot(const std::string& dir, const std::string& family, std::string out_file,
             camsim::NodeId node) {
  if (out_file.empty()) out_file = (fs::path(dir) / (family + ".svg")).string();
  const auto written = camsim::plot_family(dir, family, out_file, node);
  std::cout << "wrote " << written.string() << '\n';
  return 0;
}

int cmd_validate(const std::string& config_path) {
  camsim::load_run_config(config_path);
  std::cout << config_path << ": ok\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"camsim - CAM beaconing / reactive DCC channel simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("camsim ") + camsim::kVersion);

  std::string config_path;
  std::string out_dir = "out/run";
  std::optional<std::uint64_t> seed;
  auto* run = app.add_subcommand("run", "execute one simulation run");
  run->add_option("config", config_path, "run config JSON file")->required();
  run->add_option("--out", out_dir, "output directory");
  run->add_option("--seed", seed, "override the config seed");

  std::string spec_path;
  std::string sweep_out = "out/sweep";
  int parallelism = 1;
  auto* sweep = app.add_subcommand("sweep", "execute a variant/density/alpha/seed grid");
  sweep->add_option("spec", spec_path, "sweep spec JSON file")->required();
  sweep->add_option("--out", sweep_out, "output directory");
  sweep->add_option("--parallelism", parallelism, "concurrent runs")->check(CLI::PositiveNumber);

  std::string plot_dir;
  std::string family;
  std::string plot_out;
  camsim::NodeId trace_node = camsim::kNoNode;
  auto* plot = app.add_subcommand("plot", "render a figure family from run/sweep CSVs");
  plot->add_option("dir", plot_dir, "run or sweep output directory")->required();
  plot->add_option("--family", family, "pdr|pir|bins|trace|alpha")->required();
  plot->add_option("--out", plot_out, "output SVG file (default <dir>/<family>.svg)");
  plot->add_option("--node", trace_node, "node id for the trace family");

  std::string validate_path;
  auto* validate = app.add_subcommand("validate-config", "check a run config file");
  validate->add_option("config", validate_path, "run config JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(config_path, out_dir, seed);
    if (sweep->parsed()) return cmd_sweep(spec_path, sweep_out, parallelism);
    if (plot->parsed()) return cmd_plot(plot_dir, family, plot_out, trace_node);
    if (validate->parsed()) return cmd_validate(validate_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
