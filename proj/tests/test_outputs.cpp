#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "camsim/io.hpp"
#include "camsim/plot.hpp"
#include "camsim/sim.hpp"
#include "camsim/sweep.hpp"

using namespace camsim;
namespace fs = std::filesystem;

namespace {

RunConfig tiny_config() {
  RunConfig cfg;
  cfg.density = Density::Sparse;
  cfg.duration_us = 1'500'000;
  cfg.warmup_us = 300'000;
  cfg.seed = 11;
  return cfg;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "camsim_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

const char* kRunFiles[] = {"run_meta.json",
                           "scenario.csv",
                           "pdr_vs_distance.csv",
                           "pdr_vs_distance_by_role.csv",
                           "pir_vs_distance.csv",
                           "pir_vs_distance_by_role.csv",
                           "bins_20ms.csv",
                           "fairness.csv",
                           "controller_trace.csv"};

}  // namespace

TEST_CASE("identical configs produce byte-identical outputs") {
  const RunConfig cfg = tiny_config();
  const fs::path a = fresh_dir("det_a");
  const fs::path b = fresh_dir("det_b");
  write_run_outputs(a, cfg, run_simulation(cfg));
  write_run_outputs(b, cfg, run_simulation(cfg));

  for (const char* file : kRunFiles) {
    CAPTURE(file);
    CHECK(slurp(a / file) == slurp(b / file));
  }
}

TEST_CASE("run_meta.json reloads as a config and reproduces the run") {
  const RunConfig cfg = tiny_config();
  const fs::path a = fresh_dir("meta_a");
  write_run_outputs(a, cfg, run_simulation(cfg));

  const RunConfig reloaded = load_run_config(a / "run_meta.json");
  const fs::path b = fresh_dir("meta_b");
  write_run_outputs(b, reloaded, run_simulation(reloaded));
  for (const char* file : kRunFiles) {
    CAPTURE(file);
    CHECK(slurp(a / file) == slurp(b / file));
  }
}

TEST_CASE("different seeds change the outputs") {
  RunConfig cfg = tiny_config();
  const fs::path a = fresh_dir("seed_a");
  write_run_outputs(a, cfg, run_simulation(cfg));
  cfg.seed = 12;
  const fs::path b = fresh_dir("seed_b");
  write_run_outputs(b, cfg, run_simulation(cfg));
  CHECK(slurp(a / "bins_20ms.csv") != slurp(b / "bins_20ms.csv"));
}

TEST_CASE("controller trace rows appear only when a value changes") {
  RunConfig cfg = tiny_config();
  cfg.variant = DccVariant::from_name("reactive3");
  const RunResult result = run_simulation(cfg);
  REQUIRE(!result.trace.empty());

  struct Key {
    double cbr, cl;
    std::string state;
    std::int64_t setting;
  };
  std::map<NodeId, Key> last_note;
  std::map<NodeId, std::int64_t> last_gap;
  for (const TraceRow& row : result.trace) {
    if (row.realized_gap_us >= 0) {
      const auto it = last_gap.find(row.node);
      CHECK((it == last_gap.end() || it->second != row.realized_gap_us));
      last_gap[row.node] = row.realized_gap_us;
    } else {
      const auto it = last_note.find(row.node);
      if (it != last_note.end()) {
        const Key& k = it->second;
        const bool same = k.cbr == row.cbr && k.cl == row.cl && k.state == row.state &&
                          k.setting == row.setting_ms;
        CHECK_FALSE(same);
      }
      last_note[row.node] = Key{row.cbr, row.cl, row.state, row.setting_ms};
    }
  }
}

TEST_CASE("config validation reports the offending field") {
  nlohmann::json j;
  j["alpha"] = 1.3;
  try {
    run_config_from_json(j);
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.field() == "alpha");
  }

  nlohmann::json unknown;
  unknown["tx_powr_dbm"] = 23;
  CHECK_THROWS_AS(run_config_from_json(unknown), ConfigError);
}

TEST_CASE("sweep runs the cross product and parallelism changes nothing") {
  SweepSpec spec;
  spec.base = tiny_config();
  spec.base.duration_us = 800'000;
  spec.base.warmup_us = 200'000;
  spec.variants = {DccVariant::from_name("off"), DccVariant::from_name("reactive1")};
  spec.densities = {Density::Sparse, Density::Medium};
  spec.alphas = {1.0};
  spec.seeds = {3};

  const fs::path seq = fresh_dir("sweep_seq");
  const fs::path par = fresh_dir("sweep_par");
  const auto infos_seq = run_sweep(spec, seq, 1);
  const auto infos_par = run_sweep(spec, par, 4);

  REQUIRE(infos_seq.size() == 4);
  REQUIRE(infos_par.size() == 4);
  for (const auto& info : infos_seq) CHECK(info.status == "ok");
  CHECK(slurp(seq / "index.csv") == slurp(par / "index.csv"));
  for (const auto& info : infos_seq) {
    for (const char* file : kRunFiles) {
      CAPTURE(info.dir);
      CAPTURE(file);
      CHECK(slurp(seq / info.dir / file) == slurp(par / info.dir / file));
    }
  }
}

TEST_CASE("plot families render SVG from CSVs") {
  const RunConfig cfg = tiny_config();
  const fs::path dir = fresh_dir("plot_run");
  write_run_outputs(dir, cfg, run_simulation(cfg));

  for (const std::string family : {"pdr", "pir", "bins", "trace"}) {
    CAPTURE(family);
    const fs::path svg = plot_family(dir, family, dir / (family + ".svg"));
    const std::string content = slurp(svg);
    CHECK(content.starts_with("<svg"));
    CHECK(content.find("</svg>") != std::string::npos);
  }
  CHECK_THROWS(plot_family(dir, "nope", dir / "x.svg"));
  CHECK_THROWS(plot_family(dir, "alpha", dir / "x.svg"));  // needs a sweep dir
}

TEST_CASE("alpha family renders from a sweep directory") {
  SweepSpec spec;
  spec.base = tiny_config();
  spec.base.duration_us = 800'000;
  spec.base.warmup_us = 200'000;
  spec.base.density = Density::Sparse;
  spec.variants = {DccVariant::from_name("reactive3")};
  spec.densities = {Density::Sparse};
  spec.alphas = {0.5, 1.0};
  spec.seeds = {3};
  const fs::path dir = fresh_dir("sweep_alpha");
  run_sweep(spec, dir, 2);
  const fs::path svg = plot_family(dir, "alpha", dir / "alpha.svg");
  CHECK(slurp(svg).starts_with("<svg"));
}
