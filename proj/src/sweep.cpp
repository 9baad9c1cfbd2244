#include "camsim/sweep.hpp"

#include <atomic>
#include <fstream>
#include <thread>

#include "camsim/io.hpp"
#include "camsim/sim.hpp"

namespace camsim {

SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw ConfigError("<root>", "sweep spec must be a JSON object");
  for (const auto& item : j.items()) {
    const std::string& k = item.key();
    if (k != "variants" && k != "densities" && k != "alphas" && k != "seeds" && k != "base")
      throw ConfigError(k, "unknown key");
  }

  SweepSpec spec;
  spec.base = run_config_from_json(j.value("base", nlohmann::json::object()));

  auto read_list = [&](const char* key, auto parse, auto& out, auto fallback) {
    if (!j.contains(key)) {
      out.push_back(fallback);
      return;
    }
    const auto& arr = j.at(key);
    if (!arr.is_array() || arr.empty()) throw ConfigError(key, "must be a non-empty array");
    for (const auto& v : arr) {
      try {
        out.push_back(parse(v));
      } catch (const std::exception& e) {
        throw ConfigError(key, e.what());
      }
    }
  };

  read_list(
      "variants", [](const nlohmann::json& v) { return DccVariant::from_name(v.get<std::string>()); },
      spec.variants, spec.base.variant);
  read_list(
      "densities",
      [](const nlohmann::json& v) { return density_from_string(v.get<std::string>()); },
      spec.densities, spec.base.density);
  read_list(
      "alphas",
      [](const nlohmann::json& v) {
        const double a = v.get<double>();
        if (!(a >= 0.0 && a <= 1.0)) throw std::invalid_argument("alpha must lie in [0, 1]");
        return a;
      },
      spec.alphas, spec.base.alpha);
  read_list(
      "seeds", [](const nlohmann::json& v) { return v.get<std::uint64_t>(); }, spec.seeds,
      spec.base.seed);
  return spec;
}

SweepSpec load_sweep_spec(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open sweep spec: " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cannot parse " + file.string() + ": " + e.what());
  }
  return sweep_spec_from_json(j);
}

std::string sweep_run_dir_name(const DccVariant& variant, Density density, double alpha,
                               std::uint64_t seed) {
  return variant.name() + "_" + to_string(density) + "_a" + format_fixed(alpha, 2) + "_s" +
         std::to_string(seed);
}

std::vector<SweepRunInfo> run_sweep(const SweepSpec& spec, const std::filesystem::path& out_dir,
                                    int parallelism) {
  if (spec.run_count() == 0) throw std::invalid_argument("run_sweep: empty cross product");
  if (parallelism < 1) throw std::invalid_argument("run_sweep: parallelism must be >= 1");

  struct Cell {
    RunConfig cfg;
    SweepRunInfo info;
  };
  std::vector<Cell> cells;
  for (const DccVariant& variant : spec.variants) {
    for (const Density density : spec.densities) {
      for (const double alpha : spec.alphas) {
        for (const std::uint64_t seed : spec.seeds) {
          Cell cell;
          cell.cfg = spec.base;
          cell.cfg.variant = variant;
          cell.cfg.density = density;
          cell.cfg.alpha = alpha;
          cell.cfg.seed = seed;
          cell.info = SweepRunInfo{sweep_run_dir_name(variant, density, alpha, seed),
                                   variant.name(), to_string(density), alpha, seed, ""};
          cells.push_back(std::move(cell));
        }
      }
    }
  }

  std::filesystem::create_directories(out_dir);

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= cells.size()) return;
      Cell& cell = cells[i];
      try {
        const RunResult result = run_simulation(cell.cfg);
        write_run_outputs(out_dir / cell.info.dir, cell.cfg, result);
        cell.info.status = "ok";
      } catch (const std::exception& e) {
        cell.info.status = std::string("error: ") + e.what();
      }
    }
  };

  const int threads = std::min<int>(parallelism, static_cast<int>(cells.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  std::vector<SweepRunInfo> infos;
  infos.reserve(cells.size());
  for (Cell& cell : cells) infos.push_back(std::move(cell.info));

  std::ofstream index(out_dir / "index.csv", std::ios::binary);
  if (!index) throw std::runtime_error("cannot write " + (out_dir / "index.csv").string());
  index << "dir,variant,density,alpha,seed,status\n";
  for (const SweepRunInfo& info : infos) {
    std::string status = info.status;
    for (char& c : status) {
      if (c == ',' || c == '\n') c = ';';
    }
    index << info.dir << ',' << info.variant << ',' << info.density << ','
          << format_fixed(info.alpha, 2) << ',' << info.seed << ',' << status << '\n';
  }
  return infos;
}

}  // namespace camsim
