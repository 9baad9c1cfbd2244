#include "camsim/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace camsim {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);  // '\n' line endings everywhere
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string format_fixed(double value, int precision) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, precision);
  if (res.ec != std::errc{}) throw std::runtime_error("format_fixed: value out of range");
  return std::string(buf, res.ptr);
}

void write_run_outputs(const std::filesystem::path& dir, const RunConfig& cfg,
                       const RunResult& result) {
  std::filesystem::create_directories(dir);
  const Scenario& scenario = *result.scenario;
  const MetricsStore& metrics = *result.metrics;

  {
    nlohmann::json meta;
    meta["config"] = resolved_config_json(cfg);
    meta["version"] = kVersion;
    meta["cam_queue_depth"] = 1;
    meta["vehicles"] = scenario.vehicle_count();
    meta["rsus"] = scenario.rsu_count();
    meta["frames_generated"] = result.frames_generated;
    meta["frames_transmitted"] = metrics.total_transmitted_frames();
    meta["queue_drops"] = result.queue_drops;
    nlohmann::json table = nlohmann::json::array();
    const DccTable dcc_table = DccTable::standard();
    for (const auto& row : dcc_table.rows()) {
      table.push_back({{"state", row.state},
                       {"cl_lower", row.cl_lower},
                       {"cl_upper", row.cl_upper},
                       {"t_off_ms", row.t_off_ms}});
    }
    meta["dcc_table"] = table;
    auto out = open_out(dir / "run_meta.json");
    out << meta.dump(2) << '\n';
  }

  {
    auto out = open_out(dir / "scenario.csv");
    out << "id,role,x_m,y_m,sensitivity_offset_db\n";
    for (const NodeSpec& node : scenario.nodes) {
      out << node.id << ',' << (node.role == NodeRole::Vehicle ? "vehicle" : "rsu") << ','
          << format_fixed(node.x_m, 3) << ',' << format_fixed(node.y_m, 3) << ','
          << format_fixed(node.sensitivity_offset_db, 6) << '\n';
    }
  }

  {
    auto out = open_out(dir / "pdr_vs_distance.csv");
    out << "bin_center_m,generated,received,pdr\n";
    for (const PdrBinStat& b : metrics.pdr_by_distance()) {
      out << b.bin_center_m << ',' << b.generated << ',' << b.received << ','
          << format_fixed(b.pdr(), 6) << '\n';
    }
  }

  {
    auto out = open_out(dir / "pdr_vs_distance_by_role.csv");
    out << "rx_role,bin_center_m,generated,received,pdr\n";
    for (const NodeRole role : {NodeRole::Vehicle, NodeRole::Rsu}) {
      const char* name = role == NodeRole::Vehicle ? "vehicle" : "rsu";
      for (const PdrBinStat& b : metrics.pdr_by_distance_for_role(role)) {
        out << name << ',' << b.bin_center_m << ',' << b.generated << ',' << b.received << ','
            << format_fixed(b.pdr(), 6) << '\n';
      }
    }
  }

  {
    auto out = open_out(dir / "pir_vs_distance.csv");
    out << "bin_center_m,samples,mean_pir_s\n";
    for (const PirBinStat& b : metrics.pir_stats()) {
      out << b.bin_center_m << ',' << b.samples << ',' << format_fixed(b.mean_pir_s, 6) << '\n';
    }
  }

  {
    auto out = open_out(dir / "pir_vs_distance_by_role.csv");
    out << "rx_role,bin_center_m,samples,mean_pir_s\n";
    for (const NodeRole role : {NodeRole::Vehicle, NodeRole::Rsu}) {
      const char* name = role == NodeRole::Vehicle ? "vehicle" : "rsu";
      for (const PirBinStat& b : metrics.pir_stats_for_role(role)) {
        out << name << ',' << b.bin_center_m << ',' << b.samples << ','
            << format_fixed(b.mean_pir_s, 6) << '\n';
      }
    }
  }

  {
    auto out = open_out(dir / "bins_20ms.csv");
    out << "bin_start_s,tx_count,mean_cbr\n";
    for (const TimeBinStat& b : metrics.tx_and_cbr_bins()) {
      out << format_fixed(b.bin_start_s, 6) << ',' << b.tx_count << ','
          << format_fixed(b.mean_cbr, 6) << '\n';
    }
  }

  {
    auto out = open_out(dir / "fairness.csv");
    out << "n_vehicles,jain\n";
    const auto jain = metrics.jain();
    out << scenario.vehicle_count() << ','
        << (jain ? format_fixed(*jain, 6) : std::string("undefined")) << '\n';
  }

  {
    auto out = open_out(dir / "controller_trace.csv");
    out << "node,t_s,cbr,cl,state,setting_ms,realized_gap_ms\n";
    for (const TraceRow& row : result.trace) {
      out << row.node << ',' << format_fixed(static_cast<double>(row.t_us) * 1e-6, 6) << ',';
      if (row.cbr >= 0.0) out << format_fixed(row.cbr, 6);
      out << ',' << format_fixed(row.cl, 6) << ',' << row.state << ',' << row.setting_ms << ',';
      if (row.realized_gap_us >= 0)
        out << format_fixed(static_cast<double>(row.realized_gap_us) * 1e-3, 3);
      out << '\n';
    }
  }
}

}  // namespace camsim
