#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "camsim/config.hpp"
#include "camsim/io.hpp"
#include "camsim/metrics.hpp"
#include "camsim/sim.hpp"

namespace py = pybind11;

namespace {

nlohmann::json to_json(const py::object& obj) {
  const py::object dumps = py::module_::import("json").attr("dumps");
  return nlohmann::json::parse(dumps(obj).cast<std::string>());
}

py::object from_json(const nlohmann::json& j) {
  const py::object loads = py::module_::import("json").attr("loads");
  return loads(py::str(j.dump()));
}

camsim::RunConfig config_from_object(const py::object& obj) {
  if (obj.is_none()) return camsim::RunConfig{};
  return camsim::run_config_from_json(to_json(obj));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "CAM beaconing / reactive DCC channel simulator";
  m.attr("__version__") = camsim::kVersion;

  m.def(
      "lookup_interval",
      [](double cl) { return camsim::DccTable::standard().lookup_interval_ms(cl); },
      py::arg("cl"), "CAM interval in ms for a channel load in [0, 1]");

  m.def(
      "dcc_table",
      [] {
        std::vector<py::dict> rows;
        for (const auto& row : camsim::DccTable::standard().rows()) {
          py::dict d;
          d["state"] = row.state;
          d["cl_lower"] = row.cl_lower;
          d["cl_upper"] = row.cl_upper;
          d["t_off_ms"] = row.t_off_ms;
          rows.push_back(std::move(d));
        }
        return rows;
      },
      "The reactive DCC state table");

  py::class_<camsim::ChannelLoad>(m, "ChannelLoad")
      .def(py::init<double>(), py::arg("alpha"))
      .def("update", &camsim::ChannelLoad::update, py::arg("cbr"))
      .def_property_readonly("value", &camsim::ChannelLoad::value)
      .def_property_readonly("alpha", &camsim::ChannelLoad::alpha);

  m.def(
      "airtime_us",
      [](int mpdu_bytes) { return camsim::airtime_us(camsim::RadioParams::defaults(), mpdu_bytes); },
      py::arg("mpdu_bytes"), "Frame airtime in microseconds at the default PHY");

  m.def(
      "path_loss_db",
      [](double d_m) { return camsim::path_loss_db(camsim::RadioParams::defaults(), d_m); },
      py::arg("distance_m"));

  m.def(
      "rx_power_dbm",
      [](double d_m) { return camsim::rx_power_dbm(camsim::RadioParams::defaults(), d_m); },
      py::arg("distance_m"));

  m.def(
      "jain_index",
      [](const std::vector<std::int64_t>& counts) -> std::optional<double> {
        return camsim::jain_index(counts);
      },
      py::arg("counts"), "Jain's fairness index; None when undefined");

  m.def(
      "build_highway",
      [](const std::string& density, bool heterogeneity, std::uint64_t seed) {
        const camsim::Scenario sc = camsim::build_highway(
            camsim::RoadConfig{}, camsim::density_from_string(density), heterogeneity, seed);
        py::list nodes;
        for (const auto& n : sc.nodes) {
          py::dict d;
          d["id"] = n.id;
          d["role"] = n.role == camsim::NodeRole::Vehicle ? "vehicle" : "rsu";
          d["x_m"] = n.x_m;
          d["y_m"] = n.y_m;
          d["sensitivity_offset_db"] = n.sensitivity_offset_db;
          nodes.append(std::move(d));
        }
        py::dict out;
        out["density"] = density;
        out["vehicles"] = sc.vehicle_count();
        out["rsus"] = sc.rsu_count();
        out["nodes"] = std::move(nodes);
        return out;
      },
      py::arg("density"), py::arg("heterogeneity") = false, py::arg("seed") = 1);

  m.def("default_config",
        [] { return from_json(camsim::resolved_config_json(camsim::RunConfig{})); });

  m.def(
      "run",
      [](const py::object& config, const std::string& out_dir) {
        const camsim::RunConfig cfg = config_from_object(config);
        camsim::RunResult result;
        {
          py::gil_scoped_release release;
          result = camsim::run_simulation(cfg);
          camsim::write_run_outputs(out_dir, cfg, result);
        }
        py::dict out;
        out["out_dir"] = out_dir;
        out["vehicles"] = result.scenario->vehicle_count();
        out["rsus"] = result.scenario->rsu_count();
        out["frames_generated"] = result.frames_generated;
        out["frames_transmitted"] = result.metrics->total_transmitted_frames();
        out["queue_drops"] = result.queue_drops;
        const auto jain = result.metrics->jain();
        out["jain"] = jain ? py::cast(*jain) : py::none();
        return out;
      },
      py::arg("config"), py::arg("out_dir"),
      "Run one simulation and write the CSV outputs; config may be None for defaults");
}
