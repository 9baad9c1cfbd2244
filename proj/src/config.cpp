#include "camsim/config.hpp"

#include <fstream>
#include <set>

namespace camsim {

namespace {

const char* to_string(RetriggerMode m) {
  return m == RetriggerMode::OnChange ? "on_change" : "every_notification";
}

RetriggerMode retrigger_from_string(const std::string& s) {
  if (s == "on_change") return RetriggerMode::OnChange;
  if (s == "every_notification") return RetriggerMode::EveryNotification;
  throw ConfigError("retrigger", "expected 'on_change' or 'every_notification', got '" + s + "'");
}

class Reader {
 public:
  explicit Reader(const nlohmann::json& j) : j_(j) {
    if (!j.is_object()) throw ConfigError("<root>", "config must be a JSON object");
  }

  template <typename T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(key, "invalid value type");
    }
  }

  void get_string(const char* key, std::string& out) { get<std::string>(key, out); }

  void reject_unknown() const {
    for (const auto& item : j_.items()) {
      if (!seen_.contains(item.key())) throw ConfigError(item.key(), "unknown key");
    }
  }

 private:
  const nlohmann::json& j_;
  std::set<std::string> seen_;
};

}  // namespace

RunConfig run_config_from_json(const nlohmann::json& j) {
  // A run_meta.json from an earlier run works as a config: its "config"
  // object is the resolved flat key set.
  if (j.is_object() && j.contains("config") && j.at("config").is_object())
    return run_config_from_json(j.at("config"));

  RunConfig cfg;
  Reader r(j);

  std::string density = to_string(cfg.density);
  std::string variant = cfg.variant.name();
  std::string retrigger = to_string(cfg.retrigger);
  double sim_duration_s = 10.0;
  double warmup_s = 2.0;
  std::int64_t cbr_monitor_ms = 100;
  std::int64_t metrics_bin_ms = 20;

  r.get_string("density", density);
  r.get_string("variant", variant);
  r.get("alpha", cfg.alpha);
  r.get("seed", cfg.seed);
  r.get("sim_duration_s", sim_duration_s);
  r.get("warmup_s", warmup_s);
  r.get("heterogeneity", cfg.heterogeneity);
  r.get_string("retrigger", retrigger);

  r.get("road_length_m", cfg.road.length_m);
  r.get("lanes_per_direction", cfg.road.lanes_per_direction);
  r.get("directions", cfg.road.directions);
  r.get("lane_width_m", cfg.road.lane_width_m);
  r.get("rsu_spacing_m", cfg.road.rsu_spacing_m);

  r.get("cam_payload_bytes", cfg.cam_payload_bytes);
  r.get("cbr_monitor_ms", cbr_monitor_ms);
  r.get("metrics_bin_ms", metrics_bin_ms);
  r.get("dist_bin_m", cfg.dist_bin_m);
  r.get("rsu_cbr_monitors", cfg.rsu_cbr_monitors);
  r.get("controller_trace", cfg.controller_trace);

  r.get("tx_power_dbm", cfg.radio.tx_power_dbm);
  r.get("antenna_gain_dbi", cfg.radio.antenna_gain_dbi);
  r.get("ed_threshold_dbm", cfg.radio.ed_threshold_dbm);
  r.get("pathloss_exponent", cfg.radio.pathloss_exponent);
  r.get("ref_loss_db_at_1m", cfg.radio.ref_loss_db_at_1m);
  r.get("noise_floor_dbm", cfg.radio.noise_floor_dbm);
  r.get("sinr_threshold_db", cfg.radio.sinr_threshold_db);
  r.get("data_rate_bps", cfg.radio.data_rate_bps);
  r.get("preamble_us", cfg.radio.preamble_us);
  r.get("symbol_us", cfg.radio.symbol_us);
  r.get("bits_per_symbol", cfg.radio.bits_per_symbol);
  r.get("frame_overhead_bytes", cfg.radio.frame_overhead_bytes);
  r.get("offset_applies_to_decode", cfg.radio.offset_applies_to_decode);

  r.get("slot_us", cfg.mac.slot_us);
  r.get("sifs_us", cfg.mac.sifs_us);
  r.get("aifsn", cfg.mac.aifsn);
  r.get("cw", cfg.mac.cw);

  r.reject_unknown();

  try {
    cfg.density = density_from_string(density);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("density", e.what());
  }
  try {
    cfg.variant = DccVariant::from_name(variant);
  } catch (const std::invalid_argument& e) {
    throw ConfigError("variant", e.what());
  }
  cfg.retrigger = retrigger_from_string(retrigger);
  cfg.duration_us = s_to_us(sim_duration_s);
  cfg.warmup_us = s_to_us(warmup_s);
  cfg.cbr_window_us = ms_to_us(cbr_monitor_ms);
  cfg.metrics_bin_us = ms_to_us(metrics_bin_ms);

  validate(cfg);
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw std::runtime_error("cannot open config file: " + file.string());
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::runtime_error("cannot parse " + file.string() + ": " + e.what());
  }
  return run_config_from_json(j);
}

void validate(const RunConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) throw ConfigError("alpha", "must lie in [0, 1]");
  if (cfg.warmup_us < 0) throw ConfigError("warmup_s", "must be non-negative");
  if (cfg.duration_us <= cfg.warmup_us)
    throw ConfigError("sim_duration_s", "must exceed warmup_s");
  if (cfg.road.length_m <= 0) throw ConfigError("road_length_m", "must be positive");
  if (cfg.road.lanes_per_direction <= 0)
    throw ConfigError("lanes_per_direction", "must be positive");
  if (cfg.road.directions <= 0) throw ConfigError("directions", "must be positive");
  if (cfg.road.lane_width_m <= 0) throw ConfigError("lane_width_m", "must be positive");
  if (cfg.road.rsu_spacing_m <= 0) throw ConfigError("rsu_spacing_m", "must be positive");
  if (cfg.cam_payload_bytes < 0) throw ConfigError("cam_payload_bytes", "must be non-negative");
  if (cfg.cbr_window_us <= 0) throw ConfigError("cbr_monitor_ms", "must be positive");
  if (cfg.metrics_bin_us <= 0) throw ConfigError("metrics_bin_ms", "must be positive");
  if (cfg.dist_bin_m <= 0) throw ConfigError("dist_bin_m", "must be positive");
  if (cfg.radio.ed_threshold_dbm >= cfg.radio.tx_power_dbm)
    throw ConfigError("ed_threshold_dbm", "must be below tx_power_dbm");
  if (cfg.radio.pathloss_exponent <= 0) throw ConfigError("pathloss_exponent", "must be positive");
  if (cfg.radio.preamble_us <= 0) throw ConfigError("preamble_us", "must be positive");
  if (cfg.radio.symbol_us <= 0) throw ConfigError("symbol_us", "must be positive");
  if (cfg.radio.bits_per_symbol <= 0) throw ConfigError("bits_per_symbol", "must be positive");
  if (cfg.radio.frame_overhead_bytes < 0)
    throw ConfigError("frame_overhead_bytes", "must be non-negative");
  if (cfg.mac.slot_us <= 0) throw ConfigError("slot_us", "must be positive");
  if (cfg.mac.sifs_us <= 0) throw ConfigError("sifs_us", "must be positive");
  if (cfg.mac.aifsn < 0) throw ConfigError("aifsn", "must be non-negative");
  if (cfg.mac.cw < 0) throw ConfigError("cw", "must be non-negative");
}

nlohmann::json resolved_config_json(const RunConfig& cfg) {
  nlohmann::json j;
  j["density"] = to_string(cfg.density);
  j["variant"] = cfg.variant.name();
  j["alpha"] = cfg.alpha;
  j["seed"] = cfg.seed;
  j["sim_duration_s"] = static_cast<double>(cfg.duration_us) * 1e-6;
  j["warmup_s"] = static_cast<double>(cfg.warmup_us) * 1e-6;
  j["heterogeneity"] = cfg.heterogeneity;
  j["retrigger"] = to_string(cfg.retrigger);
  j["road_length_m"] = cfg.road.length_m;
  j["lanes_per_direction"] = cfg.road.lanes_per_direction;
  j["directions"] = cfg.road.directions;
  j["lane_width_m"] = cfg.road.lane_width_m;
  j["rsu_spacing_m"] = cfg.road.rsu_spacing_m;
  j["cam_payload_bytes"] = cfg.cam_payload_bytes;
  j["cbr_monitor_ms"] = cfg.cbr_window_us / 1000;
  j["metrics_bin_ms"] = cfg.metrics_bin_us / 1000;
  j["dist_bin_m"] = cfg.dist_bin_m;
  j["rsu_cbr_monitors"] = cfg.rsu_cbr_monitors;
  j["controller_trace"] = cfg.controller_trace;
  j["tx_power_dbm"] = cfg.radio.tx_power_dbm;
  j["antenna_gain_dbi"] = cfg.radio.antenna_gain_dbi;
  j["ed_threshold_dbm"] = cfg.radio.ed_threshold_dbm;
  j["pathloss_exponent"] = cfg.radio.pathloss_exponent;
  j["ref_loss_db_at_1m"] = cfg.radio.ref_loss_db_at_1m;
  j["noise_floor_dbm"] = cfg.radio.noise_floor_dbm;
  j["sinr_threshold_db"] = cfg.radio.sinr_threshold_db;
  j["data_rate_bps"] = cfg.radio.data_rate_bps;
  j["preamble_us"] = cfg.radio.preamble_us;
  j["symbol_us"] = cfg.radio.symbol_us;
  j["bits_per_symbol"] = cfg.radio.bits_per_symbol;
  j["frame_overhead_bytes"] = cfg.radio.frame_overhead_bytes;
  j["offset_applies_to_decode"] = cfg.radio.offset_applies_to_decode;
  j["slot_us"] = cfg.mac.slot_us;
  j["sifs_us"] = cfg.mac.sifs_us;
  j["aifsn"] = cfg.mac.aifsn;
  j["cw"] = cfg.mac.cw;
  return j;
}

}  // namespace camsim
