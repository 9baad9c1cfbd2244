#ifndef CAMSIM_CONFIG_HPP
#define CAMSIM_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "camsim/dcc.hpp"
#include "camsim/mac.hpp"
#include "camsim/phy.hpp"
#include "camsim/scenario.hpp"

#include <json.hpp>

namespace camsim {

inline constexpr const char* kVersion = "0.1.0";

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& message)
      : std::runtime_error("config error at '" + field + "': " + message),
        field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

// One simulation run, fully resolved. Every value is echoed into run_meta;
// a run is a pure function of this struct.
struct RunConfig {
  RoadConfig road;
  Density density = Density::Dense;
  bool heterogeneity = false;
  DccVariant variant = DccVariant{};  // off
  double alpha = 1.0;
  RetriggerMode retrigger = RetriggerMode::OnChange;
  std::uint64_t seed = 1;
  std::int64_t duration_us = 10'000'000;
  std::int64_t warmup_us = 2'000'000;
  RadioParams radio = RadioParams::defaults();
  MacParams mac;
  int cam_payload_bytes = 400;
  std::int64_t cbr_window_us = 100'000;
  std::int64_t metrics_bin_us = 20'000;
  double dist_bin_m = 40.0;
  bool rsu_cbr_monitors = true;
  bool controller_trace = true;
};

// Flat key set; unknown keys are rejected so typos cannot silently fall back
// to defaults. Missing keys take the defaults above.
RunConfig run_config_from_json(const nlohmann::json& j);
RunConfig load_run_config(const std::filesystem::path& file);

// Full resolved echo, alphabetical keys; what run_meta.json contains.
nlohmann::json resolved_config_json(const RunConfig& cfg);

void validate(const RunConfig& cfg);

}  // namespace camsim

#endif
