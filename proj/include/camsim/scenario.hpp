#ifndef CAMSIM_SCENARIO_HPP
#define CAMSIM_SCENARIO_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "camsim/engine.hpp"

namespace camsim {

struct RoadConfig {
  double length_m = 1000.0;
  int lanes_per_direction = 3;
  int directions = 2;
  double lane_width_m = 3.0;
  double rsu_spacing_m = 100.0;
};

enum class Density : std::uint8_t { Sparse, Medium, Dense, Extreme };

double inter_vehicle_m(Density d);  // 100 / 45 / 20 / 10
const char* to_string(Density d);
Density density_from_string(const std::string& name);

enum class NodeRole : std::uint8_t { Vehicle, Rsu };

struct NodeSpec {
  NodeId id = kNoNode;
  NodeRole role = NodeRole::Vehicle;
  double x_m = 0.0;
  double y_m = 0.0;
  double sensitivity_offset_db = 0.0;

  bool operator==(const NodeSpec&) const = default;
};

// Static homogeneous highway: vehicles on a regular grid per lane, RSUs on
// the median strip. Immutable after build.
struct Scenario {
  RoadConfig road;
  Density density = Density::Sparse;
  std::uint64_t seed = 0;
  std::vector<NodeSpec> nodes;  // vehicles first, then RSUs; ids == index

  int vehicle_count() const;
  int rsu_count() const;
};

// Vehicles at x = k * inter_vehicle_m (x < length) on every lane; lane
// centers at (i + 0.5) * lane_width stacked across both directions; RSUs at
// x = 0, spacing, ..., length (inclusive) on the median line. Sensitivity
// offsets are i.i.d. uniform on [-6, +6] dB when heterogeneity is on, else 0.
Scenario build_highway(const RoadConfig& road, Density density, bool heterogeneity,
                       std::uint64_t seed);

double pair_distance(const NodeSpec& a, const NodeSpec& b);

}  // namespace camsim

#endif
