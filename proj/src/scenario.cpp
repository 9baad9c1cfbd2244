#include "camsim/scenario.hpp"

#include <cmath>
#include <stdexcept>

#include "camsim/rng.hpp"

namespace camsim {

double inter_vehicle_m(Density d) {
  switch (d) {
    case Density::Sparse: return 100.0;
    case Density::Medium: return 45.0;
    case Density::Dense: return 20.0;
    case Density::Extreme: return 10.0;
  }
  throw std::logic_error("unreachable");
}

const char* to_string(Density d) {
  switch (d) {
    case Density::Sparse: return "sparse";
    case Density::Medium: return "medium";
    case Density::Dense: return "dense";
    case Density::Extreme: return "extreme";
  }
  throw std::logic_error("unreachable");
}

Density density_from_string(const std::string& name) {
  if (name == "sparse") return Density::Sparse;
  if (name == "medium") return Density::Medium;
  if (name == "dense") return Density::Dense;
  if (name == "extreme") return Density::Extreme;
  throw std::invalid_argument("unknown density class: " + name);
}

int Scenario::vehicle_count() const {
  int n = 0;
  for (const auto& node : nodes)
    if (node.role == NodeRole::Vehicle) ++n;
  return n;
}

int Scenario::rsu_count() const { return static_cast<int>(nodes.size()) - vehicle_count(); }

Scenario build_highway(const RoadConfig& road, Density density, bool heterogeneity,
                       std::uint64_t seed) {
  if (road.length_m <= 0 || road.lanes_per_direction <= 0 || road.directions <= 0 ||
      road.lane_width_m <= 0 || road.rsu_spacing_m <= 0) {
    throw std::invalid_argument("build_highway: road parameters must be positive");
  }

  Scenario sc;
  sc.road = road;
  sc.density = density;
  sc.seed = seed;

  const double spacing = inter_vehicle_m(density);
  const int total_lanes = road.lanes_per_direction * road.directions;
  NodeId next_id = 0;

  for (int lane = 0; lane < total_lanes; ++lane) {
    const double y = (lane + 0.5) * road.lane_width_m;
    for (int k = 0;; ++k) {
      const double x = k * spacing;
      if (x >= road.length_m) break;
      sc.nodes.push_back(NodeSpec{next_id++, NodeRole::Vehicle, x, y, 0.0});
    }
  }

  // RSUs sit on the median strip between the two directions, every
  // rsu_spacing_m with both endpoints included. Receive-only observers.
  const double median_y = road.lanes_per_direction * road.lane_width_m;
  for (double x = 0.0; x <= road.length_m + 1e-9; x += road.rsu_spacing_m) {
    sc.nodes.push_back(NodeSpec{next_id++, NodeRole::Rsu, x, median_y, 0.0});
  }

  if (heterogeneity) {
    for (auto& node : sc.nodes) {
      auto gen = rng::make_stream(seed, node.id, rng::Stream::SensitivityOffset);
      node.sensitivity_offset_db = rng::uniform_real(gen, -6.0, 6.0);
    }
  }
  return sc;
}

double pair_distance(const NodeSpec& a, const NodeSpec& b) {
  return std::hypot(a.x_m - b.x_m, a.y_m - b.y_m);
}

}  // namespace camsim
