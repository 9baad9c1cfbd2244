#ifndef CAMSIM_PLOT_HPP
#define CAMSIM_PLOT_HPP

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "camsim/engine.hpp"

namespace camsim {

struct PlotSeries {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct PlotPanel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<PlotSeries> series;
};

// Self-contained SVG line charts; no plotting runtime involved.
void write_svg_chart(const std::filesystem::path& path, const std::vector<PlotPanel>& panels);

// Renders one figure family ("pdr", "pir", "bins", "trace", "alpha") from
// the CSVs of a run directory (or, for comparisons and the alpha family, a
// sweep directory with index.csv). Returns the written file.
std::filesystem::path plot_family(const std::filesystem::path& dir, const std::string& family,
                                  const std::filesystem::path& out_svg,
                                  NodeId trace_node = kNoNode);

}  // namespace camsim

#endif
