#include "camsim/plot.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "camsim/io.hpp"

namespace camsim {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

std::string num_label(double v) {
  if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-3)) {
    std::ostringstream os;
    os.precision(3);
    os << v;
    return os.str();
  }
  std::string s = format_fixed(v, 3);
  while (s.find('.') != std::string::npos && (s.back() == '0' || s.back() == '.')) {
    const bool dot = s.back() == '.';
    s.pop_back();
    if (dot) break;
  }
  return s;
}

// Tick spacing of the form {1,2,5} * 10^k giving 4-8 ticks.
std::vector<double> nice_ticks(double lo, double hi) {
  if (!(hi > lo)) hi = lo + 1.0;
  const double span = hi - lo;
  double step = std::pow(10.0, std::floor(std::log10(span / 5.0)));
  for (const double m : {1.0, 2.0, 5.0, 10.0}) {
    if (span / (step * m) <= 7.0) {
      step *= m;
      break;
    }
  }
  std::vector<double> ticks;
  double t = std::ceil(lo / step) * step;
  for (; t <= hi + step * 1e-9; t += step) ticks.push_back(t);
  return ticks;
}

struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int col(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw std::runtime_error("missing CSV column: " + name);
  }
};

Csv read_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("missing CSV: " + path.string());
  Csv csv;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::size_t pos = 0;
    for (;;) {
      const std::size_t comma = line.find(',', pos);
      fields.push_back(line.substr(pos, comma - pos));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    if (first) {
      csv.header = std::move(fields);
      first = false;
    } else {
      csv.rows.push_back(std::move(fields));
    }
  }
  return csv;
}

double to_double(const std::string& s) { return s.empty() ? std::nan("") : std::stod(s); }

struct RunRef {
  std::string label;
  std::filesystem::path dir;
};

// A run directory carries run_meta.json; a sweep directory carries index.csv
// pointing at its runs.
std::vector<RunRef> resolve_runs(const std::filesystem::path& dir) {
  if (std::filesystem::exists(dir / "run_meta.json")) {
    return {RunRef{"run", dir}};
  }
  if (std::filesystem::exists(dir / "index.csv")) {
    const Csv index = read_csv(dir / "index.csv");
    const int dcol = index.col("dir");
    const int scol = index.col("status");
    std::vector<RunRef> runs;
    for (const auto& row : index.rows) {
      if (row[scol] != "ok") continue;
      runs.push_back(RunRef{row[dcol], dir / row[dcol]});
    }
    if (runs.empty()) throw std::runtime_error("no successful runs in " + dir.string());
    return runs;
  }
  throw std::runtime_error("neither run_meta.json nor index.csv found in " + dir.string());
}

PlotSeries csv_series(const std::filesystem::path& file, const std::string& xcol,
                      const std::string& ycol, const std::string& label) {
  const Csv csv = read_csv(file);
  const int xi = csv.col(xcol);
  const int yi = csv.col(ycol);
  PlotSeries s{label, {}};
  for (const auto& row : csv.rows) s.points.emplace_back(to_double(row[xi]), to_double(row[yi]));
  return s;
}

PlotPanel distance_panel(const std::vector<RunRef>& runs, const std::string& file,
                         const std::string& ycol, const std::string& title,
                         const std::string& ylabel) {
  PlotPanel panel{title, "distance [m]", ylabel, {}};
  for (const RunRef& run : runs)
    panel.series.push_back(csv_series(run.dir / file, "bin_center_m", ycol, run.label));
  return panel;
}

std::vector<PlotPanel> bins_panels(const std::vector<RunRef>& runs) {
  PlotPanel tx{"CAM transmissions per 20 ms bin", "time [s]", "transmissions", {}};
  PlotPanel cbr{"mean CBR per 20 ms bin", "time [s]", "CBR", {}};
  for (const RunRef& run : runs) {
    tx.series.push_back(csv_series(run.dir / "bins_20ms.csv", "bin_start_s", "tx_count", run.label));
    cbr.series.push_back(
        csv_series(run.dir / "bins_20ms.csv", "bin_start_s", "mean_cbr", run.label));
  }
  return {tx, cbr};
}

std::vector<PlotPanel> trace_panels(const std::filesystem::path& run_dir, NodeId node) {
  const Csv csv = read_csv(run_dir / "controller_trace.csv");
  const int ncol = csv.col("node");
  const int tcol = csv.col("t_s");
  const int cbrcol = csv.col("cbr");
  const int setcol = csv.col("setting_ms");
  const int gapcol = csv.col("realized_gap_ms");

  if (node == kNoNode) {
    if (csv.rows.empty()) throw std::runtime_error("controller trace is empty");
    node = static_cast<NodeId>(std::stol(csv.rows.front()[ncol]));
  }

  PlotSeries setting{"setting interval [ms]", {}};
  PlotSeries realized{"realized gap [ms]", {}};
  PlotSeries cbr{"CBR", {}};
  for (const auto& row : csv.rows) {
    if (std::stol(row[ncol]) != node) continue;
    const double t = to_double(row[tcol]);
    if (!row[gapcol].empty()) {
      realized.points.emplace_back(t, to_double(row[gapcol]));
      setting.points.emplace_back(t, to_double(row[setcol]));
    } else if (!row[cbrcol].empty()) {
      cbr.points.emplace_back(t, to_double(row[cbrcol]));
    }
  }
  PlotPanel intervals{"CAM interval at node " + std::to_string(node), "time [s]", "interval [ms]",
                      {setting, realized}};
  PlotPanel load{"measured CBR at node " + std::to_string(node), "time [s]", "CBR", {cbr}};
  return {intervals, load};
}

PlotPanel alpha_panel(const std::filesystem::path& sweep_dir) {
  const Csv index = read_csv(sweep_dir / "index.csv");
  const int dcol = index.col("dir");
  const int vcol = index.col("variant");
  const int acol = index.col("alpha");
  const int scol = index.col("status");

  // (variant, bin_center) -> alpha -> mean PIR
  std::map<std::pair<std::string, int>, std::map<double, double>> curves;
  const std::vector<int> wanted_bins = {40, 120, 200, 280, 400};
  for (const auto& row : index.rows) {
    if (row[scol] != "ok") continue;
    const double alpha = to_double(row[acol]);
    const Csv pir = read_csv(sweep_dir / row[dcol] / "pir_vs_distance.csv");
    const int bcol = pir.col("bin_center_m");
    const int mcol = pir.col("mean_pir_s");
    for (const auto& prow : pir.rows) {
      const int bin = static_cast<int>(std::stol(prow[bcol]));
      if (std::find(wanted_bins.begin(), wanted_bins.end(), bin) == wanted_bins.end()) continue;
      curves[{row[vcol], bin}][alpha] = to_double(prow[mcol]);
    }
  }
  if (curves.empty()) throw std::runtime_error("alpha family: no PIR data in sweep");

  PlotPanel panel{"mean PIR vs weight factor", "alpha", "mean PIR [s]", {}};
  for (const auto& [key, by_alpha] : curves) {
    PlotSeries s{key.first + " d=" + std::to_string(key.second) + "m", {}};
    for (const auto& [alpha, pir] : by_alpha) s.points.emplace_back(alpha, pir);
    panel.series.push_back(std::move(s));
  }
  return panel;
}

}  // namespace

void write_svg_chart(const std::filesystem::path& path, const std::vector<PlotPanel>& panels) {
  if (panels.empty()) throw std::invalid_argument("write_svg_chart: no panels");

  constexpr double width = 780.0;
  constexpr double panel_h = 320.0;
  constexpr double ml = 72.0, mr = 24.0, mt = 44.0, mb = 54.0;
  const double height = panel_h * panels.size();

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t p = 0; p < panels.size(); ++p) {
    const PlotPanel& panel = panels[p];
    const double top = p * panel_h + mt;
    const double bottom = (p + 1) * panel_h - mb;
    const double left = ml;
    const double right = width - mr;

    double xmin = 0.0, xmax = 1.0, ymin = 0.0, ymax = 1.0;
    bool any = false;
    for (const PlotSeries& s : panel.series) {
      for (const auto& [x, y] : s.points) {
        if (std::isnan(x) || std::isnan(y)) continue;
        if (!any) {
          xmin = xmax = x;
          ymin = ymax = y;
          any = true;
        } else {
          xmin = std::min(xmin, x);
          xmax = std::max(xmax, x);
          ymin = std::min(ymin, y);
          ymax = std::max(ymax, y);
        }
      }
    }
    if (ymin > 0.0 && ymin / (ymax - ymin + 1e-12) < 2.0) ymin = 0.0;  // anchor near-zero ranges
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;

    const auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
    const auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << top - 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">" << panel.title
        << "</text>\n";

    for (const double t : nice_ticks(xmin, xmax)) {
      const double x = sx(t);
      out << "<line x1=\"" << x << "\" y1=\"" << top << "\" x2=\"" << x << "\" y2=\"" << bottom
          << "\" stroke=\"#dddddd\"/>\n"
          << "<text x=\"" << x << "\" y=\"" << bottom + 18
          << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
          << num_label(t) << "</text>\n";
    }
    for (const double t : nice_ticks(ymin, ymax)) {
      const double y = sy(t);
      out << "<line x1=\"" << left << "\" y1=\"" << y << "\" x2=\"" << right << "\" y2=\"" << y
          << "\" stroke=\"#dddddd\"/>\n"
          << "<text x=\"" << left - 6 << "\" y=\"" << y + 4
          << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num_label(t)
          << "</text>\n";
    }
    out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"black\"/>\n";
    out << "<text x=\"" << (left + right) / 2 << "\" y=\"" << bottom + 38
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << panel.xlabel
        << "</text>\n";
    out << "<text x=\"" << left - 52 << "\" y=\"" << (top + bottom) / 2
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 "
        << left - 52 << ' ' << (top + bottom) / 2 << ")\">" << panel.ylabel << "</text>\n";

    for (std::size_t i = 0; i < panel.series.size(); ++i) {
      const PlotSeries& s = panel.series[i];
      const char* color = kPalette[i % (sizeof(kPalette) / sizeof(kPalette[0]))];
      out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
      for (const auto& [x, y] : s.points) {
        if (std::isnan(x) || std::isnan(y)) continue;
        out << format_fixed(sx(x), 2) << ',' << format_fixed(sy(y), 2) << ' ';
      }
      out << "\"/>\n";
      if (s.points.size() <= 64) {
        for (const auto& [x, y] : s.points) {
          if (std::isnan(x) || std::isnan(y)) continue;
          out << "<circle cx=\"" << format_fixed(sx(x), 2) << "\" cy=\"" << format_fixed(sy(y), 2)
              << "\" r=\"2.4\" fill=\"" << color << "\"/>\n";
        }
      }
      const double ly = top + 16 + 15 * static_cast<double>(i);
      out << "<line x1=\"" << right - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << right - 126
          << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n"
          << "<text x=\"" << right - 120 << "\" y=\"" << ly
          << "\" font-family=\"sans-serif\" font-size=\"11\">" << s.label << "</text>\n";
    }
  }
  out << "</svg>\n";
}

std::filesystem::path plot_family(const std::filesystem::path& dir, const std::string& family,
                                  const std::filesystem::path& out_svg, NodeId trace_node) {
  std::vector<PlotPanel> panels;
  if (family == "pdr") {
    panels = {distance_panel(resolve_runs(dir), "pdr_vs_distance.csv", "pdr",
                             "packet delivery ratio vs distance", "PDR")};
  } else if (family == "pir") {
    panels = {distance_panel(resolve_runs(dir), "pir_vs_distance.csv", "mean_pir_s",
                             "packet inter-reception time vs distance", "mean PIR [s]")};
  } else if (family == "bins") {
    panels = bins_panels(resolve_runs(dir));
  } else if (family == "trace") {
    if (!std::filesystem::exists(dir / "run_meta.json"))
      throw std::runtime_error("trace family needs a single run directory");
    panels = trace_panels(dir, trace_node);
  } else if (family == "alpha") {
    if (!std::filesystem::exists(dir / "index.csv"))
      throw std::runtime_error("alpha family needs a sweep directory");
    panels = {alpha_panel(dir)};
  } else {
    throw std::invalid_argument("unknown figure family: " + family +
                                " (expected pdr|pir|bins|trace|alpha)");
  }
  write_svg_chart(out_svg, panels);
  return out_svg;
}

}  // namespace camsim
