#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <string>

namespace cams::tools {

namespace {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;
};

struct Panel {
  std::string file;
  std::string title;
  std::vector<Series> series;
  bool steps = false;  // draw as a staircase (state held between events)
};

const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

void write_svg(const Panel& panel, const std::filesystem::path& path) {
  const double width = 800, height = 320, left = 60, right = 140, top = 30, bottom = 40;
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : panel.series) {
    for (auto [x, y] : s.points) {
      x0 = std::min(x0, x);
      x1 = std::max(x1, x);
      y0 = std::min(y0, y);
      y1 = std::max(y1, y);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 - x0 < 1e-12) x1 = x0 + 1;
  if (y1 - y0 < 1e-12) y0 -= 0.5, y1 += 0.5;
  const double pw = width - left - right, ph = height - top - bottom;
  auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * pw; };
  auto sy = [&](double y) { return top + (1.0 - (y - y0) / (y1 - y0)) * ph; };

  std::ofstream out(path);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << left << "\" y=\"18\" font-size=\"13\">" << panel.title << "</text>\n";
  out << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double fx = x0 + (x1 - x0) * i / 4.0, fy = y0 + (y1 - y0) * i / 4.0;
    out << "<text x=\"" << sx(fx) << "\" y=\"" << height - bottom + 15 << "\" text-anchor=\"middle\">" << fmt(fx)
        << "</text>\n";
    out << "<text x=\"" << left - 5 << "\" y=\"" << sy(fy) + 4 << "\" text-anchor=\"end\">" << fmt(fy)
        << "</text>\n";
  }
  out << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 5 << "\" text-anchor=\"middle\">time</text>\n";
  for (std::size_t i = 0; i < panel.series.size(); ++i) {
    const auto& s = panel.series[i];
    const char* color = kColors[i % std::size(kColors)];
    out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    std::optional<double> last_y;
    for (auto [x, y] : s.points) {
      if (panel.steps && last_y) out << sx(x) << ',' << sy(*last_y) << ' ';
      out << sx(x) << ',' << sy(y) << ' ';
      last_y = y;
    }
    out << "\"/>\n";
    const double ly = top + 14.0 * (i + 1);
    out << "<line x1=\"" << width - right + 10 << "\" y1=\"" << ly - 4 << "\" x2=\"" << width - right + 30
        << "\" y2=\"" << ly - 4 << "\" stroke=\"" << color << "\"/>\n";
    out << "<text x=\"" << width - right + 35 << "\" y=\"" << ly << "\">" << s.label << "</text>\n";
  }
  out << "</svg>\n";
}

Series column(const io::TraceFile& trace, const std::string& label, sim::EventKind kind,
              const std::function<std::optional<double>(const sim::TraceRecord&)>& pick) {
  Series s{label, {}};
  for (const auto& r : trace.records) {
    if (r.event != kind) continue;
    if (auto v = pick(r)) s.points.emplace_back(r.time, *v);
  }
  return s;
}

std::vector<Series> per_region(const io::TraceFile& trace, const std::string& prefix, sim::EventKind kind,
                               std::vector<double> sim::TraceRecord::*field) {
  std::vector<Series> out;
  for (std::size_t k = 0; k < trace.regions; ++k) {
    out.push_back(column(trace, prefix + std::to_string(k), kind,
                         [&](const sim::TraceRecord& r) { return std::optional<double>((r.*field)[k]); }));
  }
  return out;
}

}  // namespace

std::vector<std::filesystem::path> write_report(const io::TraceFile& trace, const std::filesystem::path& out_dir) {
  using sim::EventKind;
  std::filesystem::create_directories(out_dir);
  std::vector<Panel> panels;
  panels.push_back({"allocation.svg", "Time allocated per task",
                    {column(trace, "allocation", EventKind::allocate, [](const auto& r) { return r.allocation; })}});
  panels.push_back({"queue.svg",
                    "Queue length",
                    {column(trace, "queue", EventKind::enqueue,
                            [](const auto& r) { return std::optional<double>(static_cast<double>(r.queue_length)); })},
                    true});
  panels.push_back({"cusum.svg", "CUSUM statistics", per_region(trace, "region ", EventKind::decide,
                                                                &sim::TraceRecord::statistics), true});
  panels.push_back({"routing.svg", "Routing policy", per_region(trace, "region ", EventKind::route,
                                                               &sim::TraceRecord::routing), true});
  panels.push_back({"retained_belief.svg", "Retained belief", per_region(trace, "region ", EventKind::allocate,
                                                                        &sim::TraceRecord::retained)});
  const bool exogenous = std::any_of(trace.records.begin(), trace.records.end(),
                                     [](const auto& r) { return r.utilization.has_value(); });
  if (exogenous) {
    panels.push_back({"utilization.svg", "Operator utilization",
                      {column(trace, "utilization", EventKind::allocate, [](const auto& r) { return r.utilization; })}});
    panels.push_back({"motor_time.svg", "Motor time",
                      {column(trace, "motor time", EventKind::allocate, [](const auto& r) { return r.motor_time; })}});
    panels.push_back({"rest.svg", "Rest periods",
                      {column(trace, "rest", EventKind::rest, [](const auto& r) { return r.allocation; })}});
  }
  std::vector<std::filesystem::path> written;
  for (const auto& p : panels) {
    written.push_back(out_dir / p.file);
    write_svg(p, written.back());
  }
  return written;
}

}  // namespace cams::tools
