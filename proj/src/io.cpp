#include "slowsound/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "slowsound/errors.hpp"

namespace slowsound::io {

namespace fs = std::filesystem;

namespace {

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.12g", v);
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw ConfigError("cannot open '" + path.string() + "' for writing");
  f << text;
  if (!f) throw ConfigError("write failed for '" + path.string() + "'");
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void add(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-300 + 1e-12 * std::abs(hi)) {
      const double pad = lo == 0.0 ? 1.0 : 0.05 * std::abs(lo);
      lo -= pad;
      hi += pad;
    }
  }
};

// Tick step from {1, 2, 5} x 10^n giving about five intervals.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0}) {
    if (m * mag >= raw) return m * mag;
  }
  return 10.0 * mag;
}

constexpr const char* kPalette[] = {"#1f4e9c", "#c0392b", "#2e8b57", "#8e44ad", "#d35400",
                                    "#555555"};

}  // namespace

Table& Table::add(std::string name, std::string unit, std::vector<double> values) {
  columns.push_back({std::move(name), std::move(unit), std::move(values)});
  return *this;
}

std::size_t Table::rows() const { return columns.empty() ? 0 : columns.front().values.size(); }

std::string format_csv(const Table& table) {
  const std::size_t n = table.rows();
  for (const auto& c : table.columns) {
    if (c.values.size() != n) throw ShapeError("csv: column '" + c.name + "' has a different length");
  }
  std::string out;
  for (std::size_t j = 0; j < table.columns.size(); ++j) {
    if (j) out += ',';
    out += table.columns[j].name;
    if (!table.columns[j].unit.empty()) out += " [" + table.columns[j].unit + "]";
  }
  out += '\n';
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < table.columns.size(); ++j) {
      if (j) out += ',';
      out += csv_number(table.columns[j].values[i]);
    }
    out += '\n';
  }
  return out;
}

void write_csv(const fs::path& path, const Table& table) { write_text(path, format_csv(table)); }

std::string render_svg(const Plot& plot) {
  constexpr double width = 720.0;
  constexpr double height = 480.0;
  constexpr double left = 80.0;
  constexpr double right = 20.0;
  constexpr double top = 40.0;
  constexpr double bottom = 60.0;
  const double pw = width - left - right;
  const double ph = height - top - bottom;

  Range xr;
  Range yr;
  for (const auto& s : plot.series) {
    if (s.x.size() != s.y.size()) throw ShapeError("svg: series '" + s.label + "' is ragged");
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
      xr.add(s.x[i]);
      yr.add(s.y[i]);
    }
  }
  for (double v : plot.vertical_lines) xr.add(v);
  xr.settle();
  yr.settle();
  const double ypad = 0.05 * (yr.hi - yr.lo);
  yr.lo -= ypad;
  yr.hi += ypad;

  auto px = [&](double x) { return left + (x - xr.lo) / (xr.hi - xr.lo) * pw; };
  auto py = [&](double y) { return top + (yr.hi - y) / (yr.hi - yr.lo) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << width / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">"
    << xml_escape(plot.title) << "</text>\n";
  o << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << pw << "\" height=\"" << ph
    << "\" fill=\"none\" stroke=\"black\"/>\n";

  const double xs = tick_step(xr.hi - xr.lo);
  for (double t = std::ceil(xr.lo / xs) * xs; t <= xr.hi + 1e-9 * xs; t += xs) {
    const double x = px(t);
    o << "<line x1=\"" << fmt("%.2f", x) << "\" y1=\"" << top + ph << "\" x2=\"" << fmt("%.2f", x)
      << "\" y2=\"" << top + ph + 5 << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << fmt("%.2f", x) << "\" y=\"" << top + ph + 18
      << "\" text-anchor=\"middle\">" << fmt("%.4g", std::abs(t) < 1e-12 * xs ? 0.0 : t)
      << "</text>\n";
  }
  const double ys = tick_step(yr.hi - yr.lo);
  for (double t = std::ceil(yr.lo / ys) * ys; t <= yr.hi + 1e-9 * ys; t += ys) {
    const double y = py(t);
    o << "<line x1=\"" << left - 5 << "\" y1=\"" << fmt("%.2f", y) << "\" x2=\"" << left
      << "\" y2=\"" << fmt("%.2f", y) << "\" stroke=\"black\"/>\n";
    o << "<text x=\"" << left - 8 << "\" y=\"" << fmt("%.2f", y + 4)
      << "\" text-anchor=\"end\">" << fmt("%.4g", std::abs(t) < 1e-12 * ys ? 0.0 : t)
      << "</text>\n";
  }
  o << "<text x=\"" << left + pw / 2 << "\" y=\"" << height - 16 << "\" text-anchor=\"middle\">"
    << xml_escape(plot.x_label) << "</text>\n";
  o << "<text transform=\"translate(18," << top + ph / 2
    << ") rotate(-90)\" text-anchor=\"middle\">" << xml_escape(plot.y_label) << "</text>\n";

  for (double v : plot.vertical_lines) {
    o << "<line x1=\"" << fmt("%.2f", px(v)) << "\" y1=\"" << top << "\" x2=\""
      << fmt("%.2f", px(v)) << "\" y2=\"" << top + ph
      << "\" stroke=\"gray\" stroke-dasharray=\"6,4\"/>\n";
  }

  for (std::size_t k = 0; k < plot.series.size(); ++k) {
    const auto& s = plot.series[k];
    const char* colour = kPalette[k % std::size(kPalette)];
    std::string points;
    auto flush = [&] {
      if (points.empty()) return;
      o << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.6\""
        << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << " points=\"" << points << "\"/>\n";
      points.clear();
    };
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) {
        flush();
        continue;
      }
      points += fmt("%.2f", px(s.x[i])) + "," + fmt("%.2f", py(s.y[i])) + " ";
    }
    flush();
    const double ly = top + 16 + 18 * static_cast<double>(k);
    o << "<line x1=\"" << left + pw - 150 << "\" y1=\"" << ly - 4 << "\" x2=\"" << left + pw - 125
      << "\" y2=\"" << ly - 4 << "\" stroke=\"" << colour << "\" stroke-width=\"2\""
      << (s.dashed ? " stroke-dasharray=\"6,4\"" : "") << "/>\n";
    o << "<text x=\"" << left + pw - 118 << "\" y=\"" << ly << "\">" << xml_escape(s.label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

void write_svg(const fs::path& path, const Plot& plot) { write_text(path, render_svg(plot)); }

void write_json(const fs::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

nlohmann::json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Formats parse_formats(std::string_view s) {
  Formats f{false, false, false};
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t end = std::min(s.find(',', start), s.size());
    const std::string_view item = s.substr(start, end - start);
    if (item == "csv") {
      f.csv = true;
    } else if (item == "json") {
      f.json = true;
    } else if (item == "svg") {
      f.svg = true;
    } else {
      throw ConfigError("unknown output format '" + std::string(item) + "' (csv, json, svg)");
    }
    start = end + 1;
  }
  return f;
}

std::string to_string(const Formats& f) {
  std::string out;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!out.empty()) out += ',';
    out += name;
  };
  add(f.csv, "csv");
  add(f.json, "json");
  add(f.svg, "svg");
  return out;
}

OutputSet::OutputSet(fs::path root, Formats formats)
    : root_(std::move(root)), formats_(formats) {
  std::error_code ec;
  if (!fs::exists(root_, ec)) {
    fs::create_directories(root_, ec);
    if (ec) throw ConfigError("cannot create output directory '" + root_.string() + "'");
    created_root_ = true;
  } else if (!fs::is_directory(root_, ec)) {
    throw ConfigError("output path '" + root_.string() + "' is not a directory");
  }
}

OutputSet::~OutputSet() {
  if (committed_) return;
  std::error_code ec;
  for (const auto& p : written_) fs::remove(p, ec);
  if (created_root_ && fs::is_empty(root_, ec)) fs::remove(root_, ec);
}

fs::path OutputSet::track(const std::string& name) {
  fs::path p = root_ / name;
  written_.push_back(p);
  return p;
}

void OutputSet::csv(const std::string& stem, const Table& table) {
  if (formats_.csv) write_csv(track(stem + ".csv"), table);
}

void OutputSet::json(const std::string& stem, const nlohmann::json& doc) {
  if (formats_.json) write_json(track(stem + ".json"), doc);
}

void OutputSet::svg(const std::string& stem, const Plot& plot) {
  if (formats_.svg) write_svg(track(stem + ".svg"), plot);
}

void OutputSet::json_always(const std::string& stem, const nlohmann::json& doc) {
  write_json(track(stem + ".json"), doc);
}

std::vector<std::string> OutputSet::files() const {
  std::vector<std::string> out;
  for (const auto& p : written_) out.push_back(p.filename().string());
  return out;
}

}  // namespace slowsound::io
