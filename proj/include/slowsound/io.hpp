#pragma once

// Artifact writers: CSV tables, JSON documents and minimal SVG line plots.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace slowsound::io {

struct Column {
  std::string name;
  std::string unit;  ///< empty for dimensionless or flags
  std::vector<double> values;
};

struct Table {
  std::vector<Column> columns;
  Table& add(std::string name, std::string unit, std::vector<double> values);
  std::size_t rows() const;
};

/// Header "name [unit]"; values with 12 significant digits; NaN as "nan".
/// Throws ShapeError on ragged columns.
void write_csv(const std::filesystem::path& path, const Table& table);
std::string format_csv(const Table& table);

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
};

struct Plot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<Series> series;
  std::vector<double> vertical_lines;  ///< dashed markers at these x
};

/// Line chart with axes, ticks and a legend. Non-finite points break lines.
std::string render_svg(const Plot& plot);
void write_svg(const std::filesystem::path& path, const Plot& plot);

void write_json(const std::filesystem::path& path, const nlohmann::json& doc);

/// JSON value for a double, with non-finite numbers mapped to null.
nlohmann::json number(double v);

struct Formats {
  bool csv = true;
  bool json = true;
  bool svg = false;
};
/// Comma-separated subset of {csv, json, svg}; throws ConfigError otherwise.
Formats parse_formats(std::string_view s);
std::string to_string(const Formats& f);

/// Tracks files written for one run. Unless commit() is called, the
/// destructor deletes them, so a failed run leaves no partial output.
class OutputSet {
 public:
  OutputSet(std::filesystem::path root, Formats formats);
  ~OutputSet();
  OutputSet(const OutputSet&) = delete;
  OutputSet& operator=(const OutputSet&) = delete;

  const Formats& formats() const noexcept { return formats_; }
  const std::filesystem::path& root() const noexcept { return root_; }

  void csv(const std::string& stem, const Table& table);
  void json(const std::string& stem, const nlohmann::json& doc);
  void svg(const std::string& stem, const Plot& plot);
  /// Writes regardless of the format selection (used for the manifest).
  void json_always(const std::string& stem, const nlohmann::json& doc);

  /// File names written so far, in write order.
  std::vector<std::string> files() const;
  void commit() noexcept { committed_ = true; }

 private:
  std::filesystem::path track(const std::string& name);

  std::filesystem::path root_;
  Formats formats_;
  std::vector<std::filesystem::path> written_;
  bool created_root_ = false;
  bool committed_ = false;
};

}  // namespace slowsound::io
