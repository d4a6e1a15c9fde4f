#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace dppln::io {

/// Fixed scientific format with 9 significant digits. All CSV payloads go
/// through this so reruns are byte-identical (shortest-round-trip
/// formatting is deliberately not used).
std::string fixed9(double v);

std::uint64_t fnv1a64(std::string_view data);
std::string digest_hex(std::string_view data);

void write_file(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

/// Row-oriented CSV assembly with a mandatory header (RFC-4180-style,
/// LF line endings, no quoting needed for numeric payloads).
class CsvBuilder {
public:
  explicit CsvBuilder(std::vector<std::string> header);
  void begin_row();
  void add(double v);
  void add(const std::string& v);
  void end_row();
  const std::string& str() const { return text_; }

private:
  std::string text_;
  bool row_open_ = false;
  bool first_cell_ = true;
  std::size_t columns_ = 0;
  std::size_t cells_in_row_ = 0;
};

struct SvgSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

/// Minimal polyline plot: axes, ticks, one polyline per series.
std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<SvgSeries>& series);

/// Minimal heatmap: one rect per cell, grey for invalid cells.
std::string svg_heatmap(const std::string& title, const std::vector<double>& axis1,
                        const std::vector<double>& axis2, const std::vector<double>& values,
                        const std::vector<char>& valid);

struct Artifact {
  std::string name;
  std::string path;
  std::string format;
  std::string digest;
};

struct OutputManifest {
  std::vector<Artifact> artifacts;
  std::string config_digest;
  std::string version;
  std::string timestamp;

  std::string to_json() const;
};

} // namespace dppln::io
