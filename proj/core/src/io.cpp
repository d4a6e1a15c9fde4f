#include "dppln/io.hpp"
#include "dppln/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace dppln::io {

std::string fixed9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.8e", v);
  return buf;
}

std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

std::string digest_hex(std::string_view data) {
  char buf[24];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(data)));
  return buf;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IOError("cannot open for writing: " + path.string());
  os.write(content.data(), std::streamsize(content.size()));
  if (!os) throw IOError("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IOError("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

CsvBuilder::CsvBuilder(std::vector<std::string> header) : columns_(header.size()) {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) text_ += ',';
    text_ += header[i];
  }
  text_ += '\n';
}

void CsvBuilder::begin_row() {
  row_open_ = true;
  first_cell_ = true;
  cells_in_row_ = 0;
}

void CsvBuilder::add(double v) { add(fixed9(v)); }

void CsvBuilder::add(const std::string& v) {
  if (!row_open_) begin_row();
  if (!first_cell_) text_ += ',';
  text_ += v;
  first_cell_ = false;
  ++cells_in_row_;
}

void CsvBuilder::end_row() {
  if (cells_in_row_ != columns_)
    throw Error("CsvBuilder: row width does not match the header");
  text_ += '\n';
  row_open_ = false;
}

namespace {

constexpr int kWidth = 720, kHeight = 480;
constexpr int kMarginL = 70, kMarginR = 20, kMarginT = 40, kMarginB = 50;

const char* kSeriesColors[] = {"#1f6fb2", "#c23b22", "#3a8f3a", "#8455b0", "#b08a00", "#555555"};

std::string svg_open(const std::string& title) {
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
     << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << kWidth / 2 << "\" y=\"22\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"15\">"
     << title << "</text>\n";
  return os.str();
}

struct Range {
  double lo = 0.0, hi = 1.0;
  void include(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

Range make_range(std::initializer_list<const std::vector<double>*> vs) {
  Range r{1e300, -1e300};
  for (const auto* v : vs)
    for (double x : *v) {
      r.lo = std::min(r.lo, x);
      r.hi = std::max(r.hi, x);
    }
  if (!(r.hi > r.lo)) {
    r.lo -= 0.5;
    r.hi += 0.5;
  }
  return r;
}

} // namespace

std::string svg_line_plot(const std::string& title, const std::string& x_label,
                          const std::string& y_label, const std::vector<SvgSeries>& series) {
  Range xr{1e300, -1e300}, yr{1e300, -1e300};
  for (const auto& s : series) {
    for (double v : s.x) xr.include(v);
    for (double v : s.y) yr.include(v);
  }
  if (!(xr.hi > xr.lo)) { xr.lo -= 0.5; xr.hi += 0.5; }
  if (!(yr.hi > yr.lo)) { yr.lo -= 0.5; yr.hi += 0.5; }

  auto sx = [&](double v) {
    return kMarginL + (v - xr.lo) / (xr.hi - xr.lo) * (kWidth - kMarginL - kMarginR);
  };
  auto sy = [&](double v) {
    return kHeight - kMarginB - (v - yr.lo) / (yr.hi - yr.lo) * (kHeight - kMarginT - kMarginB);
  };

  std::ostringstream os;
  os << svg_open(title);
  os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
     << (kWidth - kMarginL - kMarginR) << "\" height=\"" << (kHeight - kMarginT - kMarginB)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  // axis labels and min/max ticks
  os << "<text x=\"" << (kMarginL + kWidth - kMarginR) / 2 << "\" y=\"" << kHeight - 12
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">" << x_label
     << "</text>\n";
  os << "<text x=\"16\" y=\"" << (kMarginT + kHeight - kMarginB) / 2
     << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\" transform=\"rotate(-90 16 "
     << (kMarginT + kHeight - kMarginB) / 2 << ")\">" << y_label << "</text>\n";
  auto tick = [&](double v, bool is_x) {
    std::ostringstream t;
    if (is_x)
      t << "<text x=\"" << sx(v) << "\" y=\"" << kHeight - kMarginB + 16
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"10\">" << fixed9(v)
        << "</text>\n";
    else
      t << "<text x=\"" << kMarginL - 4 << "\" y=\"" << sy(v) + 3
        << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"10\">" << fixed9(v)
        << "</text>\n";
    return t.str();
  };
  os << tick(xr.lo, true) << tick(xr.hi, true) << tick(yr.lo, false) << tick(yr.hi, false);

  int color = 0;
  for (const auto& s : series) {
    os << "<polyline fill=\"none\" stroke=\"" << kSeriesColors[color % 6]
       << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < s.x.size(); ++i)
      os << sx(s.x[i]) << ',' << sy(s.y[i]) << ' ';
    os << "\"/>\n";
    if (!s.label.empty())
      os << "<text x=\"" << kWidth - kMarginR - 8 << "\" y=\"" << kMarginT + 16 + 14 * color
         << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\" fill=\""
         << kSeriesColors[color % 6] << "\">" << s.label << "</text>\n";
    ++color;
  }
  os << "</svg>\n";
  return os.str();
}

std::string svg_heatmap(const std::string& title, const std::vector<double>& axis1,
                        const std::vector<double>& axis2, const std::vector<double>& values,
                        const std::vector<char>& valid) {
  const std::size_t n1 = axis1.size(), n2 = axis2.size();
  double vmax = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i)
    if (valid[i]) vmax = std::max(vmax, std::abs(values[i]));
  if (vmax == 0.0) vmax = 1.0;

  const double cw = double(kWidth - kMarginL - kMarginR) / double(n1);
  const double ch = double(kHeight - kMarginT - kMarginB) / double(n2);

  std::ostringstream os;
  os << svg_open(title);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) {
      const std::size_t idx = i * n2 + j;
      std::string fill = "#bbbbbb";
      if (valid[idx]) {
        // blue for negative, red for positive, white at zero
        const double t = std::clamp(values[idx] / vmax, -1.0, 1.0);
        const int r = int(255 * (t > 0 ? 1.0 : 1.0 + t));
        const int g = int(255 * (1.0 - std::abs(t)));
        const int b = int(255 * (t < 0 ? 1.0 : 1.0 - t));
        char buf[10];
        std::snprintf(buf, sizeof buf, "#%02x%02x%02x", r, g, b);
        fill = buf;
      }
      os << "<rect x=\"" << kMarginL + cw * double(i) << "\" y=\""
         << kHeight - kMarginB - ch * double(j + 1) << "\" width=\"" << cw + 0.5
         << "\" height=\"" << ch + 0.5 << "\" fill=\"" << fill << "\"/>\n";
    }
  }
  os << "<rect x=\"" << kMarginL << "\" y=\"" << kMarginT << "\" width=\""
     << (kWidth - kMarginL - kMarginR) << "\" height=\"" << (kHeight - kMarginT - kMarginB)
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string OutputManifest::to_json() const {
  nlohmann::json j;
  j["config_digest"] = config_digest;
  j["version"] = version;
  j["timestamp"] = timestamp;
  j["artifacts"] = nlohmann::json::array();
  for (const auto& a : artifacts) {
    j["artifacts"].push_back({{"name", a.name},
                              {"path", a.path},
                              {"format", a.format},
                              {"digest", a.digest}});
  }
  return j.dump(2) + "\n";
}

} // namespace dppln::io
