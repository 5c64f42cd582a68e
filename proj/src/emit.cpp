#include "tmsv/emit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace tmsv {

using nlohmann::json;

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::kCsv;
  if (name == "json") return OutputFormat::kJson;
  if (name == "svg") return OutputFormat::kSvg;
  throw std::domain_error("unknown output format: " + name);
}

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

template <class Fn>
void to_file(const std::string& path, Fn&& fn) {
  std::ofstream os(path);
  if (!os) throw std::ios_base::failure("cannot open " + path + " for writing");
  os.exceptions(std::ios::badbit | std::ios::failbit);
  fn(os);
  os.flush();
}

json params_json(const SqueezeParams& p) {
  return json{{"r1", p.r1}, {"r2", p.r2}, {"phi", p.phi},
              {"gamma", p.gamma}, {"rho", p.rho}};
}

// ---------------------------------------------------------------------------
// SVG primitives: a fixed-size canvas with enough for line and height plots
// ---------------------------------------------------------------------------

constexpr double kW = 720, kH = 520, kML = 70, kMR = 30, kMT = 30, kMB = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

void svg_open(std::ostream& os, const std::string& title) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kW
     << "\" height=\"" << kH << "\" viewBox=\"0 0 " << kW << " " << kH
     << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
     << "<text x=\"" << kW / 2 << "\" y=\"18\" text-anchor=\"middle\" "
        "font-family=\"sans-serif\" font-size=\"14\">" << title << "</text>\n";
}

void svg_text(std::ostream& os, double x, double y, const std::string& s,
              const std::string& anchor = "middle", int size = 11,
              const std::string& extra = "") {
  os << "<text x=\"" << num(x) << "\" y=\"" << num(y) << "\" text-anchor=\""
     << anchor << "\" font-family=\"sans-serif\" font-size=\"" << size << "\" "
     << extra << ">" << s << "</text>\n";
}

void svg_axes(std::ostream& os, const std::string& xlabel,
              const std::string& ylabel) {
  os << "<line x1=\"" << kML << "\" y1=\"" << kH - kMB << "\" x2=\""
     << kW - kMR << "\" y2=\"" << kH - kMB
     << "\" stroke=\"black\" stroke-width=\"1\"/>\n"
     << "<line x1=\"" << kML << "\" y1=\"" << kMT << "\" x2=\"" << kML
     << "\" y2=\"" << kH - kMB << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  svg_text(os, (kML + kW - kMR) / 2, kH - 12, xlabel);
  svg_text(os, 16, (kMT + kH - kMB) / 2, ylabel, "middle", 11,
           "transform=\"rotate(-90 16 " + num((kMT + kH - kMB) / 2) + ")\"");
}

// five-stop ramp from near-white to dark blue-violet, t in [0,1]
std::string heat_color(double t) {
  static const double stops[5][3] = {{247, 247, 252}, {189, 201, 225},
                                     {103, 169, 207}, {28, 104, 157},
                                     {59, 18, 87}};
  t = std::clamp(t, 0.0, 1.0) * 4.0;
  const int k = std::min(3, static_cast<int>(t));
  const double f = t - k;
  char buf[24];
  std::snprintf(buf, sizeof buf, "rgb(%d,%d,%d)",
                static_cast<int>(stops[k][0] + f * (stops[k + 1][0] - stops[k][0])),
                static_cast<int>(stops[k][1] + f * (stops[k + 1][1] - stops[k][1])),
                static_cast<int>(stops[k][2] + f * (stops[k + 1][2] - stops[k][2])));
  return buf;
}

// ---------------------------------------------------------------------------
// total / figure1
// ---------------------------------------------------------------------------

void total_csv(std::ostream& os, const std::vector<TotalSeries>& series) {
  const bool multi = series.size() > 1;
  for (const auto& s : series)
    os << "# series " << s.label << ": s1=" << format17(s.s1)
       << " s2=" << format17(s.s2) << " n_max=" << s.table.n_max
       << " tail_bound=" << format17(s.table.tail_bound) << "\n";
  os << (multi ? "series,n,W" : "n,W") << "\n";
  for (const auto& s : series)
    for (int n = 0; n <= s.table.n_max; ++n) {
      if (multi) os << s.label << ",";
      os << n << "," << format17(s.table.values[n]) << "\n";
    }
}

void total_json(std::ostream& os, const std::vector<TotalSeries>& series) {
  json root;
  root["command"] = series.size() > 1 ? "figure1" : "total";
  json arr = json::array();
  for (const auto& s : series) {
    json item;
    item["label"] = s.label;
    item["params"] = {{"s1", s.s1}, {"s2", s.s2}};
    item["bounds"] = {{"n_max", s.table.n_max}};
    item["tail_bound"] = s.table.tail_bound;
    json values = json::array();
    for (int n = 0; n <= s.table.n_max; ++n)
      values.push_back({n, s.table.values[n]});
    item["values"] = std::move(values);
    arr.push_back(std::move(item));
  }
  root["series"] = std::move(arr);
  os << root.dump(1) << "\n";
}

void total_svg(std::ostream& os, const std::vector<TotalSeries>& series) {
  int nmax = 1;
  double wmin = 1.0;
  for (const auto& s : series) {
    nmax = std::max(nmax, s.table.n_max);
    for (double v : s.table.values)
      if (v > 0.0) wmin = std::min(wmin, v);
  }
  const double ylo = std::floor(std::log10(std::max(wmin, 1e-300))) - 0.5;
  const double yhi = 0.0;
  auto px = [&](double n) { return kML + (kW - kML - kMR) * n / nmax; };
  auto py = [&](double lw) {
    return kH - kMB - (kH - kMT - kMB) * (lw - ylo) / (yhi - ylo);
  };
  svg_open(os, "probability of counting n photons in total");
  svg_axes(os, "n", "log10 W_n");
  const int xstep = std::max(2, 2 * ((nmax / 12 + 1) / 2));
  for (int n = 0; n <= nmax; n += xstep) {
    svg_text(os, px(n), kH - kMB + 16, std::to_string(n));
    os << "<line x1=\"" << num(px(n)) << "\" y1=\"" << kH - kMB << "\" x2=\""
       << num(px(n)) << "\" y2=\"" << kH - kMB + 4 << "\" stroke=\"black\"/>\n";
  }
  const int dec = std::max(1, static_cast<int>((yhi - ylo) / 8) + 1);
  for (int e = 0; e >= static_cast<int>(std::ceil(ylo)); e -= dec) {
    svg_text(os, kML - 8, py(e) + 4, "1e" + std::to_string(e), "end");
    os << "<line x1=\"" << kML - 4 << "\" y1=\"" << num(py(e)) << "\" x2=\""
       << kML << "\" y2=\"" << num(py(e)) << "\" stroke=\"black\"/>\n";
  }
  static const char* kDash[3] = {"8,6", "", "2,5"};  // dashed, solid, dotted
  static const char* kColor[3] = {"#1f5fbe", "#b03030", "#2e7d32"};
  for (size_t si = 0; si < series.size(); ++si) {
    const auto& s = series[si];
    std::ostringstream pts;
    for (int n = 0; n <= s.table.n_max; n += 2)
      if (s.table.values[n] > 0.0)
        pts << num(px(n)) << "," << num(py(std::log10(s.table.values[n]))) << " ";
    os << "<polyline fill=\"none\" stroke=\"" << kColor[si % 3]
       << "\" stroke-width=\"1.6\"";
    if (*kDash[si % 3]) os << " stroke-dasharray=\"" << kDash[si % 3] << "\"";
    os << " points=\"" << pts.str() << "\"/>\n";
    svg_text(os, kW - kMR - 10, kMT + 18 + 16 * si, s.label, "end", 11,
             "fill=\"" + std::string(kColor[si % 3]) + "\"");
  }
  os << "</svg>\n";
}

// ---------------------------------------------------------------------------
// joint heat maps
// ---------------------------------------------------------------------------

void heatmap_svg(std::ostream& os, const std::vector<double>& cells, int rows,
                 int cols, int n1_max, int n2_max, const std::string& title) {
  double vmax = 0.0, vmin = 1.0;
  for (double v : cells)
    if (v > 0.0) {
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
  if (vmax == 0.0) vmax = vmin = 1.0;
  const double lmax = std::log10(vmax);
  const double lspan = std::max(1.0, lmax - std::log10(vmin));
  const double pw = (kW - kML - kMR) / cols, ph = (kH - kMT - kMB) / rows;
  svg_open(os, title);
  svg_axes(os, "n2", "n1");
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) {
      const double v = cells[static_cast<size_t>(i) * cols + j];
      if (v <= 0.0) continue;
      const double t = 1.0 - (lmax - std::log10(v)) / lspan;
      os << "<rect x=\"" << num(kML + j * pw) << "\" y=\""
         << num(kH - kMB - (i + 1) * ph) << "\" width=\"" << num(pw + 0.5)
         << "\" height=\"" << num(ph + 0.5) << "\" fill=\"" << heat_color(t)
         << "\"/>\n";
    }
  for (int f = 0; f <= 4; ++f) {
    svg_text(os, kML + (kW - kML - kMR) * f / 4.0, kH - kMB + 16,
             std::to_string(static_cast<long>(std::lround(n2_max * f / 4.0))));
    svg_text(os, kML - 8,
             kH - kMB - (kH - kMT - kMB) * f / 4.0 + 4,
             std::to_string(static_cast<long>(std::lround(n1_max * f / 4.0))),
             "end");
  }
  os << "</svg>\n";
}

void joint_csv(std::ostream& os, const Pmf2D& t) {
  const auto& p = t.params;
  os << "# joint table: r1=" << format17(p.r1) << " r2=" << format17(p.r2)
     << " phi=" << format17(p.phi) << " gamma=" << format17(p.gamma)
     << " rho=" << format17(p.rho) << "\n# n1_max=" << t.n1_max
     << " n2_max=" << t.n2_max
     << " captured_mass=" << format17(t.captured_mass) << "\n";
  os << "n1,n2,W\n";
  for (int n1 = 0; n1 <= t.n1_max; ++n1)
    for (int n2 = 0; n2 <= t.n2_max; ++n2)
      os << n1 << "," << n2 << "," << format17(t.at(n1, n2)) << "\n";
}

void joint_json(std::ostream& os, const Pmf2D& t) {
  json root;
  root["command"] = "joint";
  root["params"] = params_json(t.params);
  root["bounds"] = {{"n1_max", t.n1_max}, {"n2_max", t.n2_max}};
  root["captured_mass"] = t.captured_mass;
  json values = json::array();
  for (int n1 = 0; n1 <= t.n1_max; ++n1)
    for (int n2 = 0; n2 <= t.n2_max; ++n2)
      values.push_back({n1, n2, t.at(n1, n2)});
  root["values"] = std::move(values);
  os << root.dump(1) << "\n";
}

void window_csv(std::ostream& os, const WindowScan& s) {
  const auto& p = s.params;
  os << "# joint window: r1=" << format17(p.r1) << " r2=" << format17(p.r2)
     << " phi=" << format17(p.phi) << " gamma=" << format17(p.gamma)
     << " rho=" << format17(p.rho) << "\n# n1_max=" << s.n1_max
     << " n2_max=" << s.n2_max << " stride=" << s.stride
     << " captured_mass=" << format17(s.captured_mass) << "\n";
  os << "n1,n2,W\n";
  for (int i = 0; i < s.strided_rows; ++i)
    for (int j = 0; j < s.strided_cols; ++j)
      os << static_cast<long>(i) * s.stride << ","
         << static_cast<long>(j) * s.stride << ","
         << format17(s.strided[static_cast<size_t>(i) * s.strided_cols + j])
         << "\n";
}

void window_json(std::ostream& os, const WindowScan& s) {
  json root;
  root["command"] = "joint";
  root["params"] = params_json(s.params);
  root["bounds"] = {{"n1_max", s.n1_max}, {"n2_max", s.n2_max}};
  root["stride"] = s.stride;
  root["captured_mass"] = s.captured_mass;
  json values = json::array();
  for (int i = 0; i < s.strided_rows; ++i)
    for (int j = 0; j < s.strided_cols; ++j)
      values.push_back({static_cast<long>(i) * s.stride,
                        static_cast<long>(j) * s.stride,
                        s.strided[static_cast<size_t>(i) * s.strided_cols + j]});
  root["values"] = std::move(values);
  os << root.dump(1) << "\n";
}

// dense tables wider than this are block-aggregated before rendering
constexpr int kMaxCellsPerAxis = 220;

}  // namespace

void write_total(std::ostream& os, OutputFormat fmt,
                 const std::vector<TotalSeries>& series) {
  switch (fmt) {
    case OutputFormat::kCsv: total_csv(os, series); break;
    case OutputFormat::kJson: total_json(os, series); break;
    case OutputFormat::kSvg: total_svg(os, series); break;
  }
}

void write_joint(std::ostream& os, OutputFormat fmt, const Pmf2D& t) {
  switch (fmt) {
    case OutputFormat::kCsv: joint_csv(os, t); break;
    case OutputFormat::kJson: joint_json(os, t); break;
    case OutputFormat::kSvg: {
      const int rows = t.n1_max + 1, cols = t.n2_max + 1;
      if (rows <= kMaxCellsPerAxis && cols <= kMaxCellsPerAxis) {
        heatmap_svg(os, t.values, rows, cols, t.n1_max, t.n2_max,
                    "joint photon statistics W(n1, n2)");
      } else {
        const int g = 160;
        std::vector<double> blocks(static_cast<size_t>(g) * g, 0.0);
        for (long n1 = 0; n1 <= t.n1_max; ++n1)
          for (long n2 = 0; n2 <= t.n2_max; ++n2)
            blocks[(n1 * g / rows) * g + (n2 * g / cols)] +=
                t.values[static_cast<size_t>(n1) * cols + n2];
        heatmap_svg(os, blocks, g, g, t.n1_max, t.n2_max,
                    "joint photon statistics, block mass");
      }
      break;
    }
  }
}

void write_joint_window(std::ostream& os, OutputFormat fmt,
                        const WindowScan& s) {
  switch (fmt) {
    case OutputFormat::kCsv: window_csv(os, s); break;
    case OutputFormat::kJson: window_json(os, s); break;
    case OutputFormat::kSvg:
      if (!s.block_mass.empty())
        heatmap_svg(os, s.block_mass, s.block_grid, s.block_grid, s.n1_max,
                    s.n2_max, "joint photon statistics, block mass");
      else
        heatmap_svg(os, s.strided, s.strided_rows, s.strided_cols, s.n1_max,
                    s.n2_max, "joint photon statistics (strided)");
      break;
  }
}

void write_total_file(const std::string& path, OutputFormat fmt,
                      const std::vector<TotalSeries>& series) {
  to_file(path, [&](std::ostream& os) { write_total(os, fmt, series); });
}

void write_joint_file(const std::string& path, OutputFormat fmt,
                      const Pmf2D& table) {
  to_file(path, [&](std::ostream& os) { write_joint(os, fmt, table); });
}

void write_joint_window_file(const std::string& path, OutputFormat fmt,
                             const WindowScan& scan) {
  to_file(path, [&](std::ostream& os) { write_joint_window(os, fmt, scan); });
}

// ---------------------------------------------------------------------------
// figure presets
// ---------------------------------------------------------------------------

std::vector<TotalSeries> figure1_series() {
  const int n_max = 120;
  std::vector<TotalSeries> out;
  const double pairs[3][2] = {{0.5, 0.5}, {0.99, 0.99}, {0.5, 0.99}};
  static const char* labels[3] = {"s1=0.5 s2=0.5", "s1=0.99 s2=0.99",
                                  "s1=0.5 s2=0.99"};
  for (int i = 0; i < 3; ++i) {
    TotalSeries s;
    s.label = labels[i];
    s.s1 = pairs[i][0];
    s.s2 = pairs[i][1];
    s.table = total_pmf_table(SValue(s.s1), SValue(s.s2), n_max);
    out.push_back(std::move(s));
  }
  return out;
}

Figure2Result figure2_scan(int threads) {
  Figure2Result out;
  out.params = SqueezeParams{3.0, 5.0, M_PI / 5.0, 2.0 * M_PI / 9.0, 0.0};
  const SValue s1 = s_of_r(out.params.r1), s2 = s_of_r(out.params.r2);
  // smallest K with sum_{k<=K} W_2k >= 0.995: every (n1,n2) with
  // n1+n2 <= 2K then lies inside the square window, so the captured mass of
  // the window is certifiably >= 0.995
  double cum = 0.0;
  long k995 = 0;
  for (long k = 0; k < 1000000; ++k) {
    cum += total_pmf_closed(s1, s2, k);
    if (cum >= 0.995) {
      k995 = k;
      break;
    }
  }
  const int n_max = static_cast<int>(2 * k995);
  WindowScanOptions opt;
  opt.stride = (n_max + 1 + 255) / 256;
  opt.stride += opt.stride & 1;  // even stride keeps samples on the even-total lattice
  opt.block_grid = 160;
  opt.threads = threads;
  out.scan = joint_window_scan(out.params, n_max, n_max, opt);
  return out;
}

// ---------------------------------------------------------------------------
// readers (round-trip tests)
// ---------------------------------------------------------------------------

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string tok;
  while (std::getline(is, tok, sep)) out.push_back(tok);
  return out;
}

}  // namespace

std::vector<TotalSeries> read_total_csv(std::istream& is) {
  std::vector<TotalSeries> out;
  std::string line;
  bool multi = false;
  bool header_seen = false;
  auto series_at = [&](const std::string& label) -> TotalSeries& {
    for (auto& s : out)
      if (s.label == label) return s;
    out.push_back(TotalSeries{label, 0.0, 0.0, {}});
    return out.back();
  };
  while (std::getline(is, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      multi = line.rfind("series,", 0) == 0;
      continue;
    }
    const auto f = split(line, ',');
    TotalSeries& s = series_at(multi ? f[0] : "");
    const long n = std::strtol(f[multi ? 1 : 0].c_str(), nullptr, 10);
    const double w = std::strtod(f[multi ? 2 : 1].c_str(), nullptr);
    if (static_cast<long>(s.table.values.size()) <= n)
      s.table.values.resize(n + 1, 0.0);
    s.table.values[n] = w;
    s.table.n_max = std::max<int>(s.table.n_max, static_cast<int>(n));
  }
  return out;
}

std::vector<TotalSeries> read_total_json(std::istream& is) {
  json root = json::parse(is);
  std::vector<TotalSeries> out;
  for (const auto& item : root.at("series")) {
    TotalSeries s;
    s.label = item.at("label").get<std::string>();
    s.s1 = item.at("params").at("s1").get<double>();
    s.s2 = item.at("params").at("s2").get<double>();
    s.table.n_max = item.at("bounds").at("n_max").get<int>();
    s.table.tail_bound = item.at("tail_bound").get<double>();
    s.table.values.assign(s.table.n_max + 1, 0.0);
    for (const auto& row : item.at("values"))
      s.table.values[row.at(0).get<long>()] = row.at(1).get<double>();
    out.push_back(std::move(s));
  }
  return out;
}

JointRows read_joint_csv(std::istream& is) {
  JointRows out;
  std::string line;
  bool header_seen = false;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto pos = line.find("captured_mass=");
      if (pos != std::string::npos)
        out.captured_mass = std::strtod(line.c_str() + pos + 14, nullptr);
      continue;
    }
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto f = split(line, ',');
    out.rows.emplace_back(std::strtol(f[0].c_str(), nullptr, 10),
                          std::strtol(f[1].c_str(), nullptr, 10),
                          std::strtod(f[2].c_str(), nullptr));
  }
  return out;
}

JointRows read_joint_json(std::istream& is) {
  json root = json::parse(is);
  JointRows out;
  out.captured_mass = root.at("captured_mass").get<double>();
  for (const auto& row : root.at("values"))
    out.rows.emplace_back(row.at(0).get<long>(), row.at(1).get<long>(),
                          row.at(2).get<double>());
  return out;
}

}  // namespace tmsv
