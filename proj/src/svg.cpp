#include "cpt/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "cpt/csvio.hpp"

namespace cpt {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c",
                          "#9467bd", "#ff7f0e", "#8c564b"};

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

// round tick bounds to a 1/2/5 ladder step
std::vector<double> nice_ticks(double lo, double hi, int target) {
  if (!(hi > lo)) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double raw = (hi - lo) / std::max(1, target);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (mag * m >= raw) {
      step = mag * m;
      break;
    }
  }
  std::vector<double> ticks;
  const double first = std::ceil(lo / step) * step;
  for (double v = first; v <= hi + 1e-9 * step; v += step)
    ticks.push_back(std::fabs(v) < 1e-12 * step ? 0.0 : v);
  return ticks;
}

}  // namespace

std::string render_svg(const SvgChart& chart) {
  const int W = chart.width, H = chart.height;
  const int ml = 70, mr = 30, mt = chart.title.empty() ? 20 : 48, mb = 55;
  const double pw = W - ml - mr, ph = H - mt - mb;

  double xlo = 0.0, xhi = 1.0, ylo = 0.0, yhi = 1.0;
  bool first = true;
  for (const SvgSeries& s : chart.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (first) {
        xlo = xhi = s.x[i];
        ylo = yhi = s.y[i];
        first = false;
      }
      xlo = std::min(xlo, s.x[i]);
      xhi = std::max(xhi, s.x[i]);
      ylo = std::min(ylo, s.y[i]);
      yhi = std::max(yhi, s.y[i]);
    }
  }
  if (!(xhi > xlo)) xhi = xlo + 1.0;
  if (!(yhi > ylo)) yhi = ylo + 1.0;
  const double ypad = 0.05 * (yhi - ylo);
  ylo -= ypad;
  yhi += ypad;

  auto sx = [&](double v) { return ml + (v - xlo) / (xhi - xlo) * pw; };
  auto sy = [&](double v) { return mt + ph - (v - ylo) / (yhi - ylo) * ph; };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W
     << "\" height=\"" << H << "\" viewBox=\"0 0 " << W << ' ' << H << "\">\n";
  if (!chart.desc.empty())
    os << "  <desc>" << xml_escape(chart.desc) << "</desc>\n";
  os << "  <rect width=\"" << W << "\" height=\"" << H
     << "\" fill=\"white\"/>\n";
  if (!chart.title.empty())
    os << "  <text x=\"" << W / 2
       << "\" y=\"28\" text-anchor=\"middle\" font-family=\"sans-serif\" "
          "font-size=\"16\">"
       << xml_escape(chart.title) << "</text>\n";

  // axes
  os << "  <g stroke=\"#444\" stroke-width=\"1\">\n";
  os << "    <line x1=\"" << ml << "\" y1=\"" << mt + ph << "\" x2=\""
     << ml + pw << "\" y2=\"" << mt + ph << "\"/>\n";
  os << "    <line x1=\"" << ml << "\" y1=\"" << mt << "\" x2=\"" << ml
     << "\" y2=\"" << mt + ph << "\"/>\n";
  os << "  </g>\n";

  os << "  <g font-family=\"sans-serif\" font-size=\"11\" fill=\"#333\">\n";
  for (double t : nice_ticks(xlo, xhi, 6)) {
    const double px = sx(t);
    os << "    <line x1=\"" << px << "\" y1=\"" << mt + ph << "\" x2=\"" << px
       << "\" y2=\"" << mt + ph + 5 << "\" stroke=\"#444\"/>\n";
    os << "    <text x=\"" << px << "\" y=\"" << mt + ph + 18
       << "\" text-anchor=\"middle\">" << fmt_num(t) << "</text>\n";
  }
  for (double t : nice_ticks(ylo, yhi, 6)) {
    const double py = sy(t);
    os << "    <line x1=\"" << ml - 5 << "\" y1=\"" << py << "\" x2=\"" << ml
       << "\" y2=\"" << py << "\" stroke=\"#444\"/>\n";
    os << "    <text x=\"" << ml - 8 << "\" y=\"" << py + 4
       << "\" text-anchor=\"end\">" << fmt_num(t) << "</text>\n";
  }
  if (!chart.xlabel.empty())
    os << "    <text x=\"" << ml + pw / 2 << "\" y=\"" << H - 12
       << "\" text-anchor=\"middle\" font-size=\"13\">"
       << xml_escape(chart.xlabel) << "</text>\n";
  if (!chart.ylabel.empty())
    os << "    <text x=\"16\" y=\"" << mt + ph / 2
       << "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 "
          "16 "
       << mt + ph / 2 << ")\">" << xml_escape(chart.ylabel) << "</text>\n";
  os << "  </g>\n";

  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const SvgSeries& s = chart.series[si];
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    os << "  <polyline fill=\"none\" stroke=\"" << color
       << "\" stroke-width=\"1.8\" points=\"";
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (i) os << ' ';
      os << fmt_num(sx(s.x[i])) << ',' << fmt_num(sy(s.y[i]));
    }
    os << "\"/>\n";
  }

  // legend, top right of the plot area
  os << "  <g font-family=\"sans-serif\" font-size=\"12\">\n";
  for (std::size_t si = 0; si < chart.series.size(); ++si) {
    const double ly = mt + 14 + 18.0 * double(si);
    const char* color = kPalette[si % (sizeof kPalette / sizeof *kPalette)];
    os << "    <line x1=\"" << ml + pw - 150 << "\" y1=\"" << ly - 4
       << "\" x2=\"" << ml + pw - 125 << "\" y2=\"" << ly - 4 << "\" stroke=\""
       << color << "\" stroke-width=\"2\"/>\n";
    os << "    <text x=\"" << ml + pw - 118 << "\" y=\"" << ly << "\">"
       << xml_escape(chart.series[si].name) << "</text>\n";
  }
  os << "  </g>\n</svg>\n";
  return os.str();
}

void write_svg_file(const std::string& path, const SvgChart& chart) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open '" + path + "' for writing");
  out << render_svg(chart);
  if (!out) throw DataError("write failed for '" + path + "'");
}

std::pair<RealSeries, RealSeries> kde_curve(const RealSeries& sample) {
  if (sample.size() < 2) throw DataError("KDE needs at least 2 points");
  RealSeries s = sample;
  std::sort(s.begin(), s.end());
  const double n = double(s.size());
  double mean = 0.0;
  for (double v : s) mean += v;
  mean /= n;
  double var = 0.0;
  for (double v : s) var += (v - mean) * (v - mean);
  var /= (n - 1.0);
  const double iqr = s[std::size_t(0.75 * (n - 1))] - s[std::size_t(0.25 * (n - 1))];
  double spread = std::min(std::sqrt(var), iqr / 1.34);
  if (spread <= 0.0) spread = std::max(std::sqrt(var), 1e-6);
  const double bw = 0.9 * spread * std::pow(n, -0.2);

  const int grid_n = 200;
  const double lo = s.front() - 3.0 * bw, hi = s.back() + 3.0 * bw;
  RealSeries xs(grid_n), ys(grid_n);
  const double inv = 1.0 / (bw * std::sqrt(2.0 * 3.14159265358979323846));
  for (int i = 0; i < grid_n; ++i) {
    const double x = lo + (hi - lo) * i / (grid_n - 1);
    double acc = 0.0;
    for (double v : s) {
      const double z = (x - v) / bw;
      acc += std::exp(-0.5 * z * z);
    }
    xs[std::size_t(i)] = x;
    ys[std::size_t(i)] = acc * inv / n;
  }
  return {xs, ys};
}

}  // namespace cpt
