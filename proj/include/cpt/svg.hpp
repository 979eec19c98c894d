#pragma once
// Minimal self-contained SVG line charts: axes, ticks, legend, polylines.
// Just enough to plot rejection-rate curves, density overlays, and rolling
// p-value traces; not a plotting framework.

#include <string>
#include <vector>

#include "cpt/series.hpp"

namespace cpt {

struct SvgSeries {
  std::string name;
  RealSeries x;
  RealSeries y;
};

struct SvgChart {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  std::vector<SvgSeries> series;
  // free-form provenance note embedded as <desc> metadata (e.g. the density
  // bandwidth rule)
  std::string desc;
  int width = 860;
  int height = 520;
};

std::string render_svg(const SvgChart& chart);
void write_svg_file(const std::string& path, const SvgChart& chart);

// Gaussian kernel density on a 200-point grid, Silverman's rule bandwidth
// 0.9 min(sd, IQR/1.34) n^(-1/5). Returns grid xs and density values.
std::pair<RealSeries, RealSeries> kde_curve(const RealSeries& sample);

}  // namespace cpt
