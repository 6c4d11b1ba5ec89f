#pragma once

#include <string>
#include <vector>

#include "posmom/scan.hpp"

namespace posmom::figure {

enum class LineStyle { Solid, Dashed, Dotted };

struct Series {
  std::string id; ///< e.g. "m2-alpha2"; used as the polyline id
  std::string label;
  LineStyle style = LineStyle::Solid;
  std::vector<double> x, y;
};

struct Plot {
  std::string title;
  std::string x_label = "lambda";
  std::string y_label = "p(lambda)";
  std::vector<Series> series;
};

/// Axis ranges and pixel frame of a rendered plot. Written into the SVG
/// <metadata> element so data coordinates can be recovered from it.
struct Frame {
  double x_min, x_max, y_min, y_max;
  double left, right, top, bottom;

  double to_px_x(double x) const;
  double to_px_y(double y) const;
  double from_px_x(double px) const;
  double from_px_y(double py) const;
};

/// m values drawn in figure 1..6; throws std::out_of_range otherwise.
std::vector<int> figure_m_values(int fig);

/// Whether the figure shows only lambda >= 0.
bool figure_positive_half(int fig);

struct FigureData {
  Plot plot;
  std::vector<DensityTable> tables; ///< full-line data, one per m
};

/// Computes the densities behind a figure on the default range of each m.
FigureData build_figure(int fig, const QuadratureConfig &cfg = {}, double step = 0.01);

/// Self-contained SVG 1.1 document: axes, ticks, labels, one polyline per series.
std::string render_svg(const Plot &plot, double width = 800.0, double height = 500.0);

/// The frame render_svg would use for this plot.
Frame compute_frame(const Plot &plot, double width = 800.0, double height = 500.0);

} // namespace posmom::figure
