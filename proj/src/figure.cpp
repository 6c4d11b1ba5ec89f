#include "posmom/figure.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include "json.hpp"

namespace posmom::figure {

namespace {

std::string fixed(double v, int digits = 2) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::fixed, digits);
  if (ec != std::errc())
    return "0";
  return std::string(buf.data(), end);
}

std::string tick_label(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                       std::chars_format::general, 6);
  if (ec != std::errc())
    return "?";
  return std::string(buf.data(), end);
}

std::string escape(const std::string &s) {
  std::string out;
  for (char c : s) {
    switch (c) {
    case '<':
      out += "&lt;";
      break;
    case '>':
      out += "&gt;";
      break;
    case '&':
      out += "&amp;";
      break;
    case '"':
      out += "&quot;";
      break;
    default:
      out += c;
    }
  }
  return out;
}

// 1, 2 or 5 times a power of ten, giving roughly `target` intervals.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double f : {1.0, 2.0, 5.0, 10.0})
    if (f * mag >= raw)
      return f * mag;
  return 10.0 * mag;
}

const char *dasharray(LineStyle s) {
  switch (s) {
  case LineStyle::Dashed:
    return "8,4";
  case LineStyle::Dotted:
    return "1.5,3";
  case LineStyle::Solid:
    break;
  }
  return nullptr;
}

Series column(const DensityTable &t, const std::vector<double> &values,
              const std::string &name, LineStyle style, bool positive_half) {
  Series s;
  s.id = "m" + std::to_string(t.m) + "-" + name;
  s.label = "m=" + std::to_string(t.m) + " " + name;
  s.style = style;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (positive_half && t.lambdas[i] < 0.0)
      continue;
    s.x.push_back(t.lambdas[i]);
    s.y.push_back(values[i]);
  }
  return s;
}

} // namespace

double Frame::to_px_x(double x) const {
  return left + (x - x_min) / (x_max - x_min) * (right - left);
}
double Frame::to_px_y(double y) const {
  return bottom - (y - y_min) / (y_max - y_min) * (bottom - top);
}
double Frame::from_px_x(double px) const {
  return x_min + (px - left) / (right - left) * (x_max - x_min);
}
double Frame::from_px_y(double py) const {
  return y_min + (bottom - py) / (bottom - top) * (y_max - y_min);
}

std::vector<int> figure_m_values(int fig) {
  switch (fig) {
  case 1:
    return {0, 2};
  case 2:
    return {4};
  case 3:
    return {6};
  case 4:
    return {1, 3, 5};
  case 5:
    return {40};
  case 6:
    return {41};
  default:
    throw std::out_of_range("figure index must be 1..6, got " + std::to_string(fig));
  }
}

bool figure_positive_half(int fig) { return fig == 5 || fig == 6; }

FigureData build_figure(int fig, const QuadratureConfig &cfg, double step) {
  FigureData data;
  const bool half = figure_positive_half(fig);
  for (int m : figure_m_values(fig)) {
    const double w = scan::default_half_width(m);
    data.tables.push_back(scan::scan_density(m, -w, w, step, cfg));
  }

  Plot &plot = data.plot;
  plot.title = "Figure " + std::to_string(fig) + ": distribution density of Q_x";
  auto &series = plot.series;
  for (const DensityTable &t : data.tables) {
    if (fig == 4) {
      // m = 1 dashed, m = 3 dotted, m = 5 solid
      const LineStyle style = t.m == 1   ? LineStyle::Dashed
                              : t.m == 3 ? LineStyle::Dotted
                                         : LineStyle::Solid;
      series.push_back(column(t, t.p, "p", style, half));
    } else if (t.m == 0) {
      series.push_back(column(t, t.p, "p", LineStyle::Solid, half));
    } else if (t.m % 2 == 0) {
      series.push_back(column(t, t.alpha2, "alpha2", LineStyle::Dotted, half));
      series.push_back(column(t, t.beta2, "beta2", LineStyle::Dashed, half));
      series.push_back(column(t, t.p, "p", LineStyle::Solid, half));
    } else {
      series.push_back(column(t, t.mu2, "mu2", LineStyle::Dotted, half));
      series.push_back(column(t, t.nu2, "nu2", LineStyle::Dashed, half));
      series.push_back(column(t, t.p, "p", LineStyle::Solid, half));
    }
  }
  return data;
}

Frame compute_frame(const Plot &plot, double width, double height) {
  double x_min = 0.0, x_max = 1.0, y_max = 1.0;
  bool first = true;
  for (const Series &s : plot.series) {
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      if (first) {
        x_min = x_max = s.x[i];
        y_max = s.y[i];
        first = false;
      }
      x_min = std::min(x_min, s.x[i]);
      x_max = std::max(x_max, s.x[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (!(x_max > x_min))
    x_max = x_min + 1.0;
  if (!(y_max > 0.0))
    y_max = 1.0;
  y_max *= 1.05;
  return {x_min, x_max, 0.0, y_max, 70.0, width - 20.0, 40.0, height - 50.0};
}

std::string render_svg(const Plot &plot, double width, double height) {
  const Frame f = compute_frame(plot, width, height);
  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fixed(width, 0) +
       "\" height=\"" + fixed(height, 0) + "\" viewBox=\"0 0 " + fixed(width, 0) + " " +
       fixed(height, 0) + "\">\n";

  const nlohmann::json frame_json = {{"x_min", f.x_min}, {"x_max", f.x_max},
                                     {"y_min", f.y_min}, {"y_max", f.y_max},
                                     {"left", f.left},   {"right", f.right},
                                     {"top", f.top},     {"bottom", f.bottom}};
  s += "<metadata id=\"frame\">" + escape(frame_json.dump()) + "</metadata>\n";
  s += "<title>" + escape(plot.title) + "</title>\n";
  s += "<rect x=\"0\" y=\"0\" width=\"" + fixed(width, 0) + "\" height=\"" +
       fixed(height, 0) + "\" fill=\"white\"/>\n";

  // Axes and ticks.
  s += "<g id=\"axes\" stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  s += "<line x1=\"" + fixed(f.left) + "\" y1=\"" + fixed(f.bottom) + "\" x2=\"" +
       fixed(f.right) + "\" y2=\"" + fixed(f.bottom) + "\"/>\n";
  s += "<line x1=\"" + fixed(f.left) + "\" y1=\"" + fixed(f.top) + "\" x2=\"" +
       fixed(f.left) + "\" y2=\"" + fixed(f.bottom) + "\"/>\n";
  const double x_step = nice_step(f.x_max - f.x_min, 8);
  const double y_step = nice_step(f.y_max - f.y_min, 5);
  std::string labels;
  for (double x = std::ceil(f.x_min / x_step) * x_step; x <= f.x_max + 1e-12; x += x_step) {
    const double px = f.to_px_x(x);
    s += "<line x1=\"" + fixed(px) + "\" y1=\"" + fixed(f.bottom) + "\" x2=\"" + fixed(px) +
         "\" y2=\"" + fixed(f.bottom + 5) + "\"/>\n";
    labels += "<text x=\"" + fixed(px) + "\" y=\"" + fixed(f.bottom + 20) +
              "\" text-anchor=\"middle\">" + tick_label(std::abs(x) < 1e-12 ? 0.0 : x) +
              "</text>\n";
  }
  for (double y = 0.0; y <= f.y_max + 1e-12; y += y_step) {
    const double py = f.to_px_y(y);
    s += "<line x1=\"" + fixed(f.left - 5) + "\" y1=\"" + fixed(py) + "\" x2=\"" +
         fixed(f.left) + "\" y2=\"" + fixed(py) + "\"/>\n";
    labels += "<text x=\"" + fixed(f.left - 8) + "\" y=\"" + fixed(py + 4) +
              "\" text-anchor=\"end\">" + tick_label(y) + "</text>\n";
  }
  s += "</g>\n";
  s += "<g id=\"labels\" font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  s += labels;
  s += "<text x=\"" + fixed(0.5 * (f.left + f.right)) + "\" y=\"" + fixed(height - 12) +
       "\" text-anchor=\"middle\">" + escape(plot.x_label) + "</text>\n";
  s += "<text x=\"16\" y=\"" + fixed(0.5 * (f.top + f.bottom)) +
       "\" text-anchor=\"middle\" transform=\"rotate(-90 16 " +
       fixed(0.5 * (f.top + f.bottom)) + ")\">" + escape(plot.y_label) + "</text>\n";
  s += "<text x=\"" + fixed(0.5 * (f.left + f.right)) +
       "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">" + escape(plot.title) +
       "</text>\n";
  s += "</g>\n";

  // Curves.
  s += "<g id=\"curves\" fill=\"none\" stroke=\"black\" stroke-width=\"1.2\">\n";
  for (const Series &c : plot.series) {
    s += "<polyline id=\"" + escape(c.id) + "\"";
    if (const char *dash = dasharray(c.style))
      s += std::string(" stroke-dasharray=\"") + dash + "\"";
    s += " points=\"";
    for (std::size_t i = 0; i < c.x.size(); ++i) {
      if (i)
        s += ' ';
      s += fixed(f.to_px_x(c.x[i]), 3) + "," + fixed(f.to_px_y(c.y[i]), 3);
    }
    s += "\"><title>" + escape(c.label) + "</title></polyline>\n";
  }
  s += "</g>\n";

  // Legend.
  s += "<g id=\"legend\" font-family=\"sans-serif\" font-size=\"11\">\n";
  double ly = f.top + 12;
  for (const Series &c : plot.series) {
    const double lx = f.right - 150;
    s += "<line x1=\"" + fixed(lx) + "\" y1=\"" + fixed(ly - 4) + "\" x2=\"" + fixed(lx + 30) +
         "\" y2=\"" + fixed(ly - 4) + "\" stroke=\"black\"";
    if (const char *dash = dasharray(c.style))
      s += std::string(" stroke-dasharray=\"") + dash + "\"";
    s += "/>\n<text x=\"" + fixed(lx + 36) + "\" y=\"" + fixed(ly) + "\">" + escape(c.label) +
         "</text>\n";
    ly += 16;
  }
  s += "</g>\n</svg>\n";
  return s;
}

} // namespace posmom::figure
