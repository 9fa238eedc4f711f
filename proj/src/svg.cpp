#include "diabpred/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>

namespace diabpred::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string header(int width, int height) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + std::to_string(width) +
         "\" height=\"" + std::to_string(height) + "\" viewBox=\"0 0 " + std::to_string(width) +
         " " + std::to_string(height) + "\" font-family=\"sans-serif\">\n" +
         "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

std::string text(double x, double y, const std::string& s, const char* anchor = "middle",
                 int size = 12, const char* extra = "") {
  return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-size=\"" + std::to_string(size) +
         "\" text-anchor=\"" + anchor + "\"" + extra + ">" + escape(s) + "</text>\n";
}

// white -> yellow -> red for |r|, blue tint for negative values
std::string color_for(double r) {
  const double t = std::clamp(std::fabs(r), 0.0, 1.0);
  int red, green, blue;
  if (r >= 0) {
    red = 255;
    green = static_cast<int>(255 - 200 * t);
    blue = static_cast<int>(230 * (1 - t));
  } else {
    red = static_cast<int>(255 - 200 * t);
    green = static_cast<int>(255 - 120 * t);
    blue = 255;
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", red, green, blue);
  return buf;
}

}  // namespace

std::string escape(const std::string& s) {
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

std::string line_plot(const LinePlot& plot) {
  const double left = 70, top = 40, size = 400;
  std::string out = header(500, 500);
  out += text(left + size / 2, 25, plot.title, "middle", 15);
  out += "<rect x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" + num(size) +
         "\" height=\"" + num(size) + "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double f = i / 5.0;
    const double px = left + f * size;
    const double py = top + size - f * size;
    out += text(px, top + size + 18, num(f), "middle", 10);
    out += text(left - 8, py + 4, num(f), "end", 10);
  }
  out += text(left + size / 2, top + size + 40, plot.x_label);
  out += text(20, top + size / 2, plot.y_label, "middle", 12,
              (" transform=\"rotate(-90 20 " + num(top + size / 2) + ")\"").c_str());
  if (plot.chance_diagonal) {
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(top + size) + "\" x2=\"" + num(left + size) +
           "\" y2=\"" + num(top) + "\" stroke=\"grey\" stroke-dasharray=\"4 4\"/>\n";
  }
  out += "<polyline fill=\"none\" stroke=\"#1f5fbf\" stroke-width=\"2\" points=\"";
  for (const auto& [x, y] : plot.points) {
    out += num(left + std::clamp(x, 0.0, 1.0) * size) + "," +
           num(top + size - std::clamp(y, 0.0, 1.0) * size) + " ";
  }
  out += "\"/>\n";
  if (plot.annotation) out += text(left + size - 10, top + size - 12, *plot.annotation, "end", 13);
  out += "</svg>\n";
  return out;
}

std::string heatmap(const std::string& title, std::span<const std::string> labels,
                    const Matrix& values, std::span<const std::uint8_t> mask) {
  const std::size_t p = labels.size();
  const double cell = 28, left = 170, top = 60;
  const int width = static_cast<int>(left + cell * static_cast<double>(p) + 20);
  const int height = static_cast<int>(top + cell * static_cast<double>(p) + 150);
  std::string out = header(width, height);
  out += text(width / 2.0, 30, title, "middle", 15);
  for (std::size_t i = 0; i < p; ++i) {
    const double y = top + cell * static_cast<double>(i);
    out += text(left - 6, y + cell * 0.65, labels[i], "end", 10);
    const double x = left + cell * (static_cast<double>(i) + 0.5);
    const double ty = top + cell * static_cast<double>(p) + 8;
    out += text(x, ty, labels[i], "end", 10,
                (" transform=\"rotate(-60 " + num(x) + " " + num(ty) + ")\"").c_str());
    for (std::size_t j = 0; j < p; ++j) {
      const bool undefined = mask[i * p + j] != 0;
      const std::string fill = undefined ? "#bbbbbb" : color_for(values(i, j));
      out += "<rect x=\"" + num(left + cell * static_cast<double>(j)) + "\" y=\"" + num(y) +
             "\" width=\"" + num(cell) + "\" height=\"" + num(cell) + "\" fill=\"" + fill +
             "\"><title>" + escape(labels[i]) + " / " + escape(labels[j]) + ": " +
             (undefined ? std::string("undefined") : num(values(i, j))) + "</title></rect>\n";
    }
  }
  out += "</svg>\n";
  return out;
}

std::string bar_chart(const std::string& title, std::span<const std::string> labels,
                      std::span<const double> values) {
  const std::size_t n = labels.size();
  const double left = 70, top = 40, plot_h = 300;
  const double bar = 32;
  const int width = static_cast<int>(left + bar * static_cast<double>(n) + 40);
  const int height = static_cast<int>(top + plot_h + 130);
  double vmax = 0, vmin = 0;
  for (double v : values) {
    vmax = std::max(vmax, v);
    vmin = std::min(vmin, v);
  }
  const double span = vmax - vmin > 0 ? vmax - vmin : 1.0;
  const double zero_y = top + plot_h * (vmax / span);
  std::string out = header(width, height);
  out += text(width / 2.0, 25, title, "middle", 15);
  out += "<line x1=\"" + num(left) + "\" y1=\"" + num(zero_y) + "\" x2=\"" +
         num(left + bar * static_cast<double>(n)) + "\" y2=\"" + num(zero_y) + "\" stroke=\"black\"/>\n";
  out += text(left - 6, top + 4, num(vmax), "end", 10);
  out += text(left - 6, top + plot_h + 4, num(vmin), "end", 10);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = plot_h * std::fabs(values[i]) / span;
    const double x = left + bar * static_cast<double>(i) + 4;
    const double y = values[i] >= 0 ? zero_y - h : zero_y;
    out += "<rect x=\"" + num(x) + "\" y=\"" + num(y) + "\" width=\"" + num(bar - 8) +
           "\" height=\"" + num(h) + "\" fill=\"#4c78a8\"><title>" + escape(labels[i]) + ": " +
           num(values[i]) + "</title></rect>\n";
    const double lx = x + (bar - 8) / 2;
    const double ly = top + plot_h + 14;
    out += text(lx, ly, labels[i], "end", 10,
                (" transform=\"rotate(-60 " + num(lx) + " " + num(ly) + ")\"").c_str());
  }
  out += "</svg>\n";
  return out;
}

}  // namespace diabpred::svg
