#pragma once

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "diabpred/matrix.hpp"

namespace diabpred::svg {

struct LinePlot {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<std::pair<double, double>> points;  // in [0,1] x [0,1]
  std::optional<std::string> annotation;
  bool chance_diagonal = false;
};

std::string line_plot(const LinePlot& plot);

// Correlation heatmap on [-1, 1]; masked cells are drawn grey.
std::string heatmap(const std::string& title, std::span<const std::string> labels,
                    const Matrix& values, std::span<const std::uint8_t> undefined_mask);

std::string bar_chart(const std::string& title, std::span<const std::string> labels,
                      std::span<const double> values);

std::string escape(const std::string& text);

}  // namespace diabpred::svg
