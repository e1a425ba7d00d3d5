#pragma once

#include <string>
#include <vector>

namespace w2b::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  std::vector<double> err;  // optional symmetric error bars, same length as y
};

struct PlotSpec {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool scatter = false;  // markers only, equal axis scaling
};

/// Renders a minimal SVG document. Non-finite points are skipped.
std::string render_svg(const PlotSpec& spec, const std::vector<Series>& series);

}  // namespace w2b::cli
