#pragma once

#include <string>
#include <vector>

namespace w2b::cli {

/// Parses a scalar such as "1.5", "pi", "-pi/4", "3pi/2", "2*pi".
double parse_angle_expr(const std::string& text);

struct AngleGrid {
  std::size_t count = 50;
  double min = 0.0;
  double max = 0.0;
  bool half_open = false;  // max excluded

  std::vector<double> values() const;
};

/// "COUNT:MIN:MAX", with a trailing ')' marking MAX as excluded.
AngleGrid parse_angle_grid(const std::string& text);

/// "X,Y" or "X,Y,Z..." into exactly `arity` numbers.
std::vector<double> parse_tuple(const std::string& text, std::size_t arity);

}  // namespace w2b::cli
