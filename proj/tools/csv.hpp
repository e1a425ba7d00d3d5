#pragma once

#include <optional>
#include <string>
#include <vector>

namespace w2b::cli {

/// 12 significant digits; empty optional renders as an empty field.
std::string format_value(double v);
std::string format_value(const std::optional<double>& v);

class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header);

  void add_row(const std::vector<std::optional<double>>& row);
  void add_raw_row(const std::vector<std::string>& row);
  std::string str() const;

 private:
  std::size_t columns_;
  std::string text_;
};

struct PointCloud {
  std::vector<double> xy;  // interleaved
  std::vector<double> weights;  // empty when the file has no w column
  std::size_t size() const { return xy.size() / 2; }
};

/// Header `x,y` or `x,y,w`; blank lines ignored.
PointCloud parse_point_cloud(const std::string& text, const std::string& origin);
PointCloud read_point_cloud(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace w2b::cli
