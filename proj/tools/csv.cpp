#include "csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace w2b::cli {
namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) {
    const auto b = field.find_first_not_of(" \t\r");
    const auto e = field.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? std::string() : field.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

}  // namespace

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string format_value(const std::optional<double>& v) {
  return v ? format_value(*v) : std::string();
}

CsvTable::CsvTable(std::vector<std::string> header) : columns_(header.size()) {
  add_raw_row(header);
}

void CsvTable::add_row(const std::vector<std::optional<double>>& row) {
  std::vector<std::string> fields;
  fields.reserve(row.size());
  for (const auto& v : row) fields.push_back(format_value(v));
  add_raw_row(fields);
}

void CsvTable::add_raw_row(const std::vector<std::string>& row) {
  if (row.size() != columns_) throw std::logic_error("CSV row width mismatch");
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i) text_ += ',';
    text_ += row[i];
  }
  text_ += '\n';
}

std::string CsvTable::str() const { return text_; }

PointCloud parse_point_cloud(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  bool weighted = false;
  PointCloud cloud;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    const auto fields = split_fields(line);
    const std::string where = origin + ":" + std::to_string(line_no);
    if (!have_header) {
      if (fields.size() == 2 && fields[0] == "x" && fields[1] == "y") {
        weighted = false;
      } else if (fields.size() == 3 && fields[0] == "x" && fields[1] == "y" && fields[2] == "w") {
        weighted = true;
      } else {
        throw UsageError(where + ": expected header 'x,y' or 'x,y,w'");
      }
      have_header = true;
      continue;
    }
    const std::size_t width = weighted ? 3 : 2;
    if (fields.size() != width) {
      throw UsageError(where + ": expected " + std::to_string(width) + " fields");
    }
    double values[3] = {0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < width; ++i) {
      char* end = nullptr;
      values[i] = std::strtod(fields[i].c_str(), &end);
      if (fields[i].empty() || *end != '\0' || !std::isfinite(values[i])) {
        throw UsageError(where + ": cannot parse number '" + fields[i] + "'");
      }
    }
    cloud.xy.push_back(values[0]);
    cloud.xy.push_back(values[1]);
    if (weighted) cloud.weights.push_back(values[2]);
  }
  if (!have_header) throw UsageError(origin + ": missing header");
  if (cloud.size() == 0) throw UsageError(origin + ": no points");
  return cloud;
}

PointCloud read_point_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_point_cloud(buf.str(), path);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw UsageError("cannot write '" + path + "'");
  out << content;
  out.close();
  if (!out) throw UsageError("failed writing '" + path + "'");
}

}  // namespace w2b::cli
