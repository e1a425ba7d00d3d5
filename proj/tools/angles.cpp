#include "angles.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "errors.hpp"

namespace w2b::cli {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_number(const std::string& s, std::size_t& pos, double& out) {
  const char* begin = s.c_str() + pos;
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  pos += static_cast<std::size_t>(end - begin);
  return true;
}

}  // namespace

double parse_angle_expr(const std::string& raw) {
  const std::string s = trim(raw);
  const auto bad = [&]() -> UsageError { return UsageError("cannot parse angle '" + raw + "'"); };
  if (s.empty()) throw bad();

  std::size_t pos = 0;
  double sign = 1.0;
  if (s[pos] == '+' || s[pos] == '-') {
    sign = s[pos] == '-' ? -1.0 : 1.0;
    ++pos;
  }
  double value = 1.0;
  bool have_number = false;
  if (pos < s.size() && (std::isdigit(static_cast<unsigned char>(s[pos])) || s[pos] == '.')) {
    if (!parse_number(s, pos, value)) throw bad();
    have_number = true;
  }
  if (pos < s.size() && s[pos] == '*') {
    if (!have_number) throw bad();
    ++pos;
  }
  bool have_pi = false;
  if (s.compare(pos, 2, "pi") == 0) {
    value *= std::numbers::pi;
    pos += 2;
    have_pi = true;
  }
  if (!have_number && !have_pi) throw bad();
  if (pos < s.size() && s[pos] == '/') {
    ++pos;
    double denom = 0.0;
    if (!parse_number(s, pos, denom) || denom == 0.0) throw bad();
    value /= denom;
  }
  if (pos != s.size() || !std::isfinite(value)) throw bad();
  return sign * value;
}

std::vector<double> AngleGrid::values() const {
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = min;
    return out;
  }
  const double steps = half_open ? static_cast<double>(count) : static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = min + (max - min) * static_cast<double>(i) / steps;
  }
  if (!half_open) out.back() = max;
  return out;
}

AngleGrid parse_angle_grid(const std::string& raw) {
  std::string s = trim(raw);
  AngleGrid g;
  if (!s.empty() && s.back() == ')') {
    g.half_open = true;
    s.pop_back();
  }
  const auto c1 = s.find(':');
  const auto c2 = c1 == std::string::npos ? std::string::npos : s.find(':', c1 + 1);
  if (c2 == std::string::npos || s.find(':', c2 + 1) != std::string::npos) {
    throw UsageError("--angles expects COUNT:MIN:MAX, got '" + raw + "'");
  }
  const std::string count_text = trim(s.substr(0, c1));
  char* end = nullptr;
  const long count = std::strtol(count_text.c_str(), &end, 10);
  if (count_text.empty() || *end != '\0' || count < 1) {
    throw UsageError("angle count must be a positive integer, got '" + count_text + "'");
  }
  g.count = static_cast<std::size_t>(count);
  g.min = parse_angle_expr(s.substr(c1 + 1, c2 - c1 - 1));
  g.max = parse_angle_expr(s.substr(c2 + 1));
  return g;
}

std::vector<double> parse_tuple(const std::string& raw, std::size_t arity) {
  std::vector<double> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = raw.find(',', start);
    const std::string item =
        trim(raw.substr(start, comma == std::string::npos ? std::string::npos : comma - start));
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0' || !std::isfinite(v)) {
      throw UsageError("cannot parse number '" + item + "' in '" + raw + "'");
    }
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (out.size() != arity) {
    throw UsageError("expected " + std::to_string(arity) + " comma-separated values, got '" + raw +
                     "'");
  }
  return out;
}

}  // namespace w2b::cli
