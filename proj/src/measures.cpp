#include "w2bounds/measures.hpp"

#include <cmath>
#include <numeric>

#include "w2bounds/error.hpp"

namespace w2b {

DiscreteMeasure from_points(std::vector<Vec2> points, std::optional<std::vector<double>> weights) {
  if (points.empty()) throw_input("measure: empty support");
  for (const Vec2& p : points) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) throw_input("measure: non-finite point");
  }
  const std::size_t n = points.size();
  if (!weights) {
    return DiscreteMeasure(std::move(points), std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }
  std::vector<double>& w = *weights;
  if (w.size() != n) throw_input("measure: weights and points differ in length");
  double total = 0.0;
  for (double wi : w) {
    if (!std::isfinite(wi)) throw_input("measure: non-finite weight");
    if (wi < 0.0) throw_input("measure: negative weight");
    total += wi;
  }
  if (total <= 0.0) throw_input("measure: weights are all zero");
  for (double& wi : w) wi /= total;
  return DiscreteMeasure(std::move(points), std::move(w));
}

Moments2 moments(const DiscreteMeasure& measure) {
  const auto& pts = measure.points();
  const auto& w = measure.weights();
  double m1 = 0.0, m2 = 0.0, e1 = 0.0, e2 = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    m1 += w[i] * pts[i].x;
    m2 += w[i] * pts[i].y;
    e1 += w[i] * pts[i].x * pts[i].x;
    e2 += w[i] * pts[i].y * pts[i].y;
  }
  double a = 0.0, b = 0.0, c = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double dx = pts[i].x - m1;
    const double dy = pts[i].y - m2;
    a += w[i] * dx * dx;
    b += w[i] * dy * dy;
    c += w[i] * dx * dy;
  }
  return {m1, m2, a, b, c, e1, e2};
}

DiscreteMeasure discretize_curve(const Curve& curve, std::size_t n) {
  if (n == 0) throw_input("discretize_curve: n must be positive");
  if (!curve.eval) throw_input("discretize_curve: curve has no evaluation rule");
  std::vector<Vec2> pts;
  pts.reserve(n);
  const double span = curve.t_max - curve.t_min;
  for (std::size_t i = 0; i < n; ++i) {
    // Last sample lands exactly on t_max.
    const double t = (n == 1) ? curve.t_min
                     : (i + 1 == n)
                         ? curve.t_max
                         : curve.t_min + span * static_cast<double>(i) / static_cast<double>(n - 1);
    pts.push_back(curve.eval(t));
  }
  return from_points(std::move(pts));
}

DiscreteMeasure discretize_box(double x0, double x1, double y0, double y1, std::size_t k) {
  if (k == 0) throw_input("discretize_box: k must be positive");
  std::vector<Vec2> pts;
  pts.reserve(k * k);
  const double kd = static_cast<double>(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      const double u = (static_cast<double>(i) + 0.5) / kd;
      const double v = (static_cast<double>(j) + 0.5) / kd;
      pts.push_back({x0 + (x1 - x0) * u, y0 + (y1 - y0) * v});
    }
  }
  return from_points(std::move(pts));
}

DiscreteMeasure pushforward(const DiscreteMeasure& measure, const AffineMap2& map) {
  std::vector<Vec2> pts;
  pts.reserve(measure.size());
  for (const Vec2& p : measure.points()) pts.push_back(map(p));
  return DiscreteMeasure(std::move(pts), measure.weights());
}

}  // namespace w2b
