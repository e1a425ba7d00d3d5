#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "w2bounds/geometry.hpp"
#include "w2bounds/symmat2.hpp"
#include "w2bounds/transforms.hpp"

namespace w2b {

/// Tolerance on |sum(weights) - 1| for a valid measure.
inline constexpr double kWeightSumTolerance = 1e-9;

/// Finitely supported probability measure on the plane.
///
/// Construction goes through from_points (or the discretizers), which
/// enforce: nonempty support, nonnegative weights, weights summing to one.
class DiscreteMeasure {
 public:
  const std::vector<Vec2>& points() const { return points_; }
  const std::vector<double>& weights() const { return weights_; }
  std::size_t size() const { return points_.size(); }

  friend DiscreteMeasure from_points(std::vector<Vec2> points,
                                     std::optional<std::vector<double>> weights);
  friend DiscreteMeasure pushforward(const DiscreteMeasure& measure, const AffineMap2& map);

 private:
  DiscreteMeasure(std::vector<Vec2> p, std::vector<double> w)
      : points_(std::move(p)), weights_(std::move(w)) {}

  std::vector<Vec2> points_;
  std::vector<double> weights_;
};

/// Builds a measure. Missing weights default to uniform; given weights are
/// renormalized to sum to one. Throws Error(Input) on an empty support, a
/// negative or non-finite weight, all-zero weights or a length mismatch.
DiscreteMeasure from_points(std::vector<Vec2> points,
                            std::optional<std::vector<double>> weights = std::nullopt);

/// First and second moments of a planar law.
///
/// a, b, c are the centered (co)variances Var[X1], Var[X2], Cov(X1, X2);
/// e1sq, e2sq are the raw second moments E[X1^2], E[X2^2].
struct Moments2 {
  double m1 = 0.0;
  double m2 = 0.0;
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;
  double e1sq = 0.0;
  double e2sq = 0.0;

  Vec2 mean() const { return {m1, m2}; }
  SymMat2 covariance() const { return {a, c, b}; }

  /// Fills e1sq/e2sq from the centered values.
  static Moments2 from_centered(double m1, double m2, double a, double b, double c) {
    return {m1, m2, a, b, c, a + m1 * m1, b + m2 * m2};
  }
};

/// Population (weighted, not Bessel corrected) moments.
Moments2 moments(const DiscreteMeasure& measure);

/// Parametrized planar curve t -> (x1(t), x2(t)) on [t_min, t_max].
struct Curve {
  double t_min = 0.0;
  double t_max = 1.0;
  std::function<Vec2(double)> eval;
  std::string tag;
};

/// n equispaced parameters covering [t_min, t_max] including both ends,
/// uniform weights. n == 1 samples t_min. Throws Error(Input) for n == 0.
DiscreteMeasure discretize_curve(const Curve& curve, std::size_t n);

/// k x k cell-centred tensor grid on [x0, x1] x [y0, y1], uniform weights.
DiscreteMeasure discretize_box(double x0, double x1, double y0, double y1, std::size_t k);

/// Pointwise image of the support; weights are unchanged.
DiscreteMeasure pushforward(const DiscreteMeasure& measure, const AffineMap2& map);

}  // namespace w2b
