#include "w2bounds/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "w2bounds/error.hpp"

namespace w2b {

namespace {

// 1 - cos(d) without cancellation near d = 0.
double one_minus_cos(double d) {
  const double s = std::sin(0.5 * d);
  return 2.0 * s * s;
}

double anisotropy(const Moments2& m) { return (m.a - m.b) * (m.a - m.b) + 4.0 * m.c * m.c; }

double cov_det(const Moments2& m) { return std::max(0.0, m.a * m.b - m.c * m.c); }

// sqrt(((a-b)^2 + 4c^2) cos^2 d + 4(ab - c^2)) = tr[(S_theta S_phi)^{1/2}]
double rotation_trace_root(const Moments2& m, double d) {
  const double cd = std::cos(d);
  return std::sqrt(std::max(0.0, anisotropy(m) * cd * cd + 4.0 * cov_det(m)));
}

Moments2 scaled(const Moments2& m, Vec2 lambda) {
  const double l1 = lambda.x, l2 = lambda.y;
  return {l1 * m.m1,       l2 * m.m2,       l1 * l1 * m.a,    l2 * l2 * m.b,
          l1 * l2 * m.c,   l1 * l1 * m.e1sq, l2 * l2 * m.e2sq};
}

}  // namespace

double w2_translation(Vec2 alpha, Vec2 alpha_prime) { return norm(alpha - alpha_prime); }

double w2_dilation_sq(const Moments2& m, Vec2 lambda, Vec2 lambda_prime) {
  if (lambda.x == 0.0 || lambda.y == 0.0 || lambda_prime.x == 0.0 || lambda_prime.y == 0.0) {
    throw_input("w2_dilation_sq: scaling components must be nonzero");
  }
  const bool uncorrelated = std::abs(m.c) <= 1e-9;
  const bool positive = lambda.x > 0.0 && lambda.y > 0.0 && lambda_prime.x > 0.0 &&
                        lambda_prime.y > 0.0;
  if (!uncorrelated && !positive) {
    throw_input("w2_dilation_sq: correlated components require positive scalings");
  }
  const double d1 = lambda.x - lambda_prime.x;
  const double d2 = lambda.y - lambda_prime.y;
  return m.e1sq * d1 * d1 + m.e2sq * d2 * d2;
}

double rotation_mean_term(const Moments2& m, double theta, double phi) {
  return 2.0 * (m.m1 * m.m1 + m.m2 * m.m2) * one_minus_cos(theta - phi);
}

double rotation_lower_bound_sq(const Moments2& m, double theta, double phi) {
  const double d = theta - phi;
  const double trace_part = std::max(0.0, 2.0 * (m.a + m.b) - 2.0 * rotation_trace_root(m, d));
  return rotation_mean_term(m, theta, phi) + trace_part;
}

EquivalenceConstants equivalence_constants(const Moments2& m) {
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  const double mean_sq = m.m1 * m.m1 + m.m2 * m.m2;
  const double k = anisotropy(m);
  EquivalenceConstants out;
  out.c_low = 8.0 * mean_sq / pi2;
  if (m.a + m.b > 0.0) out.c_low += 4.0 * k / ((4.0 + pi2) * (m.a + m.b));
  const double det = m.a * m.b - m.c * m.c;
  if (det > 1e-12) out.c_high = mean_sq + k / std::sqrt(det);
  return out;
}

double composition_upper_bound(const Moments2& m, Vec2 alpha, Vec2 lambda, double theta,
                               CompositionMode mode) {
  if (!(lambda.x > 0.0 && lambda.y > 0.0)) {
    throw_input("composition_upper_bound: lambda must be strictly positive");
  }
  const double translation_term = norm(alpha);
  const double dilation_term = std::sqrt(w2_dilation_sq(m, lambda, {1.0, 1.0}));
  const Moments2 s = scaled(m, lambda);
  double rotation_sq = 0.0;
  if (mode == CompositionMode::EqualityCase) {
    rotation_sq = rotation_lower_bound_sq(s, theta, 0.0);
  } else {
    rotation_sq = rotation_mean_term(s, theta, 0.0) + 2.0 * (s.a + s.b) +
                  2.0 * rotation_trace_root(s, theta);
  }
  return translation_term + dilation_term + std::sqrt(std::max(0.0, rotation_sq));
}

BoundReport translation_report(Vec2 alpha, Vec2 alpha_prime) {
  return {w2_translation(alpha, alpha_prime), BoundKind::Exact, {}};
}

BoundReport dilation_report(const Moments2& m, Vec2 lambda, Vec2 lambda_prime) {
  BoundReport r{w2_dilation_sq(m, lambda, lambda_prime), BoundKind::Exact, {"squared-scale"}};
  if (std::abs(m.c) > 1e-9) r.assumptions.emplace_back("positive-scaling");
  else r.assumptions.emplace_back("uncorrelated-components");
  return r;
}

BoundReport rotation_report(const Moments2& m, double theta, double phi) {
  return {rotation_lower_bound_sq(m, theta, phi), BoundKind::Lower, {"squared-scale"}};
}

BoundReport composition_report(const Moments2& m, Vec2 alpha, Vec2 lambda, double theta,
                               CompositionMode mode) {
  BoundReport r{composition_upper_bound(m, alpha, lambda, theta, mode), BoundKind::Upper, {}};
  if (mode == CompositionMode::EqualityCase) r.assumptions.emplace_back("equality-case required");
  return r;
}

}  // namespace w2b
