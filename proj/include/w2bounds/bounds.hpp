#pragma once

#include <optional>
#include <string>
#include <vector>

#include "w2bounds/geometry.hpp"
#include "w2bounds/measures.hpp"

namespace w2b {

// Scale conventions: rotation quantities are squared W2, translation and
// composition quantities are plain W2, dilation is squared W2.

enum class BoundKind { Exact, Lower, Upper };

struct BoundReport {
  double value = 0.0;
  BoundKind kind = BoundKind::Exact;
  std::vector<std::string> assumptions;
};

/// W2(T_alpha X, T_alpha' X) = |alpha - alpha'|. Exact.
double w2_translation(Vec2 alpha, Vec2 alpha_prime);

/// Squared W2 between S_lambda X and S_lambda' X:
///   E[X1^2] (l1 - l1')^2 + E[X2^2] (l2 - l2')^2.
/// Requires uncorrelated components (|c| <= 1e-9) or strictly positive
/// scalings; zero scale components are rejected. With a sign flip on a
/// symmetric coordinate the value is an upper bound rather than the distance:
/// the centered square with (1,1) vs (-1,1) gives 1/3 while W2 is 0.
double w2_dilation_sq(const Moments2& m, Vec2 lambda, Vec2 lambda_prime);

/// Mean part of the rotation bound, 2 |m|^2 (1 - cos(theta - phi)).
double rotation_mean_term(const Moments2& m, double theta, double phi);

/// Bures lower bound on W2(R_theta X, R_phi X)^2:
///   2|m|^2 (1 - cos d) + 2(a + b)
///     - 2 sqrt(((a - b)^2 + 4c^2) cos^2 d + 4(ab - c^2)),   d = theta - phi.
double rotation_lower_bound_sq(const Moments2& m, double theta, double phi);

struct EquivalenceConstants {
  double c_low = 0.0;
  /// Empty when ab - c^2 <= 1e-12 (the upper constant divides by its root).
  std::optional<double> c_high;
};

/// Constants with c_low d^2 <= rotation_lower_bound_sq <= c_high d^2 for
/// |d| <= pi/2:
///   c_low  = 8|m|^2/pi^2 + 4((a-b)^2 + 4c^2) / ((4 + pi^2)(a + b))
///   c_high = |m|^2 + ((a-b)^2 + 4c^2) / sqrt(ab - c^2)
EquivalenceConstants equivalence_constants(const Moments2& m);

enum class CompositionMode {
  EqualityCase,  // rotation bound assumed attained for S_lambda X
  General,       // "+" variant, unconditional
};

/// Upper bound on W2(T_alpha o R_theta o S_lambda X, X) (not squared), built
/// from translation, dilation and rotation terms via the triangle
/// inequality. lambda must be strictly positive.
double composition_upper_bound(const Moments2& m, Vec2 alpha, Vec2 lambda, double theta,
                               CompositionMode mode);

/// Report wrappers tagging kind and assumptions.
BoundReport translation_report(Vec2 alpha, Vec2 alpha_prime);
BoundReport dilation_report(const Moments2& m, Vec2 lambda, Vec2 lambda_prime);
BoundReport rotation_report(const Moments2& m, double theta, double phi);
BoundReport composition_report(const Moments2& m, Vec2 alpha, Vec2 lambda, double theta,
                               CompositionMode mode);

}  // namespace w2b
