#pragma once

#include "w2bounds/symmat2.hpp"

namespace w2b {

/// x -> linear * x + offset.
struct AffineMap2 {
  Mat2 linear = Mat2::identity();
  Vec2 offset{};

  Vec2 operator()(Vec2 p) const { return linear * p + offset; }

  static AffineMap2 identity() { return {}; }
};

/// T_alpha(x) = x + alpha.
AffineMap2 translation(Vec2 alpha);

/// S_lambda(x) = diag(lambda) x. Both components must be nonzero.
AffineMap2 scaling(Vec2 lambda);

/// Counter-clockwise rotation by theta radians about the origin.
AffineMap2 rotation(double theta);

/// (f o g)(x) = f(g(x)).
AffineMap2 compose(const AffineMap2& f, const AffineMap2& g);

}  // namespace w2b
