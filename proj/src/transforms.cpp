#include "w2bounds/transforms.hpp"

#include <cmath>

#include "w2bounds/error.hpp"

namespace w2b {

AffineMap2 translation(Vec2 alpha) { return {Mat2::identity(), alpha}; }

AffineMap2 scaling(Vec2 lambda) {
  if (lambda.x == 0.0 || lambda.y == 0.0) {
    throw_input("scaling: components of lambda must be nonzero");
  }
  return {{lambda.x, 0.0, 0.0, lambda.y}, {}};
}

AffineMap2 rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {{c, -s, s, c}, {}};
}

AffineMap2 compose(const AffineMap2& f, const AffineMap2& g) {
  return {f.linear * g.linear, f.linear * g.offset + f.offset};
}

}  // namespace w2b
