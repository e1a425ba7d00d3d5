#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "w2bounds/measures.hpp"
#include "w2bounds/symmat2.hpp"

namespace w2b {

/// Seeded Gaussian sample family N(mean, cov).
struct GaussianSpec {
  SymMat2 cov = SymMat2::identity();
  Vec2 mean{};
  std::uint64_t seed = 0;
};

enum class Shape {
  UnitSquare,      // uniform on [0,1]^2
  CenteredSquare,  // uniform on [-1/2,1/2]^2
  Rectangle2x1,    // uniform on [0,2] x [0,1]
  UnitCircle,      // (cos t, sin t), t in [0, 2pi]
  Segment,         // (t, 0), t in [-1/2, 1/2]
  LetterC,
  LetterA,
  LetterT1,
  LetterT2,
  Gaussian,
};

struct ShapeId {
  Shape shape = Shape::UnitSquare;
  GaussianSpec gaussian{};  // read only when shape == Gaussian

  static ShapeId of(Shape s) { return {s, {}}; }
  static ShapeId gaussian_of(const SymMat2& cov, Vec2 mean, std::uint64_t seed) {
    return {Shape::Gaussian, {cov, mean, seed}};
  }
};

/// CLI spelling, e.g. "letter-t1".
std::string_view shape_name(Shape s);
std::optional<Shape> parse_shape(std::string_view name);

/// True for shapes discretized as k x k grids (n must be a perfect square).
bool is_region(Shape s);

/// The parametrized curve behind a curve shape.
Curve shape_curve(Shape s);

/// Discretizes a shape with n support points. Regions need n = k^2; curves
/// use n equispaced parameters; Gaussians draw n seeded samples.
DiscreteMeasure make_shape(const ShapeId& id, std::size_t n);

/// Closed-form moments. For a Gaussian these are its parameters.
Moments2 analytic_moments(const ShapeId& id);

/// Nearest PSD matrix by clamping negative eigenvalues at zero.
SymMat2 project_psd(const SymMat2& m);

/// Lower-triangular L with L L^T = cov. cov must be PSD.
Mat2 lower_cholesky(const SymMat2& cov);

/// n standard normal pairs from a counter-based generator keyed by seed,
/// via Box-Muller. Bit-identical for identical (seed, n).
std::vector<Vec2> standard_normal_pairs(std::uint64_t seed, std::size_t n);

/// Derives an independent stream seed, e.g. for trial t of an experiment.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace w2b
