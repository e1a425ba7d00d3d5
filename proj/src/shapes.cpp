#include "w2bounds/shapes.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "w2bounds/error.hpp"

namespace w2b {

namespace {

using std::numbers::pi;

struct NamedShape {
  Shape shape;
  std::string_view name;
};

constexpr std::array<NamedShape, 10> kNames{{
    {Shape::UnitSquare, "unit-square"},
    {Shape::CenteredSquare, "centered-square"},
    {Shape::Rectangle2x1, "rectangle"},
    {Shape::UnitCircle, "circle"},
    {Shape::Segment, "segment"},
    {Shape::LetterC, "letter-c"},
    {Shape::LetterA, "letter-a"},
    {Shape::LetterT1, "letter-t1"},
    {Shape::LetterT2, "letter-t2"},
    {Shape::Gaussian, "gaussian"},
}};

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

// Uniform on (0, 1], never zero so log() is safe.
double unit_open(std::uint64_t bits) {
  return static_cast<double>((bits >> 11) + 1) * 0x1.0p-53;
}

}  // namespace

std::string_view shape_name(Shape s) {
  for (const auto& n : kNames) {
    if (n.shape == s) return n.name;
  }
  return "unknown";
}

std::optional<Shape> parse_shape(std::string_view name) {
  for (const auto& n : kNames) {
    if (n.name == name) return n.shape;
  }
  return std::nullopt;
}

bool is_region(Shape s) {
  return s == Shape::UnitSquare || s == Shape::CenteredSquare || s == Shape::Rectangle2x1;
}

Curve shape_curve(Shape s) {
  switch (s) {
    case Shape::UnitCircle:
      return {0.0, 2.0 * pi, [](double t) { return Vec2{std::cos(t), std::sin(t)}; }, "circle"};
    case Shape::Segment:
      return {-0.5, 0.5, [](double t) { return Vec2{t, 0.0}; }, "segment"};
    case Shape::LetterC:
      // Semicircle of radius 1 centred at (2/pi, 0), zero mean.
      return {0.5 * pi, 1.5 * pi,
              [](double t) { return Vec2{std::cos(t) + 2.0 / pi, std::sin(t)}; }, "letter-c"};
    case Shape::LetterA:
      return {0.0, 6.0,
              [](double t) {
                const double x1 = t <= 4.0 ? 2.0 - t : t - 5.0;
                const double x2 = t <= 2.0 ? t - 1.0 : (t <= 4.0 ? 3.0 - t : 0.0);
                return Vec2{x1, x2};
              },
              "letter-a"};
    case Shape::LetterT1:
      return {0.0, 4.0,
              [](double t) {
                return t <= 2.0 ? Vec2{1.0 - t, 0.5} : Vec2{0.0, t - 3.5};
              },
              "letter-t1"};
    case Shape::LetterT2:
      return {0.0, 4.0,
              [](double t) {
                return t <= 2.0 ? Vec2{1.0 - t, 1.0} : Vec2{0.0, t - 3.0};
              },
              "letter-t2"};
    default:
      throw_input(std::string("shape_curve: '") + std::string(shape_name(s)) +
                  "' is not a curve shape");
  }
}

DiscreteMeasure make_shape(const ShapeId& id, std::size_t n) {
  if (n == 0) throw_input("make_shape: n must be positive");
  if (is_region(id.shape)) {
    const auto k = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
    if (k * k != n) throw_input("make_shape: region shapes need n to be a perfect square");
    switch (id.shape) {
      case Shape::UnitSquare:
        return discretize_box(0.0, 1.0, 0.0, 1.0, k);
      case Shape::CenteredSquare:
        return discretize_box(-0.5, 0.5, -0.5, 0.5, k);
      default:
        return discretize_box(0.0, 2.0, 0.0, 1.0, k);
    }
  }
  if (id.shape == Shape::Gaussian) {
    const Mat2 l = lower_cholesky(id.gaussian.cov);
    std::vector<Vec2> pts = standard_normal_pairs(id.gaussian.seed, n);
    for (Vec2& p : pts) p = l * p + id.gaussian.mean;
    return from_points(std::move(pts));
  }
  return discretize_curve(shape_curve(id.shape), n);
}

Moments2 analytic_moments(const ShapeId& id) {
  switch (id.shape) {
    case Shape::UnitSquare:
      return Moments2::from_centered(0.5, 0.5, 1.0 / 12.0, 1.0 / 12.0, 0.0);
    case Shape::CenteredSquare:
      return Moments2::from_centered(0.0, 0.0, 1.0 / 12.0, 1.0 / 12.0, 0.0);
    case Shape::Rectangle2x1:
      return Moments2::from_centered(1.0, 0.5, 1.0 / 3.0, 1.0 / 12.0, 0.0);
    case Shape::UnitCircle:
      return Moments2::from_centered(0.0, 0.0, 0.5, 0.5, 0.0);
    case Shape::Segment:
      return Moments2::from_centered(0.0, 0.0, 1.0 / 12.0, 0.0, 0.0);
    case Shape::LetterC:
      // E[cos^2 t] - (2/pi)^2 and E[sin^2 t] over [pi/2, 3pi/2] with dt/pi.
      return Moments2::from_centered(0.0, 0.0, 0.5 - 4.0 / (pi * pi), 0.5, 0.0);
    case Shape::LetterA:
      return Moments2::from_centered(0.0, 0.0, 1.0, 2.0 / 9.0, 0.0);
    case Shape::LetterT1:
      // Bar: X1 uniform on [-1,1] at height 1/2; stem: X2 uniform on [-3/2,1/2].
      return Moments2::from_centered(0.0, 0.0, 1.0 / 6.0, 5.0 / 12.0, 0.0);
    case Shape::LetterT2:
      // T1 shifted up by 1/2: E[X2^2] = 5/12 + 1/4 = 2/3.
      return Moments2::from_centered(0.0, 0.5, 1.0 / 6.0, 5.0 / 12.0, 0.0);
    case Shape::Gaussian: {
      const auto& g = id.gaussian;
      return Moments2::from_centered(g.mean.x, g.mean.y, g.cov.xx, g.cov.yy, g.cov.xy);
    }
  }
  throw_input("analytic_moments: unknown shape");
}

SymMat2 project_psd(const SymMat2& m) {
  double lo = 0.0, hi = 0.0;
  m.eigenvalues(lo, hi);
  if (lo >= 0.0) return m;
  if (hi <= 0.0) return {};
  // Rank-one remainder hi * v v^T; pick the better conditioned eigenvector form.
  const Vec2 v1{m.xy, hi - m.xx};
  const Vec2 v2{hi - m.yy, m.xy};
  const Vec2 v = norm_sq(v1) > norm_sq(v2) ? v1 : v2;
  const double s = hi / norm_sq(v);
  return {s * v.x * v.x, s * v.x * v.y, s * v.y * v.y};
}

Mat2 lower_cholesky(const SymMat2& cov) {
  if (!cov.is_psd()) throw_input("gaussian: covariance is not positive semidefinite");
  if (cov.xx <= 0.0) return {0.0, 0.0, 0.0, std::sqrt(std::max(0.0, cov.yy))};
  const double l11 = std::sqrt(cov.xx);
  const double l21 = cov.xy / l11;
  const double l22 = std::sqrt(std::max(0.0, cov.yy - l21 * l21));
  return {l11, 0.0, l21, l22};
}

std::vector<Vec2> standard_normal_pairs(std::uint64_t seed, std::size_t n) {
  const std::uint64_t key = mix64(seed + kGolden);
  std::vector<Vec2> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint64_t c = 2 * static_cast<std::uint64_t>(i);
    const double u1 = unit_open(mix64(key + (c + 1) * kGolden));
    const double u2 = unit_open(mix64(key + (c + 2) * kGolden));
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phase = 2.0 * pi * u2;
    out.push_back({r * std::cos(phase), r * std::sin(phase)});
  }
  return out;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  return mix64(seed ^ mix64(stream * kGolden + 0x632BE59BD9B4E019ULL));
}

}  // namespace w2b
