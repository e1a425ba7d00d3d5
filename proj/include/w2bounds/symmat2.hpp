#pragma once

#include "w2bounds/geometry.hpp"

namespace w2b {

/// Absolute tolerance on the smallest eigenvalue for a matrix to count as PSD.
inline constexpr double kPsdTolerance = 1e-12;

/// Symmetric 2x2 matrix [[xx, xy], [xy, yy]].
struct SymMat2 {
  double xx = 0.0;
  double xy = 0.0;
  double yy = 0.0;

  static constexpr SymMat2 identity() { return {1.0, 0.0, 1.0}; }
  static constexpr SymMat2 diag(double a, double b) { return {a, 0.0, b}; }

  constexpr double trace() const { return xx + yy; }
  constexpr double det() const { return xx * yy - xy * xy; }

  /// Eigenvalues, smallest first.
  void eigenvalues(double& lo, double& hi) const;
  double min_eigenvalue() const;
  bool is_psd(double tol = kPsdTolerance) const { return min_eigenvalue() >= -tol; }

  friend constexpr bool operator==(const SymMat2&, const SymMat2&) = default;
};

/// General 2x2 matrix, row-major.
struct Mat2 {
  double a11 = 0.0, a12 = 0.0;
  double a21 = 0.0, a22 = 0.0;

  static constexpr Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2 from(const SymMat2& s) { return {s.xx, s.xy, s.xy, s.yy}; }

  constexpr double trace() const { return a11 + a22; }
  constexpr double det() const { return a11 * a22 - a12 * a21; }
  constexpr Mat2 transpose() const { return {a11, a21, a12, a22}; }

  friend constexpr Mat2 operator*(const Mat2& p, const Mat2& q) {
    return {p.a11 * q.a11 + p.a12 * q.a21, p.a11 * q.a12 + p.a12 * q.a22,
            p.a21 * q.a11 + p.a22 * q.a21, p.a21 * q.a12 + p.a22 * q.a22};
  }
  friend constexpr Vec2 operator*(const Mat2& m, Vec2 v) {
    return {m.a11 * v.x + m.a12 * v.y, m.a21 * v.x + m.a22 * v.y};
  }
  friend constexpr Mat2 operator+(const Mat2& p, const Mat2& q) {
    return {p.a11 + q.a11, p.a12 + q.a12, p.a21 + q.a21, p.a22 + q.a22};
  }
  friend constexpr Mat2 operator-(const Mat2& p, const Mat2& q) {
    return {p.a11 - q.a11, p.a12 - q.a12, p.a21 - q.a21, p.a22 - q.a22};
  }
  friend constexpr Mat2 operator*(double s, const Mat2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
  }
  friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

/// Frobenius norm.
double frobenius(const Mat2& m);
inline double frobenius(const SymMat2& m) { return frobenius(Mat2::from(m)); }

/// Congruence M S M^T, symmetric by construction.
SymMat2 congruence(const Mat2& m, const SymMat2& s);

/// Principal square root of a PSD matrix via the closed form
///   R = (M + sqrt(det M) I) / sqrt(tr M + 2 sqrt(det M)).
/// Throws Error(Input) when m is not PSD within kPsdTolerance.
SymMat2 sqrt_psd(const SymMat2& m);

/// Principal square root of a general 2x2 matrix with nonnegative real
/// spectrum (e.g. a product of two PSD matrices), same closed form.
Mat2 sqrt_nonneg_spectrum(const Mat2& m);

/// tr[(PQ)^{1/2}] = sqrt(tr(PQ) + 2 sqrt(det P det Q)).
double trace_sqrt_product(const SymMat2& p, const SymMat2& q);

/// Squared Bures distance tr[P + Q - 2 (PQ)^{1/2}].
double bures_sq(const SymMat2& p, const SymMat2& q);

/// The linear map T = Sx^{-1} (Sx Sy)^{1/2} pushing a centered law with
/// covariance Sx onto covariance Sy at Bures cost. Requires det Sx > 1e-12.
Mat2 optimal_map(const SymMat2& sigma_x, const SymMat2& sigma_y);

}  // namespace w2b
