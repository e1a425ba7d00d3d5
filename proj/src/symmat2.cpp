#include "w2bounds/symmat2.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "w2bounds/error.hpp"

namespace w2b {

namespace {

void require_psd(const SymMat2& m, const char* who) {
  if (!std::isfinite(m.xx) || !std::isfinite(m.xy) || !std::isfinite(m.yy)) {
    throw_input(std::string(who) + ": non-finite matrix entry");
  }
  if (!m.is_psd()) {
    std::ostringstream os;
    os << who << ": matrix is not positive semidefinite (min eigenvalue "
       << m.min_eigenvalue() << ")";
    throw_input(os.str());
  }
}

// Rounding can push the determinant of a PSD matrix slightly negative.
double clamped_det(double det) { return det < 0.0 ? 0.0 : det; }

}  // namespace

void SymMat2::eigenvalues(double& lo, double& hi) const {
  const double half_tr = 0.5 * (xx + yy);
  const double r = std::hypot(0.5 * (xx - yy), xy);
  lo = half_tr - r;
  hi = half_tr + r;
}

double SymMat2::min_eigenvalue() const {
  double lo = 0.0, hi = 0.0;
  eigenvalues(lo, hi);
  return lo;
}

double frobenius(const Mat2& m) {
  return std::sqrt(m.a11 * m.a11 + m.a12 * m.a12 + m.a21 * m.a21 + m.a22 * m.a22);
}

SymMat2 congruence(const Mat2& m, const SymMat2& s) {
  const Mat2 r = m * Mat2::from(s) * m.transpose();
  return {r.a11, 0.5 * (r.a12 + r.a21), r.a22};
}

SymMat2 sqrt_psd(const SymMat2& m) {
  require_psd(m, "sqrt_psd");
  const double s = std::sqrt(clamped_det(m.det()));
  const double denom_sq = m.trace() + 2.0 * s;
  if (denom_sq <= 1e-15) return {};
  const double inv = 1.0 / std::sqrt(denom_sq);
  return {(m.xx + s) * inv, m.xy * inv, (m.yy + s) * inv};
}

Mat2 sqrt_nonneg_spectrum(const Mat2& m) {
  const double s = std::sqrt(clamped_det(m.det()));
  const double denom_sq = m.trace() + 2.0 * s;
  if (denom_sq <= 1e-15) return {};
  const double inv = 1.0 / std::sqrt(denom_sq);
  return {(m.a11 + s) * inv, m.a12 * inv, m.a21 * inv, (m.a22 + s) * inv};
}

double trace_sqrt_product(const SymMat2& p, const SymMat2& q) {
  require_psd(p, "trace_sqrt_product");
  require_psd(q, "trace_sqrt_product");
  // tr(PQ) for symmetric P, Q is the Frobenius inner product.
  const double tr_pq = p.xx * q.xx + 2.0 * p.xy * q.xy + p.yy * q.yy;
  const double root_det = std::sqrt(clamped_det(p.det()) * clamped_det(q.det()));
  return std::sqrt(std::max(0.0, tr_pq + 2.0 * root_det));
}

double bures_sq(const SymMat2& p, const SymMat2& q) {
  return p.trace() + q.trace() - 2.0 * trace_sqrt_product(p, q);
}

Mat2 optimal_map(const SymMat2& sigma_x, const SymMat2& sigma_y) {
  require_psd(sigma_x, "optimal_map");
  require_psd(sigma_y, "optimal_map");
  const double det_x = sigma_x.det();
  if (det_x <= 1e-12) {
    throw_input("optimal_map: source covariance is singular");
  }
  const Mat2 inv_x{sigma_x.yy / det_x, -sigma_x.xy / det_x, -sigma_x.xy / det_x,
                   sigma_x.xx / det_x};
  const Mat2 root = sqrt_nonneg_spectrum(Mat2::from(sigma_x) * Mat2::from(sigma_y));
  return inv_x * root;
}

}  // namespace w2b
