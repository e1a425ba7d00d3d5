#include "w2bounds/wassmap.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "w2bounds/error.hpp"
#include "w2bounds/ot.hpp"

namespace w2b {

DistanceMatrix distance_matrix(std::size_t n,
                               const std::function<double(std::size_t, std::size_t)>& f) {
  if (n < 2) throw_input("distance_matrix: need at least two items");
  DistanceMatrix d{n, std::vector<double>(n * n, 0.0)};
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::max(0.0, f(i, j));
      d(i, j) = v;
      d(j, i) = v;
    }
  }
  return d;
}

DistanceMatrix distance_matrix(const std::vector<DiscreteMeasure>& measures) {
  return distance_matrix(measures.size(), [&](std::size_t i, std::size_t j) {
    return emd(measures[i], measures[j]).cost;
  });
}

Embedding mds(const DistanceMatrix& d, std::size_t k) {
  const std::size_t n = d.n;
  if (k < 1 || k > n) throw_input("mds: embedding dimension must satisfy 1 <= k <= n");
  const auto ni = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd dm(ni, ni);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      dm(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = d(i, j);
    }
  }
  // B = -1/2 J D J, J = I - 11^T/n
  const Eigen::VectorXd row_mean = dm.rowwise().mean();
  const Eigen::RowVectorXd col_mean = dm.colwise().mean();
  const double grand = dm.mean();
  Eigen::MatrixXd b = dm;
  b.colwise() -= row_mean;
  b.rowwise() -= col_mean;
  b.array() += grand;
  b *= -0.5;
  b = 0.5 * (b + b.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(b);
  if (solver.info() != Eigen::Success) throw_numerical("mds: eigensolver did not converge");
  const Eigen::VectorXd& evals = solver.eigenvalues();  // ascending
  const Eigen::MatrixXd& evecs = solver.eigenvectors();

  const double scale = std::max(1.0, evals.cwiseAbs().maxCoeff());
  Embedding out;
  out.n = n;
  out.k = k;
  out.coords.assign(n * k, 0.0);
  for (Eigen::Index i = 0; i < ni; ++i) {
    if (evals(i) < -1e-12 * scale) ++out.negative_eigenvalues;
  }
  for (std::size_t c = 0; c < k; ++c) {
    const Eigen::Index col = ni - 1 - static_cast<Eigen::Index>(c);
    const double lambda = evals(col);
    out.eigenvalues.push_back(lambda);
    const double root = std::sqrt(std::max(lambda, 0.0));
    Eigen::Index arg = 0;
    evecs.col(col).cwiseAbs().maxCoeff(&arg);
    const double sign = evecs(arg, col) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      out.coords[i * k + c] = sign * root * evecs(static_cast<Eigen::Index>(i), col);
    }
  }
  return out;
}

CircleFit circle_fit(const std::vector<Vec2>& points) {
  if (points.size() < 3) throw_input("circle_fit: need at least three points");
  // Least squares for x^2 + y^2 + D x + E y + F = 0, after centring and
  // scaling the data for conditioning.
  Vec2 centroid{};
  for (const Vec2& p : points) centroid = centroid + p;
  centroid = (1.0 / static_cast<double>(points.size())) * centroid;
  double spread = 0.0;
  for (const Vec2& p : points) spread = std::max(spread, norm(p - centroid));
  if (spread <= 0.0) throw_numerical("circle_fit: all points coincide");

  const auto rows = static_cast<Eigen::Index>(points.size());
  Eigen::MatrixXd a(rows, 3);
  Eigen::VectorXd rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const Vec2 q = (1.0 / spread) * (points[static_cast<std::size_t>(i)] - centroid);
    a(i, 0) = q.x;
    a(i, 1) = q.y;
    a(i, 2) = 1.0;
    rhs(i) = -(q.x * q.x + q.y * q.y);
  }
  const Eigen::Matrix3d normal = a.transpose() * a;
  const Eigen::Vector3d ev = Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d>(normal, Eigen::EigenvaluesOnly).eigenvalues();
  if (ev(0) <= 1e-12 * ev(2)) throw_numerical("circle_fit: degenerate (collinear) points");
  const Eigen::Vector3d sol = normal.ldlt().solve(a.transpose() * rhs);

  const Vec2 c_scaled{-0.5 * sol(0), -0.5 * sol(1)};
  const double r_sq = norm_sq(c_scaled) - sol(2);
  if (!(r_sq > 0.0)) throw_numerical("circle_fit: no real circle fits the points");

  CircleFit fit;
  fit.center = centroid + spread * c_scaled;
  fit.radius = spread * std::sqrt(r_sq);
  double acc = 0.0;
  for (const Vec2& p : points) {
    const double rel = (norm(p - fit.center) - fit.radius) / fit.radius;
    acc += rel * rel;
  }
  fit.rms_relative_residual = std::sqrt(acc / static_cast<double>(points.size()));
  return fit;
}

}  // namespace w2b
