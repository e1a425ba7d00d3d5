#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "w2bounds/geometry.hpp"
#include "w2bounds/measures.hpp"

namespace w2b {

/// Symmetric matrix of squared distances with zero diagonal, row-major.
struct DistanceMatrix {
  std::size_t n = 0;
  std::vector<double> entries;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * n + j]; }
  double& operator()(std::size_t i, std::size_t j) { return entries[i * n + j]; }
};

/// D_ij = squared W2 between measures i and j (exact transport). Only the
/// upper triangle is solved.
DistanceMatrix distance_matrix(const std::vector<DiscreteMeasure>& measures);

/// D_ij = f(i, j) for i < j, mirrored. f must return squared distances.
DistanceMatrix distance_matrix(std::size_t n,
                               const std::function<double(std::size_t, std::size_t)>& f);

struct Embedding {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> coords;       // n x k, row-major
  std::vector<double> eigenvalues;  // top k of the double-centred matrix, descending
  std::size_t negative_eigenvalues = 0;

  double coord(std::size_t i, std::size_t d) const { return coords[i * k + d]; }
};

/// Classical MDS: B = -1/2 J D J, coordinates are top-k eigenvectors scaled
/// by sqrt(max(eigenvalue, 0)). Each column is signed so that its entry of
/// largest magnitude is nonnegative.
Embedding mds(const DistanceMatrix& d, std::size_t k);

struct CircleFit {
  Vec2 center{};
  double radius = 0.0;
  double rms_relative_residual = 0.0;
};

/// Algebraic (Kasa) least-squares circle. Throws Error(Numerical) on
/// collinear or otherwise degenerate input, Error(Input) for < 3 points.
CircleFit circle_fit(const std::vector<Vec2>& points);

}  // namespace w2b
