#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "w2bounds/measures.hpp"

namespace w2b {

/// Dense row-major cost matrix.
struct CostMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> values;

  double operator()(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
  double& operator()(std::size_t i, std::size_t j) { return values[i * cols + j]; }
};

/// Squared Euclidean distances between support points.
CostMatrix cost_matrix(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

struct PlanEntry {
  std::size_t source = 0;
  std::size_t target = 0;
  double mass = 0.0;
};

/// Sparse coupling, entries sorted by (source, target).
struct TransportPlan {
  std::size_t source_size = 0;
  std::size_t target_size = 0;
  std::vector<PlanEntry> entries;

  std::vector<double> row_sums() const;
  std::vector<double> column_sums() const;
};

struct EmdResult {
  TransportPlan plan;
  double cost = 0.0;
  /// Dual certificate: u_i + v_j <= C_ij, with equality on the plan support.
  std::vector<double> source_potential;
  std::vector<double> target_potential;
  std::size_t iterations = 0;
};

/// Exact transport between weight vectors a and b under an arbitrary cost
/// matrix, solved with a primal network simplex on the complete bipartite
/// graph. |sum a - sum b| > 1e-9 is rejected as unbalanced.
EmdResult emd(std::span<const double> a, std::span<const double> b, const CostMatrix& cost);

/// Exact squared-Euclidean transport between two planar measures.
EmdResult emd(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

/// sqrt of the optimal squared-Euclidean cost.
double w2(const DiscreteMeasure& mu, const DiscreteMeasure& nu);

}  // namespace w2b
