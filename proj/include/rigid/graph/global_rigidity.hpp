#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

/// Rank of the rigidity matrix of g at configuration `points` (d x n, column v-1 = vertex v).
template <typename Derived>
Eigen::MatrixXd rigidity_matrix(const RigidGraph& g, const Eigen::MatrixBase<Derived>& points) {
  const int d = static_cast<int>(points.rows());
  const int n = g.vertex_count();
  Eigen::MatrixXd r = Eigen::MatrixXd::Zero(g.edge_count(), d * n);
  int row = 0;
  for (const auto& e : g.edges()) {
    const Eigen::VectorXd diff = points.col(e.a - 1) - points.col(e.b - 1);
    r.block(row, d * (e.a - 1), 1, d) = diff.transpose();
    r.block(row, d * (e.b - 1), 1, d) = -diff.transpose();
    ++row;
  }
  return r;
}

/// Numerical rank with singular values below rel_tol * sigma_max treated as zero.
int numerical_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

struct GlobalRigidityTrial {
  int rigidity_rank = 0;
  int expected_rigidity_rank = 0;
  int stress_rank = 0;
  int expected_stress_rank = 0;
  bool passed = false;
};

/// One random-configuration trial of the rigidity-rank + stress-rank test.
GlobalRigidityTrial global_rigidity_trial(const RigidGraph& g, int d, std::uint64_t seed);

/// Generic global rigidity in R^d (one-sided Monte Carlo): true iff one of `trials`
/// independent configurations derived from `seed` passes both rank tests.
bool is_globally_rigid_generic(const RigidGraph& g, int d, std::uint64_t seed = 1, int trials = 3);

/// G plus exactly n-(d+1) non-edges forming a generically globally rigid graph.
/// Throws GraphError on search exhaustion.
RigidGraph extend_to_globally_rigid(const RigidGraph& g, int d, std::uint64_t seed = 1);

}  // namespace rigid
