#pragma once

#include <cstdint>
#include <vector>

#include "rigid/algebra/system.hpp"

namespace rigid {

/// Square minor of the bordered matrix. Index 0 is the border, 1..n the vertices and, on the
/// sphere, n+1 the centre.
struct CMMinor {
  std::vector<int> rows;
  std::vector<int> cols;
};

struct CMSubsystem {
  RigidGraph base;
  std::vector<Edge> missing;    // non-edges, ascending
  std::vector<Edge> variables;  // chosen non-edges, n-(d+1) of them
  std::vector<CMMinor> minors;  // one per variable, each of order rank_dimension()+3
  std::vector<SideCondition> inequalities;

  bool has_centre() const { return base.geometry() == Geometry::Sphere; }
  /// Dimension of the point set whose rank condition is imposed (3 on the sphere, via the centre).
  int rank_dimension() const { return base.geometry() == Geometry::Plane ? 2 : 3; }
};

/// Variable subsets S of the non-edges with |S| = n-(d+1) such that G + S is generically
/// globally rigid and |S| bordered minors of order d+3 (rank dimension on the sphere) built
/// from known lengths and S have a nonsingular Jacobian at a random realization.
/// Ordered by S, lexicographically.
std::vector<CMSubsystem> find_cm_square_subsystems(const RigidGraph& g, int d, std::uint64_t seed = 1);

/// Subsystem on the given variables, or throws SystemError if they do not admit one.
CMSubsystem cm_subsystem_for(const RigidGraph& g, const std::vector<Edge>& variables, std::uint64_t seed = 1);

/// Minors as equations. Plane/Space: variables are squared distances x_ij, parameters the
/// squared edge lengths. Sphere: variables and parameters are cosines c = 1 - l^2/2.
/// Each solution stands for an embedding and its mirror image.
PolynomialSystem build_cm_system(const CMSubsystem& sub);

/// Same, validated against concrete lengths.
PolynomialSystem build_cm_system(const CMSubsystem& sub, const LengthAssignment& lengths);

}  // namespace rigid
