#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rigid/algebra/lengths.hpp"
#include "rigid/algebra/polynomial.hpp"
#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

class SystemError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Formulation { Sphere, CayleyMenger };

std::string_view to_string(Formulation f);
Formulation formulation_from_string(std::string_view s);

/// Polynomial inequality poly >= 0 (or > 0 when strict).
struct SideCondition {
  Polynomial poly;
  bool strict = false;
  std::string label;
};

struct SideConditionReport {
  bool satisfied = true;
  double min_slack = 0.0;  // smallest relative slack value / sum|terms|
  std::vector<std::string> near_violations;  // slack in (-tau, 0)
  std::vector<std::string> violations;       // slack <= -tau
};

/// Evaluates every condition at real (x, p). Slack is scaled by the sum of absolute term
/// values so the tolerance is independent of the length scale.
SideConditionReport check_side_conditions(const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                          const std::vector<SideCondition>& conditions, double tau = 1e-8);

/// Cayley-Menger sign condition of m points from their pairwise squared distances
/// (symmetric m x m, zero diagonal): (-1)^m det(bordered) >= 0.
SideCondition cayley_menger_condition(const std::vector<std::vector<Polynomial>>& squared, std::string label);

/// Embeddability conditions of a full distance matrix on n points: triangle (and tetrahedron in
/// Space) Cayley-Menger signs over squared distances, or spherical-triangle conditions over
/// cosines on the sphere. Variable k is the k-th pair (a < b) in lexicographic order.
std::vector<SideCondition> distance_side_conditions(int n, Geometry g);

/// Determinant by Laplace expansion; practical up to 7 x 7.
Polynomial determinant(const std::vector<std::vector<Polynomial>>& m);

/// Square embedding system with parameters carrying the length dependence.
struct PolynomialSystem {
  RigidGraph graph;
  Geometry geometry = Geometry::Plane;
  Formulation formulation = Formulation::Sphere;
  std::vector<std::string> variables;
  std::vector<std::string> parameters;
  std::vector<Polynomial> equations;
  std::vector<SideCondition> side_conditions;
  std::vector<int> pinned;                         // pinned simplex, in placement order
  std::vector<std::vector<Polynomial>> coordinates;  // sphere formulation: vertex v-1 -> ambient coords
  std::vector<Edge> cm_variables;                  // cm formulation: edge of each variable
  int embeddings_per_solution = 1;                 // 2 when mirror images share a solution
  std::function<Eigen::VectorXcd(const LengthAssignment&)> parameterize;
  CompiledSystem compiled;

  int size() const { return static_cast<int>(variables.size()); }
  Eigen::VectorXcd parameters_for(const LengthAssignment& lengths) const;
  /// Instantiated equations as text, one per line.
  std::string to_text(const LengthAssignment& lengths) const;
  /// Vertex positions from a solution (sphere formulation only), ambient x n.
  Eigen::MatrixXcd positions(const Eigen::VectorXcd& x, const Eigen::VectorXcd& p) const;
  /// Finishes construction: checks squareness and degrees, compiles.
  void finalize();
};

/// Default pinned simplex: 1-2 (Plane, Sphere) or 1-2-3 (Space) when present, otherwise
/// the lexicographically first edge / triangle.
std::vector<int> default_pinned_simplex(const RigidGraph& g);

/// Sphere/magnitude formulation. Plane: v1=(0,0), v2=(0,l12). Space: v1=0, v2=(0,l12,0),
/// v3=(x3,y3,0) with x3 >= 0 solving the pinned triangle. Sphere: v1=(0,0,1),
/// v2=(0,sin t,cos t), every vertex on the unit sphere.
PolynomialSystem build_sphere_system(const RigidGraph& g, std::optional<std::vector<int>> pinned = {});

/// Same, validated against concrete lengths (rejects degenerate pinned simplices).
PolynomialSystem build_sphere_system(const RigidGraph& g, const LengthAssignment& lengths,
                                     std::optional<std::vector<int>> pinned = {});

}  // namespace rigid
