#pragma once

#include <map>
#include <string>

#include <Eigen/Dense>

#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

/// Positive edge lengths keyed by edge. On the sphere the values are chord lengths of the
/// unit sphere, so they must lie in (0, 2).
class LengthAssignment {
 public:
  LengthAssignment() = default;
  LengthAssignment(Geometry geometry, std::map<Edge, double> values);

  Geometry geometry() const { return geometry_; }
  const std::map<Edge, double>& values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double at(const Edge& e) const;
  double at(int i, int j) const { return at(Edge(i, j)); }
  bool contains(const Edge& e) const { return values_.count(e) > 0; }
  void set(const Edge& e, double value);

  LengthAssignment scaled(double s) const;

  /// Throws GraphError unless keys are exactly g's edges and values are admissible.
  void validate_for(const RigidGraph& g) const;

  friend bool operator==(const LengthAssignment&, const LengthAssignment&) = default;

 private:
  Geometry geometry_ = Geometry::Plane;
  std::map<Edge, double> values_;
};

/// Lengths induced by a configuration (column v-1 holds vertex v).
LengthAssignment induced_lengths(const RigidGraph& g, const Eigen::MatrixXd& points, Geometry geometry);

/// Max-norm distance between two assignments over the same keys.
double max_abs_difference(const LengthAssignment& x, const LengthAssignment& y);

}  // namespace rigid
