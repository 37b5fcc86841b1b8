#include "rigid/algebra/lengths.hpp"

#include <cmath>

namespace rigid {

LengthAssignment::LengthAssignment(Geometry geometry, std::map<Edge, double> values)
    : geometry_(geometry), values_(std::move(values)) {
  for (const auto& [e, v] : values_) {
    if (!(v > 0.0) || !std::isfinite(v)) throw GraphError("length of " + edge_key(e) + " must be positive");
    if (geometry_ == Geometry::Sphere && !(v < 2.0))
      throw GraphError("spherical chord " + edge_key(e) + " must be < 2");
  }
}

double LengthAssignment::at(const Edge& e) const {
  auto it = values_.find(e);
  if (it == values_.end()) throw GraphError("no length for edge " + edge_key(e));
  return it->second;
}

void LengthAssignment::set(const Edge& e, double value) {
  if (!(value > 0.0) || !std::isfinite(value)) throw GraphError("length of " + edge_key(e) + " must be positive");
  values_[e] = value;
}

LengthAssignment LengthAssignment::scaled(double s) const {
  auto v = values_;
  for (auto& [e, x] : v) x *= s;
  return LengthAssignment(geometry_, std::move(v));
}

void LengthAssignment::validate_for(const RigidGraph& g) const {
  if (values_.size() != static_cast<std::size_t>(g.edge_count()))
    throw GraphError("length assignment does not match the edges of '" + g.name() + "'");
  for (const auto& e : g.edges())
    if (!contains(e)) throw GraphError("missing length for edge " + edge_key(e));
}

LengthAssignment induced_lengths(const RigidGraph& g, const Eigen::MatrixXd& points, Geometry geometry) {
  std::map<Edge, double> v;
  for (const auto& e : g.edges()) v[e] = (points.col(e.a - 1) - points.col(e.b - 1)).norm();
  return LengthAssignment(geometry, std::move(v));
}

double max_abs_difference(const LengthAssignment& x, const LengthAssignment& y) {
  double m = 0.0;
  for (const auto& [e, v] : x.values()) m = std::max(m, std::abs(v - y.at(e)));
  return m;
}

}  // namespace rigid
