#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "rigid/algebra/system.hpp"
#include "rigid/sampler/coupler.hpp"

namespace rigid {

struct CurveOptions {
  int seeds = 8;                  // lengths l_uc at which real seed embeddings are sought
  double max_step = 0.002;        // relative to 1 + |x|
  double min_step = 1e-10;
  std::optional<int> known_count; // complex embedding count of G, if known
  std::uint64_t seed = 1;
};

struct CurveComponent {
  std::vector<Eigen::VectorXd> states;  // real solutions of the system without uc
  std::vector<Eigen::Vector3d> points;  // position of c
  bool closed = false;
  bool truncated = false;               // continuation stalled or ran out of steps
};

/// Coupler curve of c: positions of c over the real configurations of G - uc with the
/// triangle v, u, w pinned (v = 0, u on the y-axis, w in the xy-plane).
struct CouplerCurve {
  CouplerSubgraph subgraph;
  std::shared_ptr<const PolynomialSystem> system;  // system of G, same frame
  int removed_equation = -1;
  Eigen::VectorXd parameters;
  std::vector<CurveComponent> components;
};

/// Traces every component reached from real embeddings of G at the given lengths and at
/// further values of l_uc, using at most `steps` continuation steps per direction.
CouplerCurve trace_coupler_curve(const RigidGraph& g, const LengthAssignment& lambda, const CouplerSubgraph& sg,
                                 int steps, const CurveOptions& opts = {});

/// Points where |c - u| equals l_uc, refined to embeddings of G; returns positions of c.
std::vector<Eigen::Vector3d> curve_intersections(const CouplerCurve& curve, const LengthAssignment& lambda);

struct CurveMatch {
  double hausdorff = 0.0;  // over matched component pairs
  int matched = 0;
  int unmatched = 0;       // components of either curve without a partner
};

/// Pairs components whose points lie on each other within `match_tol` and measures the
/// Hausdorff distance between the positions of c, each nearest point being corrected onto
/// the other curve. Both curves must come from the same subgraph.
CurveMatch match_curves(const CouplerCurve& a, const CouplerCurve& b, double match_tol = 1e-4);

/// CSV with header "x,y,z,component".
void write_curve_csv(std::ostream& os, const CouplerCurve& curve);

}  // namespace rigid
