#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rigid/algebra/lengths.hpp"
#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

class SamplerError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// u has neighbours v, w, p, c; pv, vw and cw are edges. Moving u along the line vu while
/// keeping v, w and p fixed leaves the coupler curve of c unchanged.
struct CouplerSubgraph {
  int u = 0, v = 0, w = 0, p = 0, c = 0;
  bool relaxed = false;  // deg(u) > 4

  friend bool operator==(const CouplerSubgraph& a, const CouplerSubgraph& b) {
    return a.u == b.u && a.v == b.v && a.w == b.w && a.p == b.p && a.c == b.c;
  }
};

std::string to_string(const CouplerSubgraph& sg);  // "(u,v,w,p,c)"
CouplerSubgraph coupler_from_string(const std::string& s);

/// Tuples in lexicographic order. w and p play symmetric roles, so only w < p is listed
/// when both orders qualify. With `relax`, u may have further neighbours.
std::vector<CouplerSubgraph> find_coupler_subgraphs(const RigidGraph& g, bool relax = false);

/// Throws SamplerError unless sg satisfies the invariants in g.
void validate_coupler(const RigidGraph& g, const CouplerSubgraph& sg);

/// Frame v = 0, u = (0, l_uv, 0), w = (x_w, y_w, 0).
struct CouplerFrame {
  double x_w = 0.0;   // distance of w from the line vu
  double y_w = 0.0;   // foot of that altitude
  double y_p = 0.0;   // foot of the altitude of p
  double z_p = 0.0;   // distance of p from the line vu
};

CouplerFrame coupler_frame(const LengthAssignment& lambda, const CouplerSubgraph& sg);

/// u moved to (0, t, 0): l_uv = t and l_uw, l_up follow.
LengthAssignment lambda_family(const LengthAssignment& lambda, const CouplerSubgraph& sg, double t);

/// phi is the angle at w between the altitude onto vu and wu; theta the angle at w between
/// wu and wc. Throws SamplerError if u would leave the positive axis.
LengthAssignment lengths_from_angles(const LengthAssignment& lambda, const CouplerSubgraph& sg, double phi,
                                     double theta);

/// Inverse of lengths_from_angles at the current lengths.
std::pair<double, double> angles_of(const LengthAssignment& lambda, const CouplerSubgraph& sg);

}  // namespace rigid
