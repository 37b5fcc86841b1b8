#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

class BoundsError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Copies of G glued along a common rigid subgraph H.
struct GluingSpec {
  int nG = 0;       // |V_G|
  int nH = 0;       // |V_H|
  BigInt rG = 0;    // real embeddings of G
  BigInt rH = 0;    // real embeddings of H
  int n = 0;        // vertices of the glued graph
  Geometry geometry = Geometry::Plane;

  void validate() const;  // throws BoundsError
};

struct GluedBound {
  BigRational exact;
  BigInt value;         // exact if integral, else floored
  bool floored = false;
};

/// 2^((n - nH) mod (nG - nH)) * rH * (rG / rH)^floor((n - nH) / (nG - nH)).
GluedBound glued_lower_bound(const GluingSpec& spec);

/// (rG / rH)^(1 / (nG - nH)).
double asymptotic_base(const GluingSpec& spec);

/// Named inputs: L880, L24S, G160, G48. n defaults to nG.
GluingSpec gluing_preset(const std::string& name);
std::vector<std::string> gluing_preset_names();

}  // namespace rigid
