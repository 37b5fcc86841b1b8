#include "rigid/bounds/gluing.hpp"

#include <cmath>

namespace rigid {

void GluingSpec::validate() const {
  if (nG == nH) throw BoundsError("nG must differ from nH");
  if (!(nG > nH && nH >= 1)) throw BoundsError("need nG > nH >= 1");
  if (!(rH >= 1 && rG >= rH)) throw BoundsError("need rG >= rH >= 1");
  if (n < nH) throw BoundsError("need n >= nH");
}

GluedBound glued_lower_bound(const GluingSpec& s) {
  s.validate();
  const int step = s.nG - s.nH;
  const int copies = (s.n - s.nH) / step;
  const int rest = (s.n - s.nH) % step;
  BigRational ratio(s.rG, s.rH);
  BigRational power(1);
  for (int k = 0; k < copies; ++k) power *= ratio;
  GluedBound b;
  b.exact = BigRational(BigInt(1) << rest) * BigRational(s.rH) * power;
  const BigInt num = boost::multiprecision::numerator(b.exact), den = boost::multiprecision::denominator(b.exact);
  b.value = num / den;
  b.floored = den != 1;
  return b;
}

double asymptotic_base(const GluingSpec& s) {
  s.validate();
  const double ratio = BigRational(s.rG, s.rH).convert_to<double>();
  return std::pow(ratio, 1.0 / (s.nG - s.nH));
}

GluingSpec gluing_preset(const std::string& name) {
  // Triangles glue with r = 2 in the plane and on the sphere, r = 1 in space.
  if (name == "L880") return {10, 3, 860, 2, 10, Geometry::Plane};
  if (name == "L24S") return {6, 3, 32, 2, 6, Geometry::Sphere};
  if (name == "G160") return {8, 3, 132, 1, 8, Geometry::Space};
  if (name == "G48") return {7, 3, 48, 1, 7, Geometry::Space};
  throw BoundsError("unknown preset '" + name + "' (L880, L24S, G160, G48)");
}

std::vector<std::string> gluing_preset_names() { return {"L880", "L24S", "G160", "G48"}; }

}  // namespace rigid
