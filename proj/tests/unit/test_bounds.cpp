#include <doctest.h>

#include <cmath>

#include "rigid/bounds/gluing.hpp"

using namespace rigid;

TEST_CASE("gluing bound examples") {
  CHECK(glued_lower_bound(gluing_preset("L880")).value == 860);
  CHECK(glued_lower_bound(gluing_preset("G160")).value == 132);
  GluingSpec l24 = gluing_preset("L24S");
  l24.n = 9;
  CHECK(glued_lower_bound(l24).value == 512);
  GluingSpec g160 = gluing_preset("G160");
  g160.n = 13;
  CHECK(glued_lower_bound(g160).value == 17424);
  g160.n = 15;  // 2^2 * 132^2
  CHECK(glued_lower_bound(g160).value == 4 * 17424);
}

TEST_CASE("gluing bound at n = nG is rG") {
  for (const auto& name : gluing_preset_names()) {
    const GluingSpec s = gluing_preset(name);
    CHECK(glued_lower_bound(s).value == s.rG);
    CHECK_FALSE(glued_lower_bound(s).floored);
  }
}

TEST_CASE("non-integral ratios are floored and flagged") {
  GluingSpec s{7, 3, 5, 2, 11, Geometry::Plane};  // 2 * (5/2)^2 = 12.5
  const GluedBound b = glued_lower_bound(s);
  CHECK(b.floored);
  CHECK(b.value == 12);
  CHECK(b.exact == BigRational(25, 2));
}

TEST_CASE("asymptotic bases") {
  CHECK(asymptotic_base(gluing_preset("L880")) == doctest::Approx(std::pow(430.0, 1.0 / 7)).epsilon(1e-14));
  CHECK(std::abs(asymptotic_base(gluing_preset("L880")) - 2.3779) < 1e-4);
  CHECK(std::abs(asymptotic_base(gluing_preset("L24S")) - 2.51984) < 1e-5);
  CHECK(std::abs(asymptotic_base(gluing_preset("G160")) - 2.6553) < 1e-4);
  GluingSpec s = gluing_preset("G160");
  const double b0 = asymptotic_base(s);
  s.rG += 1;
  CHECK(asymptotic_base(s) > b0);
}

TEST_CASE("invalid gluing specs") {
  CHECK_THROWS_AS(glued_lower_bound({3, 3, 2, 2, 5, Geometry::Plane}), BoundsError);
  CHECK_THROWS_AS(asymptotic_base({3, 3, 2, 2, 5, Geometry::Plane}), BoundsError);
  CHECK_THROWS_AS(glued_lower_bound({6, 3, 1, 2, 6, Geometry::Plane}), BoundsError);
  CHECK_THROWS_AS(glued_lower_bound({6, 3, 32, 2, 2, Geometry::Plane}), BoundsError);
  CHECK_THROWS_AS(gluing_preset("nope"), BoundsError);
}
