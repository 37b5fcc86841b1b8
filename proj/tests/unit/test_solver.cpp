#include <doctest.h>

#include <memory>

#include "rigid/algebra/cayley_menger.hpp"
#include "rigid/solver/monodromy.hpp"

using namespace rigid;

namespace {

RigidGraph make(int n, std::vector<std::pair<int, int>> es, Geometry g) {
  std::vector<Edge> edges;
  for (auto [a, b] : es) edges.emplace_back(a, b);
  return RigidGraph("g", g, n, edges);
}

RigidGraph desargues(Geometry g) {
  return make(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 6}, {4, 6}, {2, 5}, {5, 6}, {3, 5}}, g);
}

}  // namespace

TEST_CASE("identity homotopy returns the start") {
  auto sys = build_sphere_system(desargues(Geometry::Plane));
  auto r = seed_realization(sys, 1);
  auto p = sys.parameterize(r.lengths);
  auto s = track_path(sys, p, p, r.solution.x, {0.6, 0.8});
  CHECK(max_norm_distance(s.x, r.solution.x) < 1e-10);
  CHECK(s.cls == SolutionClass::Real);
}

TEST_CASE("monodromy on the desargues graph") {
  auto sys = std::make_shared<PolynomialSystem>(build_sphere_system(desargues(Geometry::Plane)));
  MonodromyOptions o;
  o.seed = 2;
  auto set = monodromy_solve(sys, o);
  CHECK(set.size() == 24);
  CHECK(set.evidence.kind == CompletenessEvidence::Kind::Stable);
}

TEST_CASE("four-vertex planar graph: conjugate pairs past the triangle inequality") {
  auto g = make(4, {{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}}, Geometry::Plane);
  auto sys = std::make_shared<PolynomialSystem>(build_sphere_system(g));
  auto set = monodromy_solve(sys, {});
  REQUIRE(set.size() == 4);
  std::map<Edge, double> l{{Edge(1, 2), 1.0}, {Edge(1, 3), 1.0}, {Edge(2, 3), 1.0}, {Edge(1, 4), 1.0},
                           {Edge(2, 4), 1.0}};
  auto real = parameter_homotopy(set, LengthAssignment(Geometry::Plane, l));
  CHECK(real.size() == 4);
  CHECK(count_real(real).real == 4);
  l[Edge(2, 3)] = 2.5;  // triangle 123 cannot close
  auto cpx = parameter_homotopy(set, LengthAssignment(Geometry::Plane, l));
  CHECK(cpx.size() == 4);
  CHECK(count_real(cpx).real == 0);
  for (const auto& s : cpx.solutions) CHECK(find_solution(cpx.solutions, s.x.conjugate()) >= 0);
}

TEST_CASE("cayley-menger and sphere counts agree on G_48") {
  auto g = make(7,
                {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 6}, {2, 7}, {3, 4}, {3, 7}, {4, 5}, {4, 7},
                 {5, 6}, {5, 7}, {6, 7}},
                Geometry::Space);
  auto sphere = monodromy_solve(std::make_shared<PolynomialSystem>(build_sphere_system(g)), {});
  auto sub = cm_subsystem_for(g, {Edge(2, 4), Edge(4, 6), Edge(1, 7)});
  auto cm_sys = std::make_shared<PolynomialSystem>(build_cm_system(sub));
  auto cm = monodromy_solve(cm_sys, {});
  CHECK(sphere.size() == 48);
  CHECK(cm.size() * cm_sys->embeddings_per_solution == sphere.size());

  // same generic lengths: every real sphere solution passes the distance conditions
  REQUIRE(cm.lengths.has_value());
  auto real = parameter_homotopy(sphere, *cm.lengths);
  auto rc = count_real(real);
  auto tally = side_condition_tally(real, rc.real_indices);
  CHECK(tally.violated == 0);
  CHECK(tally.satisfied + tally.near == rc.real);
}
