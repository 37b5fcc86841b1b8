#include <doctest.h>

#include <algorithm>
#include <random>

#include "rigid/algebra/cayley_menger.hpp"
#include "rigid/algebra/system.hpp"
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

RigidGraph g48() {
  return make(7,
              {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 6}, {2, 7}, {3, 4}, {3, 7}, {4, 5}, {4, 7}, {5, 6},
               {5, 7}, {6, 7}},
              Geometry::Space);
}

RigidGraph l48h2(Geometry g) {
  return make(7, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 6}, {2, 5}, {5, 6}, {3, 5}, {1, 7}, {4, 7}, {6, 7}}, g);
}

bool has_variables(const std::vector<CMSubsystem>& subs, std::vector<Edge> vars) {
  std::sort(vars.begin(), vars.end());
  for (const auto& s : subs)
    if (s.variables == vars) return true;
  return false;
}

// Independent check: squared distances of random points, bordered matrix, numeric minors.
void check_minors_vanish(const CMSubsystem& sub, std::uint64_t seed) {
  const RigidGraph& g = sub.base;
  const int n = g.vertex_count();
  const bool sphere = g.geometry() == Geometry::Sphere;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd pts(ambient_dimension(g.geometry()), n + (sphere ? 1 : 0));
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = normal(rng);
  if (sphere) {
    for (int v = 0; v < n; ++v) pts.col(v).normalize();
    pts.col(n).setZero();
  }
  const int m = static_cast<int>(pts.cols());
  Eigen::MatrixXd cm = Eigen::MatrixXd::Ones(m + 1, m + 1);
  cm(0, 0) = 0.0;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) cm(i + 1, j + 1) = (pts.col(i) - pts.col(j)).squaredNorm();
  auto sys = build_cm_system(sub);
  Eigen::VectorXd x(sys.size()), p(static_cast<Eigen::Index>(g.edge_count()));
  for (int k = 0; k < sys.size(); ++k) {
    const Edge e = sub.variables[k];
    const double d2 = cm(e.a, e.b);
    x[k] = sphere ? 1.0 - d2 / 2.0 : d2;
  }
  for (int j = 0; j < g.edge_count(); ++j) {
    const Edge e = g.edges()[j];
    const double d2 = cm(e.a, e.b);
    p[j] = sphere ? 1.0 - d2 / 2.0 : d2;
  }
  for (std::size_t k = 0; k < sub.minors.size(); ++k) {
    const auto& mi = sub.minors[k];
    Eigen::MatrixXd a(mi.rows.size(), mi.cols.size());
    for (std::size_t r = 0; r < mi.rows.size(); ++r)
      for (std::size_t c = 0; c < mi.cols.size(); ++c) a(r, c) = cm(mi.rows[r], mi.cols[c]);
    CHECK(std::abs(a.determinant()) < 1e-9);
    CHECK(std::abs(sys.equations[k].evaluate<double>(x, p)) < 1e-9);
  }
  // nonsingular Jacobian at the realization, by finite differences of the built system
  Eigen::MatrixXd jac(sys.size(), sys.size());
  for (int v = 0; v < sys.size(); ++v) {
    Eigen::VectorXd xp = x, xm = x;
    xp[v] += 1e-5;
    xm[v] -= 1e-5;
    for (int k = 0; k < sys.size(); ++k)
      jac(k, v) = (sys.equations[k].evaluate<double>(xp, p) - sys.equations[k].evaluate<double>(xm, p)) / 2e-5;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac);
  CHECK(svd.singularValues().minCoeff() > 1e-8 * svd.singularValues().maxCoeff());
  // the realization satisfies every attached inequality
  CHECK(check_side_conditions(x, p, sys.side_conditions).satisfied);
}

}  // namespace

TEST_CASE("polynomial arithmetic") {
  auto x = Polynomial::variable(0), y = Polynomial::variable(1), a = Polynomial::parameter(0);
  auto p = (x + y) * (x - y) - a * x;
  CHECK(p.terms().size() == 3);
  CHECK(p.variable_degree() == 2);
  Eigen::VectorXd xv(2), pv(1);
  xv << 3.0, 2.0;
  pv << 0.5;
  CHECK(p.evaluate<double>(xv, pv) == doctest::Approx(9.0 - 4.0 - 1.5));
  CHECK((x - x).is_zero());

  CompiledSystem cs({p, x * y * y}, 2, 1);
  Eigen::VectorXd f;
  Eigen::MatrixXd jx, jp;
  cs.evaluate<double>(xv, pv, f, jx, &jp);
  CHECK(f[0] == doctest::Approx(3.5));
  CHECK(f[1] == doctest::Approx(12.0));
  CHECK(jx(0, 0) == doctest::Approx(2 * 3.0 - 0.5));
  CHECK(jx(0, 1) == doctest::Approx(-4.0));
  CHECK(jx(1, 1) == doctest::Approx(12.0));
  CHECK(jp(0, 0) == doctest::Approx(-3.0));
}

TEST_CASE("symbolic determinant agrees with numeric") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd m(5, 5);
  std::vector<std::vector<Polynomial>> pm(5, std::vector<Polynomial>(5));
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) {
      m(i, j) = normal(rng);
      pm[i][j] = Polynomial(m(i, j));
    }
  Polynomial d = determinant(pm);
  Eigen::VectorXd none;
  CHECK(d.evaluate<double>(none, none) == doctest::Approx(m.determinant()).epsilon(1e-12));
}

TEST_CASE("triangle side conditions") {
  Polynomial one(1.0), three(9.0), z(0.0);
  auto tri = [](double a, double b, double c) {
    std::vector<std::vector<Polynomial>> sq = {
        {Polynomial(), Polynomial(a * a), Polynomial(b * b)},
        {Polynomial(a * a), Polynomial(), Polynomial(c * c)},
        {Polynomial(b * b), Polynomial(c * c), Polynomial()}};
    return cayley_menger_condition(sq, "tri");
  };
  Eigen::VectorXd none;
  CHECK(check_side_conditions(none, none, {tri(1, 1, 1)}).satisfied);
  CHECK_FALSE(check_side_conditions(none, none, {tri(1, 1, 3)}).satisfied);
  auto flat = check_side_conditions(none, none, {tri(1, 1, 2)});
  CHECK(flat.satisfied);
}

TEST_CASE("sphere systems are square") {
  auto plane = build_sphere_system(desargues(Geometry::Plane));
  CHECK(plane.size() == 12);
  CHECK(plane.equations.size() == 12);
  auto space = build_sphere_system(g48());
  CHECK(space.size() == 16);
  auto sphere = build_sphere_system(desargues(Geometry::Sphere));
  CHECK(sphere.size() == 12);
  CHECK_THROWS_AS(build_sphere_system(desargues(Geometry::Plane), std::vector<int>{1, 3}), SystemError);
  CHECK_THROWS_AS(build_sphere_system(g48(), std::vector<int>{1, 2, 7}), SystemError);
}

TEST_CASE("forward consistency of seed realizations") {
  for (Geometry geo : {Geometry::Plane, Geometry::Sphere}) {
    auto sys = build_sphere_system(desargues(geo));
    for (std::uint64_t s = 1; s <= 20; ++s) {
      auto r = seed_realization(sys, s);
      CHECK(residual(sys, sys.parameterize(r.lengths), r.solution.x) < 1e-12);
      if (geo == Geometry::Sphere)
        for (int v = 0; v < 6; ++v) CHECK(std::abs(r.points.col(v).norm() - 1.0) < 1e-14);
    }
  }
  auto sys = build_sphere_system(g48());
  auto r = seed_realization(sys, 7);
  CHECK(residual(sys, sys.parameterize(r.lengths), r.solution.x) < 1e-12);
  CHECK(r.points(0, 2) >= 0.0);
  CHECK(std::abs(r.points(2, 2)) < 1e-14);
}

TEST_CASE("text export") {
  auto sys = build_sphere_system(desargues(Geometry::Plane));
  auto r = seed_realization(sys, 1);
  auto txt = sys.to_text(r.lengths);
  CHECK(txt.find("variables: x3 y3 s3") == 0);
  CHECK(txt.find("x3^2 + y3^2 - s3") != std::string::npos);
}

TEST_CASE("cayley-menger square subsystems") {
  auto tri = find_cm_square_subsystems(make(3, {{1, 2}, {1, 3}, {2, 3}}, Geometry::Plane), 2);
  REQUIRE(tri.size() == 1);
  CHECK(tri[0].variables.empty());
  CHECK(tri[0].minors.empty());

  auto g = find_cm_square_subsystems(g48(), 3);
  CHECK(g.size() >= 5);
  CHECK(has_variables(g, {Edge(2, 4), Edge(4, 6), Edge(1, 7)}));
  for (const auto& s : g) {
    CHECK(s.variables.size() == 3);
    CHECK(s.minors.size() == 3);
    for (const auto& m : s.minors) CHECK(m.rows.size() == 6);
  }
  auto l = find_cm_square_subsystems(l48h2(Geometry::Plane), 2);
  CHECK(l.size() == 11);
  CHECK(has_variables(l, {Edge(1, 3), Edge(1, 5), Edge(3, 6), Edge(3, 7)}));
  CHECK_THROWS_AS(find_cm_square_subsystems(g48(), 2), SystemError);
}

TEST_CASE("cayley-menger minors vanish on realizations") {
  std::uint64_t seed = 40;
  for (const auto& s : find_cm_square_subsystems(g48(), 3)) check_minors_vanish(s, ++seed);
  for (const auto& s : find_cm_square_subsystems(l48h2(Geometry::Plane), 2)) check_minors_vanish(s, ++seed);
  check_minors_vanish(cm_subsystem_for(l48h2(Geometry::Sphere), {Edge(1, 3), Edge(1, 5), Edge(3, 6), Edge(3, 7)}), 77);
  CHECK_THROWS_AS(cm_subsystem_for(g48(), {Edge(1, 2), Edge(4, 6), Edge(1, 7)}), SystemError);
  CHECK_THROWS_AS(cm_subsystem_for(g48(), {Edge(4, 6), Edge(1, 7)}), SystemError);
}

TEST_CASE("cayley-menger side conditions") {
  auto sub = cm_subsystem_for(g48(), {Edge(2, 4), Edge(4, 6), Edge(1, 7)});
  int triangles = 0, tetrahedra = 0, positive = 0;
  for (const auto& c : sub.inequalities) {
    if (c.label.rfind("triangle", 0) == 0) ++triangles;
    if (c.label.rfind("tetrahedron", 0) == 0) ++tetrahedra;
    if (c.strict) ++positive;
  }
  CHECK(positive == 3);
  CHECK(triangles > 0);
  CHECK(tetrahedra > 0);
  auto sys = build_cm_system(sub);
  CHECK(sys.embeddings_per_solution == 2);
  CHECK(sys.parameters.size() == 15);

  auto sph = cm_subsystem_for(l48h2(Geometry::Sphere), {Edge(1, 3), Edge(1, 5), Edge(3, 6), Edge(3, 7)});
  int bounds = 0;
  for (const auto& c : sph.inequalities)
    if (c.label.find("<= 1") != std::string::npos || c.label.find(">= -1") != std::string::npos) ++bounds;
  CHECK(bounds == 8);
  for (const auto& m : sph.minors) CHECK(m.rows.size() == 6);
}

TEST_CASE("distance side conditions") {
  auto conds = distance_side_conditions(4, Geometry::Space);
  CHECK(conds.size() == 4 + 1);
  // regular tetrahedron: all pair distances 1
  Eigen::VectorXd d = Eigen::VectorXd::Ones(6);
  CHECK(check_side_conditions(d, Eigen::VectorXd(), conds).satisfied);
  d[0] = 9.0;  // |12| = 3 breaks triangles 1-2-3 and 1-2-4
  auto r = check_side_conditions(d, Eigen::VectorXd(), conds);
  CHECK_FALSE(r.satisfied);
  CHECK(r.violations.size() >= 2);
  auto sph = distance_side_conditions(3, Geometry::Sphere);
  Eigen::VectorXd c(3);
  c << 0.0, 0.0, 0.0;  // mutually orthogonal unit vectors
  CHECK(check_side_conditions(c, Eigen::VectorXd(), sph).satisfied);
  c << 1.0, -1.0, 1.0;  // inconsistent cosines
  CHECK_FALSE(check_side_conditions(c, Eigen::VectorXd(), sph).satisfied);
}
