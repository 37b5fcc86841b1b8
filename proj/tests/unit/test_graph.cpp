#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "rigid/graph/canonical.hpp"
#include "rigid/graph/global_rigidity.hpp"
#include "rigid/graph/henneberg.hpp"
#include "rigid/graph/rigid_graph.hpp"

using namespace rigid;

namespace {

RigidGraph make(int n, std::vector<std::pair<int, int>> es, Geometry g = Geometry::Plane) {
  std::vector<Edge> edges;
  for (auto [a, b] : es) edges.emplace_back(a, b);
  return RigidGraph("g", g, n, edges);
}

RigidGraph desargues() { return make(6, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 6}, {4, 6}, {2, 5}, {5, 6}, {3, 5}}); }

RigidGraph g48() {
  return make(7,
              {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 3}, {2, 6}, {2, 7}, {3, 4}, {3, 7}, {4, 5}, {4, 7}, {5, 6},
               {5, 7}, {6, 7}},
              Geometry::Space);
}

// Independent isomorphism oracle: minimum adjacency string over all n! orderings.
std::string brute_label(const RigidGraph& g) {
  const int n = g.vertex_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  std::string best;
  do {
    std::string s;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += g.has_edge(perm[i], perm[j]) ? '1' : '0';
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

// Laman graphs on n vertices by brute force over edge subsets, counted up to isomorphism.
int brute_laman_classes(int n) {
  std::vector<Edge> all;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) all.emplace_back(i, j);
  const int m = 2 * n - 3;
  std::set<std::string> classes;
  std::vector<bool> pick(all.size(), false);
  std::fill(pick.begin(), pick.begin() + m, true);
  do {
    std::vector<Edge> es;
    for (std::size_t k = 0; k < all.size(); ++k)
      if (pick[k]) es.push_back(all[k]);
    RigidGraph g("b", Geometry::Plane, n, es);
    if (maxwell_check_exhaustive(g, 2)) classes.insert(brute_label(g));
  } while (std::prev_permutation(pick.begin(), pick.end()));
  return static_cast<int>(classes.size());
}

RigidGraph random_permuted(const RigidGraph& g, std::mt19937_64& rng) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 1);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<int> phi(g.vertex_count() + 1);
  for (int v = 1; v <= g.vertex_count(); ++v) phi[v] = perm[v - 1];
  return relabel(g, phi);
}

}  // namespace

TEST_CASE("maxwell counts on small graphs") {
  CHECK(maxwell_check(triangle_graph(), 2));
  CHECK(maxwell_check(g48(), 3));
  CHECK_FALSE(maxwell_check(complete_graph(4), 2));
  CHECK(maxwell_check(complete_graph(4), 3));
  CHECK(maxwell_check(desargues(), 2));
  CHECK_THROWS_AS(maxwell_check(triangle_graph(), 4), GraphError);
  // right edge count, overbraced K4 inside
  CHECK_FALSE(maxwell_check(make(5, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {4, 5}}), 2));
}

TEST_CASE("pebble game agrees with the exhaustive count") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 4 + static_cast<int>(rng() % 5);
    std::vector<Edge> all;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) all.emplace_back(i, j);
    std::shuffle(all.begin(), all.end(), rng);
    all.resize(std::min<std::size_t>(all.size(), 2 * n - 3));
    RigidGraph g("r", Geometry::Plane, n, all);
    CHECK(laman_pebble_game(g) == maxwell_check_exhaustive(g, 2));
  }
}

TEST_CASE("henneberg moves") {
  auto k4m = apply_henneberg(triangle_graph(), {MoveKind::H1, {1, 2}, std::nullopt}, 2);
  CHECK(k4m.vertex_count() == 4);
  CHECK(k4m.edge_count() == 5);
  CHECK(maxwell_check(k4m, 2));
  CHECK(classify_last_move(k4m, 2) == LastMove::H1);

  auto g5 = apply_henneberg(complete_graph(4, Geometry::Space), {MoveKind::H1, {1, 2, 3}, std::nullopt}, 3);
  CHECK(g5.edge_count() == 9);
  CHECK(maxwell_check(g5, 3));

  auto h1a = apply_henneberg(desargues(), {MoveKind::H1, {4, 6}, std::nullopt}, 2);
  CHECK(h1a.has_edge(7, 4));
  CHECK(h1a.has_edge(7, 6));
  CHECK(classify_last_move(h1a, 2) == LastMove::H1);

  auto split = apply_henneberg(desargues(), {MoveKind::H2, {1, 2, 5}, Edge(1, 2)}, 2);
  CHECK_FALSE(split.has_edge(1, 2));
  CHECK(split.degree(7) == 3);
  CHECK(maxwell_check(split, 2));

  CHECK_THROWS_AS(apply_henneberg(triangle_graph(), {MoveKind::H1, {1, 1}, std::nullopt}, 2), GraphError);
  CHECK_THROWS_AS(apply_henneberg(triangle_graph(), {MoveKind::H1, {1, 2, 3}, std::nullopt}, 2), GraphError);
  CHECK_THROWS_AS(apply_henneberg(desargues(), {MoveKind::H2, {1, 3, 5}, Edge(1, 3)}, 2), GraphError);
  CHECK_THROWS_AS(apply_henneberg(desargues(), {MoveKind::H2, {1, 2, 5}, Edge(3, 4)}, 2), GraphError);
  CHECK(classify_last_move(g48(), 3) == LastMove::H2);
}

TEST_CASE("every move preserves the counts") {
  auto g = desargues();
  for (const auto& m : henneberg_moves(g, 2)) CHECK(maxwell_check(apply_henneberg(g, m, 2), 2));
}

TEST_CASE("canonical form") {
  std::mt19937_64 rng(5);
  const auto d = desargues();
  const auto label = canonical_form(d);
  CHECK(canonical_form(d) == label);
  for (int k = 0; k < 20; ++k) CHECK(canonical_form(random_permuted(d, rng)) == label);
  auto k33 = make(6, {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}});
  CHECK(canonical_form(k33) != label);
  for (int k = 0; k < 10; ++k) CHECK(canonical_form(random_permuted(g48(), rng)) == canonical_form(g48()));

  const auto g = g48();
  auto p = random_permuted(g, rng);
  auto phi = find_isomorphism(g, p);
  REQUIRE(phi.has_value());
  for (const auto& e : g.edges()) CHECK(p.has_edge((*phi)[e.a], (*phi)[e.b]));
  CHECK_FALSE(find_isomorphism(d, k33).has_value());
}

TEST_CASE("canonical form matches the brute-force oracle on random graphs") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 5 + static_cast<int>(rng() % 3);
    std::vector<Edge> es;
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j)
        if (rng() % 2) es.emplace_back(i, j);
    RigidGraph a("a", Geometry::Plane, n, es);
    RigidGraph b = random_permuted(a, rng);
    CHECK(canonical_form(a) == canonical_form(b));
    // a single edge flip changes the class iff the oracle says so
    std::vector<Edge> es2 = es;
    if (!es2.empty()) es2.pop_back();
    RigidGraph c("c", Geometry::Plane, n, es2);
    CHECK((canonical_form(a) == canonical_form(c)) == (brute_label(a) == brute_label(c)));
  }
}

TEST_CASE("laman enumeration matches brute force") {
  CHECK(enumerate_minimally_rigid(3, 2).size() == 1);
  CHECK(static_cast<int>(enumerate_minimally_rigid(5, 2).size()) == brute_laman_classes(5));
  const int oracle6 = brute_laman_classes(6);
  CHECK(oracle6 == 13);
  CHECK(static_cast<int>(enumerate_minimally_rigid(6, 2).size()) == oracle6);
}

TEST_CASE("geiringer enumeration on seven vertices") {
  auto gs = enumerate_minimally_rigid(7, 3);
  CHECK(gs.size() == 26);
  int h1 = 0, h2 = 0;
  std::set<std::string> labels;
  for (const auto& e : gs) {
    CHECK(maxwell_check(e.graph, 3));
    labels.insert(e.label);
    (e.last_move == LastMove::H1 ? h1 : h2)++;
    if (e.last_move == LastMove::H1) CHECK(e.graph.min_degree() == 3);
  }
  CHECK(labels.size() == gs.size());
  CHECK(h1 == 20);
  CHECK(h2 == 6);
  CHECK_THROWS_AS(enumerate_minimally_rigid(9, 3), GraphError);
  CHECK_THROWS_AS(enumerate_minimally_rigid(11, 2), GraphError);
}

TEST_CASE("generic global rigidity") {
  CHECK(is_globally_rigid_generic(complete_graph(4), 2));
  CHECK_FALSE(is_globally_rigid_generic(desargues(), 2));
  CHECK(is_globally_rigid_generic(g48().with_edges({Edge(1, 7)}), 3));
  CHECK_FALSE(is_globally_rigid_generic(g48(), 3));
  CHECK(is_globally_rigid_generic(complete_graph(5, Geometry::Space), 3));
}

TEST_CASE("globally rigid extensions") {
  auto k4m = apply_henneberg(triangle_graph(), {MoveKind::H1, {1, 2}, std::nullopt}, 2);
  auto k4 = extend_to_globally_rigid(k4m, 2);
  CHECK(k4.edge_count() == 6);

  const auto base = g48();
  auto g = extend_to_globally_rigid(base, 3);
  CHECK(g.edge_count() == base.edge_count() + 3);
  for (const auto& e : base.edges()) CHECK(g.has_edge(e.a, e.b));
  CHECK(is_globally_rigid_generic(g, 3, 99));

  auto h2 = make(7, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 6}, {2, 5}, {5, 6}, {3, 5}, {1, 7}, {4, 7}, {6, 7}});
  auto e2 = extend_to_globally_rigid(h2, 2);
  CHECK(e2.edge_count() == h2.edge_count() + 4);
}
