#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <memory>
#include <set>

#include "rigid/graph/catalog.hpp"
#include "rigid/sampler/curve.hpp"
#include "rigid/sampler/heuristics.hpp"
#include "rigid/sampler/search.hpp"
#include "rigid/solver/monodromy.hpp"

using namespace rigid;

namespace {

const CatalogEntry& g48() { return catalog_entry("G_48"); }
const LengthAssignment& start28() { return g48().lengths("start-28").lengths; }

// Independent count: permutations of u's neighbours with pv, vw, cw in E; (u,v,w,p,c) and
// (u,v,p,w,c) are one subgraph when both qualify.
std::size_t brute_force_couplers(const RigidGraph& g) {
  auto has = [&](int a, int b) { return g.has_edge(a, b); };
  std::set<std::vector<int>> seen;
  for (int u = 1; u <= g.vertex_count(); ++u) {
    std::vector<int> nb;
    for (int x = 1; x <= g.vertex_count(); ++x)
      if (x != u && has(u, x)) nb.push_back(x);
    if (nb.size() != 4) continue;
    std::sort(nb.begin(), nb.end());
    do {
      const int v = nb[0], w = nb[1], p = nb[2], c = nb[3];
      if (has(p, v) && has(v, w) && has(c, w)) seen.insert({u, v, std::min(w, p), std::max(w, p), c});
    } while (std::next_permutation(nb.begin(), nb.end()));
  }
  return seen.size();
}

SamplerCandidate at(double phi, double theta, int count = 5) {
  return SamplerCandidate{phi, theta, {}, count};
}

}  // namespace

TEST_CASE("coupler subgraphs of G_48") {
  const auto subs = find_coupler_subgraphs(g48().graph);
  CHECK(subs.size() == 20);
  CHECK(std::find(subs.begin(), subs.end(), CouplerSubgraph{2, 3, 1, 7, 6}) != subs.end());
  for (const auto& sg : subs) CHECK_NOTHROW(validate_coupler(g48().graph, sg));
  CHECK(to_string(coupler_from_string("(v2, v3, v1, v7, v6)")) == "(2,3,1,7,6)");
}

TEST_CASE("coupler subgraphs match a brute-force count") {
  for (const char* name : {"G_16", "G_48", "G_160"}) {
    const RigidGraph& g = catalog_entry(name).graph;
    CHECK(find_coupler_subgraphs(g).size() == brute_force_couplers(g));
  }
  // Tetrahedron with one H1 vertex, i.e. K5 minus an edge: every degree-4 vertex qualifies.
  std::vector<Edge> e{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}, {1, 5}, {2, 5}, {3, 5}};
  const RigidGraph g("t5", Geometry::Space, 5, e);
  CHECK(find_coupler_subgraphs(g).size() == brute_force_couplers(g));
  CHECK(brute_force_couplers(g) == 24);
  CHECK_NOTHROW(validate_coupler(g, {1, 2, 3, 4, 5}));
  CHECK_THROWS_AS(validate_coupler(g, {4, 1, 2, 3, 5}), SamplerError);  // deg(4) = 3
  CHECK_THROWS_AS(validate_coupler(g, {1, 2, 3, 4, 4}), SamplerError);
}

TEST_CASE("a graph without degree-4 vertices has no coupler subgraph") {
  std::vector<Edge> e{{1, 2}, {1, 3}, {2, 3}, {1, 4}, {2, 4}, {3, 4}};
  const RigidGraph k4("k4", Geometry::Space, 4, e);
  CHECK(find_coupler_subgraphs(k4).empty());
}

TEST_CASE("lambda family is the identity at the original length") {
  const CouplerSubgraph sg{2, 3, 1, 7, 6};
  const LengthAssignment& l = start28();
  CHECK(max_abs_difference(lambda_family(l, sg, l.at(2, 3)), l) < 1e-12);
  const LengthAssignment m = lambda_family(l, sg, 0.5 * l.at(2, 3));
  CHECK(m.at(2, 3) == doctest::Approx(0.5 * l.at(2, 3)));
  CHECK(m.at(2, 6) == l.at(2, 6));
  CHECK(m.at(1, 3) == l.at(1, 3));
  CHECK(m.at(1, 6) == l.at(1, 6));
}

TEST_CASE("angles round trip and domain guards") {
  const CouplerSubgraph sg{2, 3, 1, 7, 6};
  const LengthAssignment& l = start28();
  const auto [phi, theta] = angles_of(l, sg);
  CHECK(max_abs_difference(lengths_from_angles(l, sg, phi, theta), l) < 1e-10);
  CHECK_THROWS_AS(lengths_from_angles(l, sg, M_PI / 2, theta), SamplerError);
  CHECK_THROWS_AS(lengths_from_angles(l, sg, phi, 0.0), SamplerError);
  CHECK_THROWS_AS(lengths_from_angles(l, sg, -1.5, theta), SamplerError);  // t <= 0
}

TEST_CASE("clustering") {
  SUBCASE("single candidate") {
    const auto r = cluster_candidates({at(0.1, 0.2)}, 0.5, 3);
    REQUIRE(r.size() == 1);
    CHECK(r[0].phi == 0.1);
  }
  SUBCASE("two separated candidates") {
    CHECK(cluster_candidates({at(0.0, 1.0), at(1.0, 1.0)}, 0.5, 1).size() == 2);
    CHECK(cluster_candidates({at(0.0, 1.0), at(1.0, 1.0)}, 0.5, 3).size() == 2);
  }
  SUBCASE("3x3 block") {
    // Spacing 0.1, eps 0.15: every point has at least 4 neighbours, one cluster, centroid (0.1, 1.1).
    std::vector<SamplerCandidate> c;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) c.push_back(at(0.1 * i, 1.0 + 0.1 * j));
    const auto plain = cluster_candidates(c, 0.15, 3);
    REQUIRE(plain.size() == 1);
    CHECK(plain[0].phi == doctest::Approx(0.1));
    CHECK(plain[0].theta == doctest::Approx(1.1));
    int calls = 0;
    const auto centre = cluster_candidates(c, 0.15, 3, [&](double p, double t) {
      ++calls;
      return std::optional<SamplerCandidate>(at(p, t, 5));
    });
    CHECK(calls == 1);
    CHECK(centre.size() == 1);
    const auto lower = cluster_candidates(c, 0.15, 3, [&](double p, double t) {
      return std::optional<SamplerCandidate>(at(p + 1, t, 4));
    });
    REQUIRE(lower.size() == 1);
    CHECK(lower[0].phi == doctest::Approx(0.1));  // fell back to the nearest member
  }
  SUBCASE("noise and a cluster") {
    std::vector<SamplerCandidate> c{at(0, 1), at(0.05, 1), at(0, 1.05), at(1, 2)};
    CHECK(cluster_candidates(c, 0.1, 3).size() == 2);
  }
}

TEST_CASE("search configuration validation") {
  SearchConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  CHECK(cfg.effective_eps() == doctest::Approx(2 * std::hypot(M_PI / 20, M_PI / 20)));
  cfg.grid_phi = 0;
  CHECK_THROWS_AS(cfg.validate(), SamplerError);
}

TEST_CASE("sampling on a 2x2 grid is deterministic") {
  auto sys = std::make_shared<PolynomialSystem>(build_sphere_system(g48().graph));
  MonodromyOptions mo;
  mo.known_count = 48;
  const SolutionSet generic = monodromy_solve(sys, mo);
  REQUIRE(generic.size() == 48);
  SearchConfig cfg;
  cfg.grid_phi = cfg.grid_theta = 2;
  cfg.refine_grid = 1;
  const CouplerSubgraph sg{2, 3, 1, 7, 6};
  const auto a = sample_subgraph(generic, start28(), sg, cfg);
  const auto b = sample_subgraph(generic, start28(), sg, cfg);
  CHECK(a.size() <= 5);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].phi == b[i].phi);
    CHECK(a[i].theta == b[i].theta);
    CHECK(a[i].real_count == b[i].real_count);
    CHECK(a[i].real_count >= 0);
  }

  SUBCASE("target already met") {
    SearchConfig t;
    t.target = 20;
    const SearchResult r = tree_search(generic, start28(), t);
    CHECK(r.reached_target);
    CHECK(r.best_count == 28);
    CHECK(r.expansions == 0);
  }
  SUBCASE("walk with zero steps") {
    const WalkResult w = stochastic_walk(generic, start28(), 0, 3);
    CHECK(w.best == start28());
    CHECK(w.score.real == 28);
    CHECK(w.history.empty());
  }
}

TEST_CASE("coupler curve with zero steps keeps the seeds") {
  const CouplerSubgraph sg{2, 3, 1, 7, 6};
  const CouplerCurve c = trace_coupler_curve(g48().graph, start28(), sg, 0);
  REQUIRE(!c.components.empty());
  for (const auto& comp : c.components) CHECK(comp.points.size() == 1);
}

TEST_CASE("start strategies") {
  const RigidGraph& g = g48().graph;
  for (auto s : {StartStrategy::Random, StartStrategy::NearUnit, StartStrategy::DegeneratePerturb,
                 StartStrategy::ForwardInduced}) {
    const auto starts = heuristic_starts(g, s, 3, 7);
    CHECK(starts.size() == 3);
    for (const auto& l : starts) CHECK_NOTHROW(l.validate_for(g));
    CHECK(start_strategy_from_string(to_string(s)) == s);
  }
  CHECK(heuristic_starts(g, StartStrategy::Random, 2, 7) == heuristic_starts(g, StartStrategy::Random, 2, 7));
  CHECK_THROWS(start_strategy_from_string("nope"));
}

TEST_CASE("glue perturbation") {
  const RigidGraph& big = catalog_entry("G_160").graph;
  const GlueSource src{g48().graph, g48().lengths("max-48").lengths, {1, 2, 3, 4, 5, 6, 7, 7}};
  const auto starts = heuristic_starts(big, StartStrategy::GluePerturb, 2, 1, src);
  CHECK(starts.size() == 2);
  for (const auto& l : starts) CHECK_NOTHROW(l.validate_for(big));
  GlueSource bad = src;
  bad.vertex_map = {1, 2, 3};
  CHECK_THROWS(heuristic_starts(big, StartStrategy::GluePerturb, 1, 1, bad));
  CHECK_THROWS(heuristic_starts(big, StartStrategy::GluePerturb, 1, 1, std::nullopt));
}
