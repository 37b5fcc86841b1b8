#include "rigid/graph/henneberg.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "rigid/graph/canonical.hpp"

namespace rigid {
namespace {

void for_each_combination(int n, int k, const std::function<void(const std::vector<int>&)>& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i + 1;
  if (k > n) return;
  for (;;) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i + 1) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

RigidGraph apply_henneberg(const RigidGraph& g, const HennebergMove& move, int d) {
  if (d != 2 && d != 3) throw GraphError("dimension must be 2 or 3");
  const std::size_t expected = move.kind == MoveKind::H1 ? d : d + 1;
  if (move.attach.size() != expected) throw GraphError("wrong number of attach vertices");
  std::set<int> distinct(move.attach.begin(), move.attach.end());
  if (distinct.size() != move.attach.size()) throw GraphError("attach vertices must be distinct");
  for (int v : move.attach)
    if (v < 1 || v > g.vertex_count()) throw GraphError("attach vertex not in graph");

  auto edges = g.edges();
  if (move.kind == MoveKind::H2) {
    if (!move.removed) throw GraphError("H2 move needs an edge to remove");
    const Edge r = *move.removed;
    if (!g.has_edge(r.a, r.b)) throw GraphError("removed edge " + edge_key(r) + " absent");
    if (!distinct.count(r.a) || !distinct.count(r.b)) throw GraphError("removed edge must join attach vertices");
    edges.erase(std::find(edges.begin(), edges.end(), r));
  } else if (move.removed) {
    throw GraphError("H1 move removes no edge");
  }
  const int fresh = g.vertex_count() + 1;
  for (int v : move.attach) edges.emplace_back(v, fresh);
  return RigidGraph(g.name(), g.geometry(), fresh, std::move(edges));
}

std::vector<HennebergMove> henneberg_moves(const RigidGraph& g, int d) {
  std::vector<HennebergMove> moves;
  const int n = g.vertex_count();
  for_each_combination(n, d, [&](const std::vector<int>& c) { moves.push_back({MoveKind::H1, c, std::nullopt}); });
  if (n >= d + 1) {
    for (const auto& e : g.edges()) {
      std::vector<int> others;
      for (int v = 1; v <= n; ++v)
        if (v != e.a && v != e.b) others.push_back(v);
      for_each_combination(static_cast<int>(others.size()), d - 1, [&](const std::vector<int>& c) {
        std::vector<int> attach{e.a, e.b};
        for (int i : c) attach.push_back(others[i - 1]);
        moves.push_back({MoveKind::H2, attach, e});
      });
    }
  }
  return moves;
}

std::string_view to_string(LastMove m) { return m == LastMove::H1 ? "H1-last" : "H2-last"; }

LastMove classify_last_move(const RigidGraph& g, int d) {
  return g.min_degree() == d ? LastMove::H1 : LastMove::H2;
}

std::vector<EnumeratedGraph> enumerate_minimally_rigid(int n, int d) {
  if (d != 2 && d != 3) throw GraphError("dimension must be 2 or 3");
  const int max_n = d == 2 ? 10 : 8;
  if (n < 3 || n > max_n) throw GraphError("enumeration supports 3 <= n <= " + std::to_string(max_n));

  const Geometry geom = d == 2 ? Geometry::Plane : Geometry::Space;
  std::map<std::string, RigidGraph> level;
  RigidGraph base = n == 3 ? triangle_graph(geom) : complete_graph(d + 1, geom);
  level.emplace(canonical_form(base), base);
  for (int k = base.vertex_count(); k < n; ++k) {
    std::map<std::string, RigidGraph> next;
    for (const auto& [label, g] : level) {
      for (const auto& mv : henneberg_moves(g, d)) {
        RigidGraph h = apply_henneberg(g, mv, d);
        std::string lab = canonical_form(h);
        if (!next.count(lab)) next.emplace(std::move(lab), std::move(h));
      }
    }
    level = std::move(next);
  }

  std::vector<EnumeratedGraph> out;
  int idx = 0;
  for (auto& [label, g] : level) {
    RigidGraph named = g.renamed((d == 2 ? "laman_" : "geiringer_") + std::to_string(n) + "_" + std::to_string(idx++));
    out.push_back({named, label, classify_last_move(named, d)});
  }
  return out;
}

}  // namespace rigid
