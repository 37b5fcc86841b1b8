#include "rigid/graph/canonical.hpp"

#include <algorithm>
#include <map>

namespace rigid {
namespace {

using Cells = std::vector<std::vector<int>>;  // 0-based vertices

// Equitable refinement: split cells by neighbour counts into every cell until stable.
// Cell order only depends on invariant data, so the result commutes with isomorphisms.
Cells refine(const RigidGraph& g, Cells cells) {
  const int n = g.vertex_count();
  std::vector<int> cell_of(n);
  for (;;) {
    for (int c = 0; c < static_cast<int>(cells.size()); ++c)
      for (int v : cells[c]) cell_of[v] = c;
    Cells next;
    next.reserve(cells.size());
    bool split = false;
    for (const auto& cell : cells) {
      if (cell.size() == 1) {
        next.push_back(cell);
        continue;
      }
      std::map<std::vector<int>, std::vector<int>> groups;
      for (int v : cell) {
        std::vector<int> sig(cells.size(), 0);
        for (int w = 0; w < n; ++w)
          if (g.has_edge(v + 1, w + 1)) ++sig[cell_of[w]];
        groups[sig].push_back(v);
      }
      if (groups.size() > 1) split = true;
      for (auto& [sig, members] : groups) next.push_back(std::move(members));
    }
    cells = std::move(next);
    if (!split) return cells;
  }
}

std::string leaf_string(const RigidGraph& g, const std::vector<int>& order) {
  const int n = static_cast<int>(order.size());
  std::string bits;
  bits.reserve(n * (n - 1) / 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) bits.push_back(g.has_edge(order[i] + 1, order[j] + 1) ? '1' : '0');
  return bits;
}

struct Search {
  const RigidGraph& g;
  std::string best;
  std::vector<int> best_order;

  void run(const Cells& cells_in) {
    const Cells cells = refine(g, cells_in);
    auto target = std::find_if(cells.begin(), cells.end(), [](const auto& c) { return c.size() > 1; });
    if (target == cells.end()) {
      std::vector<int> order;
      for (const auto& c : cells) order.push_back(c.front());
      std::string s = leaf_string(g, order);
      if (best_order.empty() || s < best) {
        best = std::move(s);
        best_order = std::move(order);
      }
      return;
    }
    const auto idx = static_cast<std::size_t>(target - cells.begin());
    for (int v : *target) {
      Cells child;
      child.reserve(cells.size() + 1);
      for (std::size_t c = 0; c < cells.size(); ++c) {
        if (c != idx) {
          child.push_back(cells[c]);
          continue;
        }
        child.push_back({v});
        std::vector<int> rest;
        for (int w : cells[c])
          if (w != v) rest.push_back(w);
        child.push_back(std::move(rest));
      }
      run(child);
    }
  }
};

}  // namespace

std::vector<int> canonical_ordering(const RigidGraph& g) {
  const int n = g.vertex_count();
  // Initial cells by degree, ascending.
  std::map<int, std::vector<int>> by_degree;
  for (int v = 0; v < n; ++v) by_degree[g.degree(v + 1)].push_back(v);
  Cells cells;
  for (auto& [deg, members] : by_degree) cells.push_back(std::move(members));
  Search s{g, {}, {}};
  s.run(cells);
  std::vector<int> order;
  for (int v : s.best_order) order.push_back(v + 1);
  return order;
}

std::string canonical_form(const RigidGraph& g) {
  const auto order = canonical_ordering(g);
  std::vector<int> zero_based;
  for (int v : order) zero_based.push_back(v - 1);
  const std::string bits = leaf_string(g, zero_based);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string label = std::to_string(g.vertex_count()) + ":" + std::to_string(g.edge_count()) + ":";
  for (std::size_t i = 0; i < bits.size(); i += 4) {
    int nibble = 0;
    for (std::size_t k = 0; k < 4; ++k) nibble = (nibble << 1) | (i + k < bits.size() && bits[i + k] == '1');
    label.push_back(kHex[nibble]);
  }
  return label;
}

std::optional<std::vector<int>> find_isomorphism(const RigidGraph& from, const RigidGraph& to) {
  if (from.vertex_count() != to.vertex_count() || from.edge_count() != to.edge_count()) return std::nullopt;
  if (canonical_form(from) != canonical_form(to)) return std::nullopt;
  const auto a = canonical_ordering(from);
  const auto b = canonical_ordering(to);
  std::vector<int> phi(from.vertex_count() + 1, 0);
  for (std::size_t k = 0; k < a.size(); ++k) phi[a[k]] = b[k];
  return phi;
}

RigidGraph relabel(const RigidGraph& g, const std::vector<int>& phi, std::string name) {
  std::vector<Edge> es;
  for (const auto& e : g.edges()) es.emplace_back(phi[e.a], phi[e.b]);
  return RigidGraph(name.empty() ? g.name() : std::move(name), g.geometry(), g.vertex_count(), std::move(es));
}

}  // namespace rigid
