#include "rigid/graph/rigid_graph.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

namespace rigid {

std::string_view to_string(Geometry g) {
  switch (g) {
    case Geometry::Plane: return "plane";
    case Geometry::Space: return "space";
    case Geometry::Sphere: return "sphere";
  }
  return "plane";
}

Geometry geometry_from_string(std::string_view s) {
  if (s == "plane") return Geometry::Plane;
  if (s == "space") return Geometry::Space;
  if (s == "sphere") return Geometry::Sphere;
  throw GraphError("unknown geometry '" + std::string(s) + "'");
}

std::string edge_key(const Edge& e) { return std::to_string(e.a) + "-" + std::to_string(e.b); }

Edge edge_from_key(std::string_view key) {
  const auto dash = key.find('-');
  if (dash == std::string_view::npos) throw GraphError("bad edge key '" + std::string(key) + "'");
  int i = 0, j = 0;
  auto r1 = std::from_chars(key.data(), key.data() + dash, i);
  auto r2 = std::from_chars(key.data() + dash + 1, key.data() + key.size(), j);
  if (r1.ec != std::errc{} || r2.ec != std::errc{} || r2.ptr != key.data() + key.size())
    throw GraphError("bad edge key '" + std::string(key) + "'");
  return Edge(i, j);
}

RigidGraph::RigidGraph(std::string name, Geometry geometry, int n, std::vector<Edge> edges)
    : name_(std::move(name)), geometry_(geometry), n_(n), edges_(std::move(edges)) {
  if (n < 1 || n > kMaxVertices) throw GraphError("vertex count out of range");
  adj_.assign(n, 0);
  for (auto& e : edges_) {
    e = Edge(e.a, e.b);
    if (e.a == e.b) throw GraphError("loop at vertex " + std::to_string(e.a));
    if (e.a < 1 || e.b > n) throw GraphError("edge " + edge_key(e) + " outside 1.." + std::to_string(n));
  }
  std::sort(edges_.begin(), edges_.end());
  if (std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
    throw GraphError("duplicate edge in graph '" + name_ + "'");
  for (const auto& e : edges_) {
    adj_[e.a - 1] |= std::uint64_t{1} << (e.b - 1);
    adj_[e.b - 1] |= std::uint64_t{1} << (e.a - 1);
  }
}

bool RigidGraph::has_edge(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_ || i == j) return false;
  return (adj_[i - 1] >> (j - 1)) & 1U;
}

int RigidGraph::degree(int v) const { return std::popcount(adj_[v - 1]); }

int RigidGraph::min_degree() const {
  int m = n_;
  for (int v = 1; v <= n_; ++v) m = std::min(m, degree(v));
  return m;
}

std::vector<int> RigidGraph::neighbors(int v) const {
  std::vector<int> out;
  for (int u = 1; u <= n_; ++u)
    if (has_edge(u, v)) out.push_back(u);
  return out;
}

std::vector<Edge> RigidGraph::non_edges() const {
  std::vector<Edge> out;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (!has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

std::optional<int> RigidGraph::edge_index(const Edge& e) const {
  auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
  if (it == edges_.end() || *it != e) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

RigidGraph RigidGraph::with_edges(const std::vector<Edge>& extra, std::string name) const {
  auto es = edges_;
  es.insert(es.end(), extra.begin(), extra.end());
  return RigidGraph(name.empty() ? name_ : std::move(name), geometry_, n_, std::move(es));
}

RigidGraph RigidGraph::without_edge(const Edge& e, std::string name) const {
  auto es = edges_;
  auto it = std::find(es.begin(), es.end(), e);
  if (it == es.end()) throw GraphError("edge " + edge_key(e) + " not in graph");
  es.erase(it);
  return RigidGraph(name.empty() ? name_ : std::move(name), geometry_, n_, std::move(es));
}

RigidGraph RigidGraph::renamed(std::string name) const {
  RigidGraph g = *this;
  g.name_ = std::move(name);
  return g;
}

RigidGraph RigidGraph::with_geometry(Geometry geom) const {
  RigidGraph g = *this;
  g.geometry_ = geom;
  return g;
}

RigidGraph triangle_graph(Geometry g) { return complete_graph(3, g).renamed("triangle"); }

RigidGraph complete_graph(int n, Geometry g) {
  std::vector<Edge> es;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) es.emplace_back(i, j);
  return RigidGraph("K" + std::to_string(n), g, n, std::move(es));
}

RigidGraph cone_over(const RigidGraph& g) {
  const int apex = g.vertex_count() + 1;
  auto es = g.edges();
  for (int v = 1; v < apex; ++v) es.emplace_back(v, apex);
  return RigidGraph(g.name() + "+cone", Geometry::Space, apex, std::move(es));
}

namespace {

int maxwell_bound(int d, int k) { return d * k - d * (d + 1) / 2; }

}  // namespace

bool maxwell_check_exhaustive(const RigidGraph& g, int d) {
  if (d != 2 && d != 3) throw GraphError("dimension must be 2 or 3");
  const int n = g.vertex_count();
  if (n < d) return false;
  if (g.edge_count() != maxwell_bound(d, n)) return false;
  if (n > 26) throw GraphError("exhaustive count check limited to 26 vertices");
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t mask = 1; mask < full; ++mask) {
    const int k = std::popcount(mask);
    if (k < d) continue;
    int twice = 0;
    for (std::uint64_t m = mask; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      twice += std::popcount(g.adjacency_mask(v + 1) & mask);
    }
    if (twice / 2 > maxwell_bound(d, k)) return false;
  }
  return true;
}

bool laman_pebble_game(const RigidGraph& g) {
  const int n = g.vertex_count();
  if (g.edge_count() != 2 * n - 3) return false;
  // Directed pebble-game graph: out[v] lists heads of edges directed away from v.
  std::vector<int> pebbles(n, 2);
  std::vector<std::vector<int>> out(n);

  // Search for a free pebble reachable from `start` avoiding `a` and `b`; reverse the path.
  auto find_pebble = [&](int start, int a, int b) {
    std::vector<int> parent(n, -2);
    std::vector<int> stack{start};
    parent[start] = -1;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      if (v != a && v != b && pebbles[v] > 0) {
        --pebbles[v];
        int cur = v;
        while (parent[cur] != -1) {
          const int p = parent[cur];
          auto& ov = out[p];
          ov.erase(std::find(ov.begin(), ov.end(), cur));
          out[cur].push_back(p);
          cur = p;
        }
        ++pebbles[start];
        return true;
      }
      for (int w : out[v]) {
        if (parent[w] == -2) {
          parent[w] = v;
          stack.push_back(w);
        }
      }
    }
    return false;
  };

  for (const auto& e : g.edges()) {
    const int u = e.a - 1, v = e.b - 1;
    // Gather 4 pebbles on u and v (l + 1 = 4 for the (2,3) game).
    while (pebbles[u] + pebbles[v] < 4) {
      bool moved = false;
      if (pebbles[u] < 2) moved = find_pebble(u, u, v) || moved;
      if (!moved && pebbles[v] < 2) moved = find_pebble(v, u, v);
      if (!moved) return false;
    }
    if (pebbles[u] > 0) {
      --pebbles[u];
      out[u].push_back(v);
    } else {
      --pebbles[v];
      out[v].push_back(u);
    }
  }
  return true;
}

bool maxwell_check(const RigidGraph& g, int d) {
  if (d != 2 && d != 3) throw GraphError("dimension must be 2 or 3");
  if (d == 2 && g.vertex_count() > 10) return laman_pebble_game(g);
  return maxwell_check_exhaustive(g, d);
}

}  // namespace rigid
