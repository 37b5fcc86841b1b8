#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rigid {

enum class Geometry { Plane, Space, Sphere };

/// Dimension used for the edge counts: the sphere uses the planar (Laman) counts.
constexpr int count_dimension(Geometry g) { return g == Geometry::Space ? 3 : 2; }

/// Dimension of the ambient coordinates the embedding equations live in.
constexpr int ambient_dimension(Geometry g) { return g == Geometry::Plane ? 2 : 3; }

std::string_view to_string(Geometry g);
Geometry geometry_from_string(std::string_view s);

class GraphError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Unordered vertex pair, stored with a < b. Vertices are 1-based.
struct Edge {
  int a = 0;
  int b = 0;

  Edge() = default;
  Edge(int i, int j) : a(i < j ? i : j), b(i < j ? j : i) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

std::string edge_key(const Edge& e);  // "i-j"
Edge edge_from_key(std::string_view key);

/// Simple labelled graph on vertices 1..n with a target geometry.
class RigidGraph {
 public:
  static constexpr int kMaxVertices = 63;

  RigidGraph() = default;
  RigidGraph(std::string name, Geometry geometry, int n, std::vector<Edge> edges);

  const std::string& name() const { return name_; }
  Geometry geometry() const { return geometry_; }
  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_edge(int i, int j) const;
  int degree(int v) const;
  int min_degree() const;
  std::vector<int> neighbors(int v) const;
  /// Bitmask of neighbours of v; bit k set iff vertex k+1 is adjacent.
  std::uint64_t adjacency_mask(int v) const { return adj_[v - 1]; }

  /// Edges of the complete graph not present here, lexicographic.
  std::vector<Edge> non_edges() const;
  /// Index of e in edges(), or nullopt.
  std::optional<int> edge_index(const Edge& e) const;

  RigidGraph with_edges(const std::vector<Edge>& extra, std::string name = {}) const;
  RigidGraph without_edge(const Edge& e, std::string name = {}) const;
  RigidGraph renamed(std::string name) const;
  RigidGraph with_geometry(Geometry g) const;

  friend bool operator==(const RigidGraph& x, const RigidGraph& y) {
    return x.n_ == y.n_ && x.edges_ == y.edges_;
  }

 private:
  std::string name_;
  Geometry geometry_ = Geometry::Plane;
  int n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::uint64_t> adj_;
};

RigidGraph triangle_graph(Geometry g = Geometry::Plane);
RigidGraph complete_graph(int n, Geometry g = Geometry::Plane);

/// Graph with an additional apex joined to every vertex (spherical frameworks as cones).
RigidGraph cone_over(const RigidGraph& g);

/// Maxwell/Laman count: |E| = d n - d(d+1)/2 and every vertex set of size >= d spans
/// at most d n' - d(d+1)/2 edges.
bool maxwell_check(const RigidGraph& g, int d);

/// Exhaustive subset version of maxwell_check; independent of the pebble game.
bool maxwell_check_exhaustive(const RigidGraph& g, int d);

/// (2,3)-pebble game; agrees with maxwell_check_exhaustive for d = 2.
bool laman_pebble_game(const RigidGraph& g);

}  // namespace rigid
