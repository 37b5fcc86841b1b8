#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

enum class MoveKind { H1, H2 };

/// Vertex addition (H1) or edge split (H2). The new vertex gets label n+1.
struct HennebergMove {
  MoveKind kind = MoveKind::H1;
  std::vector<int> attach;      // d vertices for H1, d+1 for H2
  std::optional<Edge> removed;  // H2 only; joins two attach vertices
};

RigidGraph apply_henneberg(const RigidGraph& g, const HennebergMove& move, int d);

/// All H1 and H2 moves applicable to g in dimension d, in a fixed order.
std::vector<HennebergMove> henneberg_moves(const RigidGraph& g, int d);

enum class LastMove { H1, H2 };

std::string_view to_string(LastMove m);

/// H1-last iff some vertex has degree exactly d.
LastMove classify_last_move(const RigidGraph& g, int d);

struct EnumeratedGraph {
  RigidGraph graph;
  std::string label;  // canonical_form(graph)
  LastMove last_move;
};

/// One representative per isomorphism class of H1/H2-constructible graphs on n vertices,
/// sorted by canonical label. Supported: 3 <= n <= 10 (d = 2), 3 <= n <= 8 (d = 3).
std::vector<EnumeratedGraph> enumerate_minimally_rigid(int n, int d);

}  // namespace rigid
