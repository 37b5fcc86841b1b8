#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rigid/graph/rigid_graph.hpp"

namespace rigid {

/// Vertex order (1-based labels) realising the canonical adjacency string.
/// Search is individualisation-refinement over degree-refined cells; every leaf is visited,
/// so the result is exact for any graph (cost grows with symmetry, fine for n <= 10).
std::vector<int> canonical_ordering(const RigidGraph& g);

/// Text label, equal for two graphs iff they are isomorphic.
std::string canonical_form(const RigidGraph& g);

/// Vertex map phi with phi[v] = image of v in `to` (index 0 unused), or nullopt.
std::optional<std::vector<int>> find_isomorphism(const RigidGraph& from, const RigidGraph& to);

RigidGraph relabel(const RigidGraph& g, const std::vector<int>& phi, std::string name = {});

}  // namespace rigid
