#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rigid/algebra/lengths.hpp"
#include "rigid/solver/solution.hpp"

namespace rigid {

enum class StartStrategy { Random, NearUnit, DegeneratePerturb, GluePerturb, ForwardInduced };

std::string_view to_string(StartStrategy s);
StartStrategy start_strategy_from_string(std::string_view s);

/// Lengths of a smaller graph pulled back along vertex_map (target vertex v -> map[v-1]).
struct GlueSource {
  RigidGraph graph;
  LengthAssignment lengths;
  std::vector<int> vertex_map;
};

/// `count` starting assignments for g in its own geometry.
///   random: i.i.d. in [0.5, 2] (chords in [0.5, 1.9] on the sphere)
///   near-unit: 1 + U[1e-5, 5e-4]
///   degenerate-perturb: edge classes (orbits under the automorphisms fixing the first
///     vertex of maximum degree) with lengths maximizing the smallest triangle and
///     tetrahedron slack, perturbed by 1e-3 relative
///   glue-perturb: edges of glued vertices get 5% of the mean source length; 1e-3 relative
///   forward-induced: lengths of random realizations
std::vector<LengthAssignment> heuristic_starts(const RigidGraph& g, StartStrategy strategy, int count,
                                               std::uint64_t seed, const std::optional<GlueSource>& glue = {});

/// Separate edge classes used by degenerate-perturb, each sorted.
std::vector<std::vector<Edge>> edge_classes(const RigidGraph& g);

struct WalkScore {
  int real = 0;
  double penalty = 0.0;  // sum over non-real solutions of max(0, max|Im| - tau)

  bool better_than(const WalkScore& o) const {
    return real != o.real ? real > o.real : penalty < o.penalty;
  }
};

struct WalkResult {
  LengthAssignment best;
  WalkScore score;
  int accepted = 0;
  std::vector<int> history;  // best real count after each step
};

/// Random relative perturbations (step 1e-3, x0.9 after every 50 steps without gain),
/// accepted when the score improves. Counts are real embeddings tracked from generic.
WalkResult stochastic_walk(const SolutionSet& generic, const LengthAssignment& start, int steps, std::uint64_t seed,
                           double tau_im = kTauIm);

}  // namespace rigid
