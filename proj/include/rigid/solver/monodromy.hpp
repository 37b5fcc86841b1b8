#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <utility>
#include <vector>

#include "rigid/algebra/system.hpp"
#include "rigid/solver/solution.hpp"
#include "rigid/solver/tracker.hpp"

namespace rigid {

struct SeedRealization {
  LengthAssignment lengths;
  Solution solution;
  Eigen::MatrixXd points;  // ambient x n configuration that induced the lengths
};

/// Random configuration in the pinned frame (unit vectors on the sphere); lengths induced
/// from it, solution exact by construction.
SeedRealization seed_realization(const PolynomialSystem& sys, std::uint64_t seed);

struct MonodromyOptions {
  std::uint64_t seed = 1;
  std::optional<int> known_count;
  int stable_rounds = 12;
  int max_loops = 400;
  TrackerOptions tracker;
};

/// Generic solution set by triangle loops through random complex parameter points.
SolutionSet monodromy_solve(std::shared_ptr<const PolynomialSystem> sys, const MonodromyOptions& opts = {});

struct HomotopyOptions {
  std::uint64_t seed = 1;
  int retries = 3;
  TrackerOptions tracker;
};

/// Tracks every solution of `set` to the parameters of `target`.
SolutionSet parameter_homotopy(const SolutionSet& set, const LengthAssignment& target,
                               const HomotopyOptions& opts = {});
SolutionSet parameter_homotopy(const SolutionSet& set, const Eigen::VectorXcd& target,
                               const HomotopyOptions& opts = {});

struct RealCount {
  int real = 0;          // at tau_im
  int real_strict = 0;   // at 1e-15 after polish
  std::vector<int> real_indices;
};

/// Refines (with double-double polish for borderline imaginary parts) and counts real solutions.
/// Updates classifications in place.
RealCount count_real(SolutionSet& set, double tau_im = kTauIm);

struct SideConditionTally {
  int satisfied = 0;  // every condition with slack >= 0
  int near = 0;       // some slack in (-tau, 0), none below
  int violated = 0;   // some slack <= -tau
  std::vector<SideConditionReport> reports;  // parallel to the indices tallied
};

/// Side conditions of the real solutions `indices`. Cayley-Menger systems use their own
/// inequalities; sphere systems check the distance conditions of the realized configuration.
SideConditionTally side_condition_tally(const SolutionSet& set, const std::vector<int>& indices,
                                        double tau = 1e-8);

}  // namespace rigid
