#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "rigid/sampler/coupler.hpp"
#include "rigid/solver/solution.hpp"

namespace rigid {

struct SamplerCandidate {
  double phi = 0.0;    // (-pi/2, pi/2)
  double theta = 0.0;  // (0, pi)
  LengthAssignment lengths;
  int real_count = 0;  // real embeddings
};

struct SearchConfig {
  int grid_phi = 20;
  int grid_theta = 20;
  double refine_radius = 1.0;  // in coarse cells
  int refine_grid = 5;
  double cluster_eps = 0.0;    // 0: two coarse-cell diagonals
  int min_pts = 3;
  std::optional<int> target;
  int max_iterations = 50;     // node expansions (tree) or sampling runs (linear)
  std::uint64_t seed = 1;
  bool relax_degree_four = false;
  int batches = 2;
  std::vector<CouplerSubgraph> subgraphs;  // empty: all suitable subgraphs

  void validate() const;  // throws SamplerError
  double effective_eps() const;
};

/// Real embeddings of generic's graph at the given lengths, tracked from generic.
/// Returns -1 if the tracked set is incomplete and it could not be completed.
int real_embedding_count(const SolutionSet& generic, const LengthAssignment& lengths, std::uint64_t seed);

/// Candidate at (phi, theta) around lambda, or nullopt if the angles are rejected.
std::optional<SamplerCandidate> evaluate_candidate(const SolutionSet& generic, const LengthAssignment& lambda,
                                                   const CouplerSubgraph& sg, double phi, double theta,
                                                   std::uint64_t seed);

/// Coarse grid in serpentine order, then refinement around every coarse maximum. Returns
/// every candidate attaining the overall maximum, ordered by (phi, theta).
std::vector<SamplerCandidate> sample_subgraph(const SolutionSet& generic, const LengthAssignment& lambda,
                                              const CouplerSubgraph& sg, const SearchConfig& cfg);

using CandidateEvaluator = std::function<std::optional<SamplerCandidate>(double phi, double theta)>;

/// DBSCAN in (phi, theta). Each cluster is represented by its centre of gravity when the
/// evaluator confirms it scores at least the cluster count, otherwise by the member nearest
/// the centre. Noise points represent themselves.
std::vector<SamplerCandidate> cluster_candidates(const std::vector<SamplerCandidate>& cands, double eps,
                                                 int min_pts, const CandidateEvaluator& eval = {});

struct TraceEntry {
  int node = 0;
  int parent = -1;
  std::optional<CouplerSubgraph> subgraph;  // none for the root
  double phi = 0.0, theta = 0.0;
  LengthAssignment lengths;
  int count = 0;
};

struct SearchResult {
  LengthAssignment best;
  int best_count = 0;
  int expansions = 0;
  bool reached_target = false;
  std::vector<TraceEntry> trace;
};

/// Samples subgraphs in the given order, wrapping around; representatives that improve
/// the count are followed depth-first. Stops at the target or after a cycle without gain.
SearchResult linear_search(const SolutionSet& generic, const LengthAssignment& lambda,
                           const std::vector<CouplerSubgraph>& subgraphs, const SearchConfig& cfg);

/// Every node is sampled with every subgraph; children with a strictly larger count are
/// expanded depth-first, best first.
SearchResult tree_search(const SolutionSet& generic, const LengthAssignment& lambda, const SearchConfig& cfg);

/// One JSON object per line: node, parent, subgraph, phi, theta, count, lengths.
void write_trace_jsonl(std::ostream& os, const std::vector<TraceEntry>& trace);

}  // namespace rigid
