#include "rigid/sampler/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <ostream>
#include <set>
#include <tuple>

#include "rigid/io/json_io.hpp"
#include "rigid/solver/monodromy.hpp"
#include "rigid/solver/parallel.hpp"

namespace rigid {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t mix(std::uint64_t seed, std::uint64_t k) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (k + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

int embeddings_of(SolutionSet& set) { return count_real(set).real * set.system->embeddings_per_solution; }

bool angle_order(const SamplerCandidate& a, const SamplerCandidate& b) {
  return std::tie(a.phi, a.theta) < std::tie(b.phi, b.theta);
}

struct GridPoint {
  double phi, theta;
};

// Evaluates points in order, warm-starting each homotopy from the previous complete set.
std::vector<std::optional<SamplerCandidate>> run_chain(const SolutionSet& generic, const LengthAssignment& lambda,
                                                       const CouplerSubgraph& sg,
                                                       const std::vector<GridPoint>& pts, std::uint64_t seed) {
  std::vector<std::optional<SamplerCandidate>> out(pts.size());
  const SolutionSet* from = &generic;
  SolutionSet previous;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    LengthAssignment l;
    try {
      l = lengths_from_angles(lambda, sg, pts[i].phi, pts[i].theta);
    } catch (const SamplerError&) {
      continue;
    }
    HomotopyOptions ho;
    ho.seed = mix(seed, i);
    SolutionSet set = parameter_homotopy(*from, l, ho);
    if (!set.evidence.complete() && from != &generic) set = parameter_homotopy(generic, l, ho);
    SamplerCandidate c{pts[i].phi, pts[i].theta, l, embeddings_of(set)};
    out[i] = std::move(c);
    if (set.evidence.complete()) {
      previous = std::move(set);
      from = &previous;
    } else {
      from = &generic;
    }
  }
  return out;
}

// Splits pts into contiguous batches evaluated concurrently.
std::vector<std::optional<SamplerCandidate>> run_batches(const SolutionSet& generic, const LengthAssignment& lambda,
                                                         const CouplerSubgraph& sg,
                                                         const std::vector<GridPoint>& pts, int batches,
                                                         std::uint64_t seed) {
  const std::size_t b = std::max<std::size_t>(1, std::min<std::size_t>(batches, pts.size()));
  std::vector<std::vector<std::optional<SamplerCandidate>>> parts(b);
  parallel_for(b, [&](std::size_t k) {
    const std::size_t lo = pts.size() * k / b, hi = pts.size() * (k + 1) / b;
    std::vector<GridPoint> sub(pts.begin() + lo, pts.begin() + hi);
    parts[k] = run_chain(generic, lambda, sg, sub, mix(seed, 1000 + k));
  });
  std::vector<std::optional<SamplerCandidate>> out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

}  // namespace

void SearchConfig::validate() const {
  if (grid_phi < 2 || grid_theta < 2) throw SamplerError("grid sizes must be at least 2");
  if (refine_grid < 1 || refine_radius < 0.0) throw SamplerError("bad refinement grid");
  if (cluster_eps < 0.0) throw SamplerError("cluster epsilon must be positive");
  if (min_pts < 1) throw SamplerError("minPts must be positive");
  if (batches < 1) throw SamplerError("batches must be positive");
}

double SearchConfig::effective_eps() const {
  if (cluster_eps > 0.0) return cluster_eps;
  return 2.0 * std::hypot(kPi / grid_phi, kPi / grid_theta);
}

int real_embedding_count(const SolutionSet& generic, const LengthAssignment& lengths, std::uint64_t seed) {
  HomotopyOptions ho;
  ho.seed = seed;
  SolutionSet set = parameter_homotopy(generic, lengths, ho);
  return embeddings_of(set);
}

std::optional<SamplerCandidate> evaluate_candidate(const SolutionSet& generic, const LengthAssignment& lambda,
                                                   const CouplerSubgraph& sg, double phi, double theta,
                                                   std::uint64_t seed) {
  LengthAssignment l;
  try {
    l = lengths_from_angles(lambda, sg, phi, theta);
  } catch (const SamplerError&) {
    return std::nullopt;
  }
  const int count = real_embedding_count(generic, l, seed);
  return SamplerCandidate{phi, theta, std::move(l), count};
}

std::vector<SamplerCandidate> sample_subgraph(const SolutionSet& generic, const LengthAssignment& lambda,
                                              const CouplerSubgraph& sg, const SearchConfig& cfg) {
  cfg.validate();
  if (!generic.evidence.complete()) throw SamplerError("sample_subgraph needs a complete generic solution set");
  const double dphi = kPi / cfg.grid_phi, dtheta = kPi / cfg.grid_theta;

  std::vector<GridPoint> coarse;
  for (int i = 0; i < cfg.grid_phi; ++i)
    for (int jj = 0; jj < cfg.grid_theta; ++jj) {
      const int j = (i % 2 == 0) ? jj : cfg.grid_theta - 1 - jj;
      coarse.push_back({-kPi / 2 + (i + 0.5) * dphi, (j + 0.5) * dtheta});
    }
  std::vector<std::optional<SamplerCandidate>> results = run_batches(generic, lambda, sg, coarse, cfg.batches, cfg.seed);

  int coarse_max = -1;
  for (const auto& c : results)
    if (c) coarse_max = std::max(coarse_max, c->real_count);
  if (coarse_max < 0) return {};

  // Refinement lattice in units of the refinement spacing, shared between neighbouring maxima.
  if (cfg.refine_grid > 1 && cfg.refine_radius > 0.0) {
    const int half = cfg.refine_grid / 2;
    const double step = cfg.refine_radius / std::max(1, half);
    std::set<std::pair<long, long>> seen;
    std::vector<std::pair<long, long>> order;
    const double sub = 1.0 / step;  // lattice points per coarse cell
    for (std::size_t k = 0; k < coarse.size(); ++k) {
      if (!results[k] || results[k]->real_count != coarse_max) continue;
      const double ci = (coarse[k].phi + kPi / 2) / dphi - 0.5, cj = coarse[k].theta / dtheta - 0.5;
      seen.insert({std::lround(ci * sub), std::lround(cj * sub)});
    }
    std::set<std::pair<long, long>> centres = seen;
    for (const auto& [ci, cj] : centres)
      for (int a = -half; a <= half; ++a)
        for (int b = -half; b <= half; ++b) {
          const std::pair<long, long> q{ci + a, cj + b};
          if (seen.insert(q).second) order.push_back(q);
        }
    std::sort(order.begin(), order.end());
    // Serpentine over the refinement lattice.
    std::vector<GridPoint> fine;
    for (std::size_t s = 0; s < order.size();) {
      std::size_t e = s;
      while (e < order.size() && order[e].first == order[s].first) ++e;
      const bool reverse = (order[s].first % 2) != 0;
      for (std::size_t k = 0; k < e - s; ++k) {
        const auto& q = order[reverse ? e - 1 - k : s + k];
        const double phi = -kPi / 2 + (q.first / sub + 0.5) * dphi;
        const double theta = (q.second / sub + 0.5) * dtheta;
        if (phi > -kPi / 2 && phi < kPi / 2 && theta > 0.0 && theta < kPi) fine.push_back({phi, theta});
      }
      s = e;
    }
    auto more = run_batches(generic, lambda, sg, fine, cfg.batches, mix(cfg.seed, 77));
    for (auto& c : more) results.push_back(std::move(c));
  }

  int best = -1;
  for (const auto& c : results)
    if (c) best = std::max(best, c->real_count);
  std::vector<SamplerCandidate> out;
  for (auto& c : results)
    if (c && c->real_count == best) out.push_back(std::move(*c));
  std::sort(out.begin(), out.end(), angle_order);
  return out;
}

std::vector<SamplerCandidate> cluster_candidates(const std::vector<SamplerCandidate>& cands, double eps,
                                                 int min_pts, const CandidateEvaluator& eval) {
  const std::size_t n = cands.size();
  auto dist = [&](std::size_t a, std::size_t b) {
    return std::hypot(cands[a].phi - cands[b].phi, cands[a].theta - cands[b].theta);
  };
  auto neighbours = [&](std::size_t a) {
    std::vector<std::size_t> nb;
    for (std::size_t b = 0; b < n; ++b)
      if (dist(a, b) <= eps) nb.push_back(b);
    return nb;
  };
  constexpr int kUnvisited = -2, kNoise = -1;
  std::vector<int> label(n, kUnvisited);
  int clusters = 0;
  for (std::size_t a = 0; a < n; ++a) {
    if (label[a] != kUnvisited) continue;
    std::vector<std::size_t> nb = neighbours(a);
    if (static_cast<int>(nb.size()) < min_pts) {
      label[a] = kNoise;
      continue;
    }
    const int id = clusters++;
    label[a] = id;
    std::vector<std::size_t> queue(nb.begin(), nb.end());
    for (std::size_t q = 0; q < queue.size(); ++q) {
      const std::size_t b = queue[q];
      if (label[b] == kNoise) label[b] = id;
      if (label[b] != kUnvisited) continue;
      label[b] = id;
      std::vector<std::size_t> nb2 = neighbours(b);
      if (static_cast<int>(nb2.size()) >= min_pts) queue.insert(queue.end(), nb2.begin(), nb2.end());
    }
  }

  std::vector<SamplerCandidate> reps;
  for (std::size_t a = 0; a < n; ++a)
    if (label[a] == kNoise) reps.push_back(cands[a]);
  for (int id = 0; id < clusters; ++id) {
    std::vector<std::size_t> members;
    double phi = 0.0, theta = 0.0;
    int count = 0;
    for (std::size_t a = 0; a < n; ++a)
      if (label[a] == id) {
        members.push_back(a);
        phi += cands[a].phi;
        theta += cands[a].theta;
        count = std::max(count, cands[a].real_count);
      }
    phi /= static_cast<double>(members.size());
    theta /= static_cast<double>(members.size());
    if (eval) {
      if (auto c = eval(phi, theta); c && c->real_count >= count) {
        reps.push_back(std::move(*c));
        continue;
      }
    }
    std::size_t nearest = members.front();
    for (std::size_t a : members)
      if (std::hypot(cands[a].phi - phi, cands[a].theta - theta) <
          std::hypot(cands[nearest].phi - phi, cands[nearest].theta - theta))
        nearest = a;
    reps.push_back(cands[nearest]);
  }
  std::sort(reps.begin(), reps.end(), angle_order);
  return reps;
}

namespace {

struct Searcher {
  const SolutionSet& generic;
  const SearchConfig& cfg;
  SearchResult result;
  int runs = 0;

  bool done() const { return result.reached_target; }

  int record(int parent, const std::optional<CouplerSubgraph>& sg, const SamplerCandidate& c) {
    const int id = static_cast<int>(result.trace.size());
    result.trace.push_back({id, parent, sg, c.phi, c.theta, c.lengths, c.real_count});
    if (c.real_count > result.best_count) {
      result.best_count = c.real_count;
      result.best = c.lengths;
    }
    if (cfg.target && result.best_count >= *cfg.target) result.reached_target = true;
    return id;
  }

  // Improving representatives of one sampling run, best first.
  std::vector<SamplerCandidate> improve(const LengthAssignment& lambda, int count, const CouplerSubgraph& sg) {
    SearchConfig local = cfg;
    local.seed = mix(cfg.seed, static_cast<std::uint64_t>(runs++));
    std::vector<SamplerCandidate> cands = sample_subgraph(generic, lambda, sg, local);
    if (cands.empty() || cands.front().real_count <= count) return {};
    const std::uint64_t eval_seed = mix(local.seed, 5);
    return cluster_candidates(cands, cfg.effective_eps(), cfg.min_pts, [&](double phi, double theta) {
      return evaluate_candidate(generic, lambda, sg, phi, theta, eval_seed);
    });
  }
};

SamplerCandidate root_candidate(const SolutionSet& generic, const LengthAssignment& lambda, std::uint64_t seed) {
  return SamplerCandidate{0.0, 0.0, lambda, real_embedding_count(generic, lambda, seed)};
}

}  // namespace

SearchResult linear_search(const SolutionSet& generic, const LengthAssignment& lambda,
                           const std::vector<CouplerSubgraph>& subgraphs, const SearchConfig& cfg) {
  if (subgraphs.empty()) throw SamplerError("linear_search needs at least one subgraph");
  cfg.validate();
  Searcher s{generic, cfg, {}};
  const SamplerCandidate root = root_candidate(generic, lambda, cfg.seed);
  s.result.best = lambda;
  s.result.best_count = root.real_count;
  if (cfg.target && root.real_count >= *cfg.target) {
    s.result.reached_target = true;
    return s.result;
  }
  s.record(-1, std::nullopt, root);
  const int k = static_cast<int>(subgraphs.size());
  std::function<void(const LengthAssignment&, int, int, int, int)> visit =
      [&](const LengthAssignment& l, int count, int node, int index, int idle) {
        if (s.done() || idle >= k || s.result.expansions >= cfg.max_iterations) return;
        const CouplerSubgraph& sg = subgraphs[index % k];
        ++s.result.expansions;
        std::vector<SamplerCandidate> reps = s.improve(l, count, sg);
        if (reps.empty()) {
          visit(l, count, node, index + 1, idle + 1);
          return;
        }
        std::stable_sort(reps.begin(), reps.end(),
                         [](const auto& a, const auto& b) { return a.real_count > b.real_count; });
        for (const SamplerCandidate& r : reps) {
          const int id = s.record(node, sg, r);
          if (s.done()) return;
          visit(r.lengths, r.real_count, id, index + 1, 0);
          if (s.done()) return;
        }
      };
  visit(lambda, root.real_count, 0, 0, 0);
  return s.result;
}

SearchResult tree_search(const SolutionSet& generic, const LengthAssignment& lambda, const SearchConfig& cfg) {
  cfg.validate();
  if (!generic.system) throw SamplerError("tree_search needs a solution set");
  std::vector<CouplerSubgraph> subgraphs = cfg.subgraphs;
  if (subgraphs.empty()) subgraphs = find_coupler_subgraphs(generic.system->graph, cfg.relax_degree_four);
  if (subgraphs.empty()) throw SamplerError("graph has no coupler subgraph");
  Searcher s{generic, cfg, {}};
  const SamplerCandidate root = root_candidate(generic, lambda, cfg.seed);
  s.result.best = lambda;
  s.result.best_count = root.real_count;
  if (cfg.target && root.real_count >= *cfg.target) {
    s.result.reached_target = true;
    return s.result;
  }
  s.record(-1, std::nullopt, root);
  std::function<void(const LengthAssignment&, int, int)> expand = [&](const LengthAssignment& l, int count,
                                                                       int node) {
    if (s.done() || s.result.expansions >= cfg.max_iterations) return;
    ++s.result.expansions;
    std::vector<std::pair<int, SamplerCandidate>> children;  // trace id, candidate
    for (const CouplerSubgraph& sg : subgraphs) {
      for (SamplerCandidate& r : s.improve(l, count, sg)) {
        const int id = s.record(node, sg, r);
        if (s.done()) return;
        children.emplace_back(id, std::move(r));
      }
    }
    std::stable_sort(children.begin(), children.end(),
                     [](const auto& a, const auto& b) { return a.second.real_count > b.second.real_count; });
    for (const auto& [id, c] : children) {
      expand(c.lengths, c.real_count, id);
      if (s.done()) return;
    }
  };
  expand(lambda, root.real_count, 0);
  return s.result;
}

void write_trace_jsonl(std::ostream& os, const std::vector<TraceEntry>& trace) {
  for (const TraceEntry& e : trace) {
    Json j;
    j["node"] = e.node;
    j["parent"] = e.parent;
    j["subgraph"] = e.subgraph ? Json(to_string(*e.subgraph)) : Json(nullptr);
    j["phi"] = e.phi;
    j["theta"] = e.theta;
    j["count"] = e.count;
    Json l = Json::object();
    for (const auto& [edge, v] : e.lengths.values()) l[edge_key(edge)] = v;
    j["lengths"] = l;
    os << dump17(j) << '\n';
  }
}

}  // namespace rigid
