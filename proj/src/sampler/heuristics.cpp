#include "rigid/sampler/heuristics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "rigid/sampler/coupler.hpp"
#include "rigid/solver/monodromy.hpp"

namespace rigid {

std::string_view to_string(StartStrategy s) {
  switch (s) {
    case StartStrategy::Random: return "random";
    case StartStrategy::NearUnit: return "near-unit";
    case StartStrategy::DegeneratePerturb: return "degenerate-perturb";
    case StartStrategy::GluePerturb: return "glue-perturb";
    case StartStrategy::ForwardInduced: return "forward-induced";
  }
  return "?";
}

StartStrategy start_strategy_from_string(std::string_view s) {
  for (StartStrategy k : {StartStrategy::Random, StartStrategy::NearUnit, StartStrategy::DegeneratePerturb,
                          StartStrategy::GluePerturb, StartStrategy::ForwardInduced})
    if (s == to_string(k)) return k;
  throw SamplerError("unknown start strategy '" + std::string(s) + "'");
}

namespace {

// Automorphisms of g mapping `fixed` to itself, by backtracking.
std::vector<std::vector<int>> automorphisms_fixing(const RigidGraph& g, int fixed) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> out;
  std::vector<int> img(n + 1, 0);
  std::vector<bool> used(n + 1, false);
  std::function<void(int)> assign = [&](int v) {
    if (out.size() >= 5000) return;
    if (v > n) {
      out.push_back(img);
      return;
    }
    for (int w = 1; w <= n; ++w) {
      if (used[w] || g.degree(w) != g.degree(v) || (v == fixed && w != fixed) || (w == fixed && v != fixed))
        continue;
      bool ok = true;
      for (int x = 1; x < v && ok; ++x)
        if (g.has_edge(v, x) != g.has_edge(w, img[x])) ok = false;
      if (!ok) continue;
      img[v] = w;
      used[w] = true;
      assign(v + 1);
      used[w] = false;
    }
  };
  assign(1);
  return out;
}

int max_degree_vertex(const RigidGraph& g) {
  int best = 1;
  for (int v = 2; v <= g.vertex_count(); ++v)
    if (g.degree(v) > g.degree(best)) best = v;
  return best;
}

double cm4(const std::array<std::array<double, 4>, 4>& d2) {
  Eigen::Matrix<double, 5, 5> m;
  m.setOnes();
  m(0, 0) = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m(i + 1, j + 1) = d2[i][j];
  return m.determinant();
}

// Smallest relative slack over the triangles (and, in space, tetrahedra) spanned by edges.
double min_slack(const RigidGraph& g, const std::map<Edge, double>& l) {
  const int n = g.vertex_count();
  double worst = std::numeric_limits<double>::infinity();
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) {
      if (!g.has_edge(a, b)) continue;
      for (int c = b + 1; c <= n; ++c) {
        if (!g.has_edge(a, c) || !g.has_edge(b, c)) continue;
        const double x = l.at(Edge(a, b)), y = l.at(Edge(a, c)), z = l.at(Edge(b, c));
        worst = std::min(worst, std::min({x + y - z, x + z - y, y + z - x}) / (x + y + z));
        if (g.geometry() != Geometry::Space) continue;
        for (int d = c + 1; d <= n; ++d) {
          if (!g.has_edge(a, d) || !g.has_edge(b, d) || !g.has_edge(c, d)) continue;
          const int v[4] = {a, b, c, d};
          std::array<std::array<double, 4>, 4> d2{};
          double mean = 0.0;
          for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j)
              if (i != j) {
                const double e = l.at(Edge(v[i], v[j]));
                d2[i][j] = e * e;
                mean += e * e / 12.0;
              }
          worst = std::min(worst, cm4(d2) / (288.0 * mean * mean * mean));
        }
      }
    }
  return std::isfinite(worst) ? worst : 0.0;
}

double chord_cap(Geometry g) { return g == Geometry::Sphere ? 1.9 : std::numeric_limits<double>::infinity(); }

LengthAssignment perturbed(const RigidGraph& g, const std::map<Edge, double>& base, double rel, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-rel, rel);
  std::map<Edge, double> v;
  for (const auto& e : g.edges()) v[e] = std::min(base.at(e) * (1.0 + u(rng)), chord_cap(g.geometry()));
  return LengthAssignment(g.geometry(), std::move(v));
}

std::map<Edge, double> degenerate_lengths(const RigidGraph& g) {
  const std::vector<std::vector<Edge>> classes = edge_classes(g);
  std::vector<double> value(classes.size(), 1.0);
  auto lengths = [&] {
    std::map<Edge, double> l;
    for (std::size_t k = 0; k < classes.size(); ++k)
      for (const Edge& e : classes[k]) l[e] = std::min(value[k], chord_cap(g.geometry()));
    return l;
  };
  double best = min_slack(g, lengths());
  // Coordinate search in log scale; the first class fixes the scale.
  for (double step = 0.5; step > 1e-4; step *= 0.5) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t k = 1; k < classes.size(); ++k)
        for (double f : {1.0 + step, 1.0 / (1.0 + step)}) {
          const double old = value[k];
          value[k] = old * f;
          const double s = min_slack(g, lengths());
          if (s > best + 1e-12) {
            best = s;
            improved = true;
          } else {
            value[k] = old;
          }
        }
    }
  }
  return lengths();
}

}  // namespace

std::vector<std::vector<Edge>> edge_classes(const RigidGraph& g) {
  const auto autos = automorphisms_fixing(g, max_degree_vertex(g));
  const auto& edges = g.edges();
  std::vector<int> parent(edges.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int i) { return parent[i] == i ? i : parent[i] = find(parent[i]); };
  for (const auto& a : autos)
    for (std::size_t i = 0; i < edges.size(); ++i) {
      const int j = *g.edge_index(Edge(a[edges[i].a], a[edges[i].b]));
      parent[find(static_cast<int>(i))] = find(j);
    }
  std::map<int, std::vector<Edge>> groups;
  for (std::size_t i = 0; i < edges.size(); ++i) groups[find(static_cast<int>(i))].push_back(edges[i]);
  std::vector<std::vector<Edge>> out;
  for (auto& [root, es] : groups) {
    std::sort(es.begin(), es.end());
    out.push_back(std::move(es));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LengthAssignment> heuristic_starts(const RigidGraph& g, StartStrategy strategy, int count,
                                               std::uint64_t seed, const std::optional<GlueSource>& glue) {
  if (count < 0) throw SamplerError("negative sample count");
  std::mt19937_64 rng(seed);
  std::vector<LengthAssignment> out;
  const Geometry geo = g.geometry();
  switch (strategy) {
    case StartStrategy::Random: {
      std::uniform_real_distribution<double> u(0.5, geo == Geometry::Sphere ? 1.9 : 2.0);
      for (int k = 0; k < count; ++k) {
        std::map<Edge, double> v;
        for (const auto& e : g.edges()) v[e] = u(rng);
        out.emplace_back(geo, std::move(v));
      }
      break;
    }
    case StartStrategy::NearUnit: {
      std::uniform_real_distribution<double> u(1e-5, 5e-4);
      for (int k = 0; k < count; ++k) {
        std::map<Edge, double> v;
        for (const auto& e : g.edges()) v[e] = 1.0 + u(rng);
        out.emplace_back(geo, std::move(v));
      }
      break;
    }
    case StartStrategy::DegeneratePerturb: {
      const std::map<Edge, double> base = degenerate_lengths(g);
      for (int k = 0; k < count; ++k) out.push_back(perturbed(g, base, 1e-3, rng));
      break;
    }
    case StartStrategy::GluePerturb: {
      if (!glue) throw SamplerError("glue-perturb needs a source graph and vertex map");
      const RigidGraph& src = glue->graph;
      glue->lengths.validate_for(src);
      if (static_cast<int>(glue->vertex_map.size()) != g.vertex_count())
        throw SamplerError("vertex map must list an image for every vertex");
      for (int m : glue->vertex_map)
        if (m < 1 || m > src.vertex_count()) throw SamplerError("vertex map image out of range");
      double mean = 0.0;
      for (const auto& [e, v] : glue->lengths.values()) mean += v / static_cast<double>(glue->lengths.size());
      std::map<Edge, double> base;
      for (const auto& e : g.edges()) {
        const int a = glue->vertex_map[e.a - 1], b = glue->vertex_map[e.b - 1];
        if (a == b) {
          base[e] = 0.05 * mean;
        } else {
          if (!src.has_edge(a, b))
            throw SamplerError("vertex map sends edge " + edge_key(e) + " to a non-edge");
          base[e] = glue->lengths.at(a, b);
        }
      }
      for (int k = 0; k < count; ++k) out.push_back(perturbed(g, base, 1e-3, rng));
      break;
    }
    case StartStrategy::ForwardInduced: {
      const PolynomialSystem sys = build_sphere_system(g);
      for (int k = 0; k < count; ++k) out.push_back(seed_realization(sys, seed + static_cast<std::uint64_t>(k)).lengths);
      break;
    }
  }
  return out;
}

namespace {

WalkScore score_of(SolutionSet& set, double tau_im) {
  WalkScore s;
  const RealCount rc = count_real(set, tau_im);
  s.real = rc.real * set.system->embeddings_per_solution;
  for (const Solution& x : set.solutions)
    if (x.cls != SolutionClass::Real) s.penalty += std::max(0.0, x.max_imag - tau_im);
  return s;
}

}  // namespace

WalkResult stochastic_walk(const SolutionSet& generic, const LengthAssignment& start, int steps, std::uint64_t seed,
                           double tau_im) {
  if (!generic.evidence.complete()) throw SamplerError("stochastic_walk needs a complete generic solution set");
  const RigidGraph& g = generic.system->graph;
  start.validate_for(g);
  WalkResult r;
  r.best = start;
  HomotopyOptions ho;
  ho.seed = seed;
  SolutionSet current = parameter_homotopy(generic, start, ho);
  r.score = score_of(current, tau_im);
  if (steps <= 0) return r;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double sigma = 1e-3;
  int idle = 0;
  for (int k = 0; k < steps; ++k) {
    LengthAssignment next = r.best;
    bool valid = true;
    for (const auto& e : g.edges()) {
      const double v = r.best.at(e) * (1.0 + sigma * normal(rng));
      if (!(v > 0.0) || (g.geometry() == Geometry::Sphere && !(v < 2.0))) valid = false;
      next.set(e, v);
    }
    bool improved = false;
    if (valid) {
      ho.seed = seed + 7919 * static_cast<std::uint64_t>(k + 1);
      SolutionSet set = parameter_homotopy(current.evidence.complete() ? current : generic, next, ho);
      if (!set.evidence.complete()) set = parameter_homotopy(generic, next, ho);
      const WalkScore s = score_of(set, tau_im);
      if (set.evidence.complete() && s.better_than(r.score)) {
        r.best = next;
        r.score = s;
        current = std::move(set);
        ++r.accepted;
        improved = true;
      }
    }
    idle = improved ? 0 : idle + 1;
    if (idle > 0 && idle % 50 == 0) sigma *= 0.9;
    r.history.push_back(r.score.real);
  }
  return r;
}

}  // namespace rigid
