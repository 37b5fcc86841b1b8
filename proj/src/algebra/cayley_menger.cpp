#include "rigid/algebra/cayley_menger.hpp"

#include <algorithm>
#include <random>

#include "rigid/graph/global_rigidity.hpp"

namespace rigid {

namespace {

enum class Kind { Zero, One, Known, Variable, Unknown };

struct Entry {
  Kind kind = Kind::Unknown;
  int index = -1;  // edge index for Known, variable index for Variable
};

// Bordered matrix of G with unknown distances S.
class Bordered {
 public:
  Bordered(const RigidGraph& g, const std::vector<Edge>& vars)
      : n_(g.vertex_count()), centre_(g.geometry() == Geometry::Sphere) {
    const int m = size();
    entries_.assign(m, std::vector<Entry>(m));
    const auto& es = g.edges();
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        Entry& e = entries_[i][j];
        if (i == j) {
          e.kind = Kind::Zero;
        } else if (i == 0 || j == 0 || (centre_ && (i == n_ + 1 || j == n_ + 1))) {
          e.kind = Kind::One;
        } else {
          const Edge uv(i, j);
          if (auto it = std::find(es.begin(), es.end(), uv); it != es.end()) {
            e.kind = Kind::Known;
            e.index = static_cast<int>(it - es.begin());
          } else if (auto jt = std::find(vars.begin(), vars.end(), uv); jt != vars.end()) {
            e.kind = Kind::Variable;
            e.index = static_cast<int>(jt - vars.begin());
          }
        }
      }
  }

  int size() const { return n_ + 1 + (centre_ ? 1 : 0); }
  int points() const { return n_ + (centre_ ? 1 : 0); }
  const Entry& at(int i, int j) const { return entries_[i][j]; }

  // All entries known or variable, at least one variable.
  bool usable(const CMMinor& m) const {
    bool any = false;
    for (int i : m.rows)
      for (int j : m.cols) {
        const Kind k = entries_[i][j].kind;
        if (k == Kind::Unknown) return false;
        if (k == Kind::Variable) any = true;
      }
    return any;
  }

 private:
  int n_;
  bool centre_;
  std::vector<std::vector<Entry>> entries_;
};

std::vector<std::vector<int>> combinations(int from, int to, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int v = start; v <= to; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(from);
  return out;
}

// Candidate minors in a fixed order: principal first, then the others.
std::vector<CMMinor> candidate_minors(const Bordered& b, int order) {
  const auto sets = combinations(1, b.points(), order - 1);
  std::vector<CMMinor> principal, other;
  for (std::size_t r = 0; r < sets.size(); ++r)
    for (std::size_t c = r; c < sets.size(); ++c) {
      CMMinor m;
      m.rows.push_back(0);
      m.cols.push_back(0);
      m.rows.insert(m.rows.end(), sets[r].begin(), sets[r].end());
      m.cols.insert(m.cols.end(), sets[c].begin(), sets[c].end());
      if (!b.usable(m)) continue;
      (r == c ? principal : other).push_back(std::move(m));
    }
  principal.insert(principal.end(), other.begin(), other.end());
  return principal;
}

struct Realization {
  Eigen::MatrixXd squared;  // over points 1..n (+ centre), 1-based with row/col 0 unused
};

Realization random_realization(const RigidGraph& g, std::uint64_t seed) {
  const int n = g.vertex_count();
  const bool centre = g.geometry() == Geometry::Sphere;
  const int dim = ambient_dimension(g.geometry());
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd pts(dim, n + (centre ? 1 : 0));
  for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = normal(rng);
  if (centre) {
    for (int v = 0; v < n; ++v) pts.col(v).normalize();
    pts.col(n).setZero();
  }
  Realization r;
  const int m = static_cast<int>(pts.cols());
  r.squared = Eigen::MatrixXd::Zero(m + 1, m + 1);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) r.squared(i + 1, j + 1) = (pts.col(i) - pts.col(j)).squaredNorm();
  return r;
}

double minor_value(const Bordered& b, const CMMinor& m, const Eigen::MatrixXd& sq, const std::vector<Edge>& vars,
                   int shifted, double delta) {
  const int k = static_cast<int>(m.rows.size());
  Eigen::MatrixXd a(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const int i = m.rows[r], j = m.cols[c];
      const Entry& e = b.at(i, j);
      double v = 0.0;
      if (e.kind == Kind::One) v = 1.0;
      else if (e.kind != Kind::Zero) v = sq(i, j);
      if (e.kind == Kind::Variable && e.index == shifted) v += delta;
      a(r, c) = v;
    }
  (void)vars;
  return a.determinant();
}

// Greedy selection of |vars| minors with independent gradients at the realization.
std::optional<std::vector<CMMinor>> select_minors(const RigidGraph& g, const std::vector<Edge>& vars,
                                                  std::uint64_t seed) {
  const Bordered b(g, vars);
  const int order = (g.geometry() == Geometry::Plane ? 2 : 3) + 3;
  const int k = static_cast<int>(vars.size());
  if (k == 0) return std::vector<CMMinor>{};
  const Realization real = random_realization(g, seed);
  std::vector<CMMinor> chosen;
  Eigen::MatrixXd grads(0, k);
  for (const auto& m : candidate_minors(b, order)) {
    Eigen::RowVectorXd row(k);
    // The minor is quadratic in each single variable, so the central difference is exact.
    for (int v = 0; v < k; ++v)
      row[v] = (minor_value(b, m, real.squared, vars, v, 0.5) - minor_value(b, m, real.squared, vars, v, -0.5));
    const double nrm = row.norm();
    if (!(nrm > 0.0)) continue;
    Eigen::MatrixXd next(grads.rows() + 1, k);
    next << grads, row / nrm;
    if (numerical_rank(next, 1e-8) > grads.rows()) {
      grads = next;
      chosen.push_back(m);
      if (static_cast<int>(chosen.size()) == k) return chosen;
    }
  }
  return std::nullopt;
}

// Entry polynomial: squared distance, with cosines on the sphere.
Polynomial entry_poly(const Bordered& b, int i, int j, bool sphere) {
  const Entry& e = b.at(i, j);
  switch (e.kind) {
    case Kind::Zero:
      return Polynomial();
    case Kind::One:
      return Polynomial(1.0);
    case Kind::Known: {
      const Polynomial p = Polynomial::parameter(e.index);
      return sphere ? Polynomial(2.0) - 2.0 * p : p;
    }
    case Kind::Variable: {
      const Polynomial x = Polynomial::variable(e.index);
      return sphere ? Polynomial(2.0) - 2.0 * x : x;
    }
    default:
      throw SystemError("unknown entry in a Cayley-Menger minor");
  }
}

Polynomial cosine_poly(const Bordered& b, int i, int j) {
  const Entry& e = b.at(i, j);
  return e.kind == Kind::Known ? Polynomial::parameter(e.index) : Polynomial::variable(e.index);
}

std::string pair_name(const Edge& e) { return std::to_string(e.a) + "_" + std::to_string(e.b); }

std::string join(const std::vector<int>& vs) {
  std::string s;
  for (int v : vs) s += (s.empty() ? "" : "-") + std::to_string(v);
  return s;
}

std::vector<SideCondition> inequalities(const RigidGraph& g, const std::vector<Edge>& vars) {
  const Bordered b(g, vars);
  const bool sphere = g.geometry() == Geometry::Sphere;
  const int n = g.vertex_count();
  std::vector<SideCondition> out;
  for (std::size_t k = 0; k < vars.size(); ++k) {
    const Polynomial x = Polynomial::variable(static_cast<int>(k));
    if (sphere) {
      out.push_back({Polynomial(1.0) - x, false, "y" + pair_name(vars[k]) + " <= 1"});
      out.push_back({Polynomial(1.0) + x, false, "y" + pair_name(vars[k]) + " >= -1"});
    } else {
      out.push_back({x, true, "x" + pair_name(vars[k]) + " > 0"});
    }
  }
  const int max_points = g.geometry() == Geometry::Space ? 4 : 3;
  for (int size = 3; size <= max_points; ++size)
    for (const auto& pts : combinations(1, n, size)) {
      bool known = true, any = false;
      for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j) {
          const Kind kk = b.at(pts[i], pts[j]).kind;
          if (kk == Kind::Unknown) known = false;
          if (kk == Kind::Variable) any = true;
        }
      if (!known || !any) continue;
      if (sphere) {
        const Polynomial cij = cosine_poly(b, pts[0], pts[1]), cik = cosine_poly(b, pts[0], pts[2]),
                         cjk = cosine_poly(b, pts[1], pts[2]);
        out.push_back({2.0 * cij * cik * cjk - cij * cij - cik * cik - cjk * cjk + Polynomial(1.0), false,
                       "spherical triangle " + join(pts)});
      } else {
        std::vector<std::vector<Polynomial>> sq(pts.size(), std::vector<Polynomial>(pts.size()));
        for (std::size_t i = 0; i < pts.size(); ++i)
          for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j) sq[i][j] = entry_poly(b, pts[i], pts[j], false);
        out.push_back(cayley_menger_condition(sq, (size == 3 ? "triangle " : "tetrahedron ") + join(pts)));
      }
    }
  return out;
}

int expected_dimension(const RigidGraph& g) { return g.geometry() == Geometry::Space ? 3 : 2; }

std::optional<CMSubsystem> try_subsystem(const RigidGraph& g, const std::vector<Edge>& missing,
                                         const std::vector<Edge>& vars, std::uint64_t seed) {
  const int d = expected_dimension(g);
  if (!vars.empty() && !is_globally_rigid_generic(g.with_edges(vars), d, seed)) return std::nullopt;
  auto minors = select_minors(g, vars, seed);
  if (!minors) return std::nullopt;
  CMSubsystem s;
  s.base = g;
  s.missing = missing;
  s.variables = vars;
  s.minors = std::move(*minors);
  s.inequalities = inequalities(g, vars);
  return s;
}

std::vector<Edge> non_edges(const RigidGraph& g) {
  std::vector<Edge> out;
  for (int a = 1; a <= g.vertex_count(); ++a)
    for (int b = a + 1; b <= g.vertex_count(); ++b)
      if (!g.has_edge(a, b)) out.emplace_back(a, b);
  return out;
}

}  // namespace

std::vector<CMSubsystem> find_cm_square_subsystems(const RigidGraph& g, int d, std::uint64_t seed) {
  if (d != expected_dimension(g))
    throw SystemError("dimension " + std::to_string(d) + " does not match geometry " +
                      std::string(to_string(g.geometry())));
  if (g.vertex_count() > 8) throw SystemError("Cayley-Menger subsystem search is limited to n <= 8");
  if (!maxwell_check(g, d)) throw SystemError("graph '" + g.name() + "' is not minimally rigid");
  const int k = g.vertex_count() - (d + 1);
  const std::vector<Edge> missing = non_edges(g);
  std::vector<CMSubsystem> out;
  if (k < 0) return out;
  for (const auto& idx : combinations(0, static_cast<int>(missing.size()) - 1, k)) {
    std::vector<Edge> vars;
    for (int i : idx) vars.push_back(missing[i]);
    if (auto s = try_subsystem(g, missing, vars, seed)) out.push_back(std::move(*s));
  }
  return out;
}

CMSubsystem cm_subsystem_for(const RigidGraph& g, const std::vector<Edge>& variables, std::uint64_t seed) {
  const int d = expected_dimension(g);
  const std::vector<Edge> missing = non_edges(g);
  if (static_cast<int>(variables.size()) != g.vertex_count() - (d + 1))
    throw SystemError("a square subsystem needs n-(d+1) variables");
  for (const auto& e : variables)
    if (std::find(missing.begin(), missing.end(), e) == missing.end())
      throw SystemError("variable " + edge_key(e) + " is not a non-edge");
  std::vector<Edge> vars = variables;
  auto s = try_subsystem(g, missing, vars, seed);
  if (!s) throw SystemError("variables do not give a square Cayley-Menger subsystem");
  return std::move(*s);
}

PolynomialSystem build_cm_system(const CMSubsystem& sub) {
  const RigidGraph& g = sub.base;
  const bool sphere = sub.has_centre();
  const Bordered b(g, sub.variables);
  PolynomialSystem sys;
  sys.graph = g;
  sys.geometry = g.geometry();
  sys.formulation = Formulation::CayleyMenger;
  sys.cm_variables = sub.variables;
  sys.embeddings_per_solution = 2;
  for (const auto& e : sub.variables) sys.variables.push_back((sphere ? "y" : "x") + pair_name(e));
  for (const auto& e : g.edges()) sys.parameters.push_back((sphere ? "c" : "L") + pair_name(e));
  for (const auto& m : sub.minors) {
    const std::size_t k = m.rows.size();
    std::vector<std::vector<Polynomial>> a(k, std::vector<Polynomial>(k));
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) a[r][c] = entry_poly(b, m.rows[r], m.cols[c], sphere);
    sys.equations.push_back(determinant(a));
  }
  sys.side_conditions = sub.inequalities;
  const std::vector<Edge> edges = g.edges();
  sys.parameterize = [edges, sphere](const LengthAssignment& l) {
    Eigen::VectorXcd p(static_cast<Eigen::Index>(edges.size()));
    for (std::size_t j = 0; j < edges.size(); ++j) {
      const double v = l.at(edges[j]);
      p[static_cast<Eigen::Index>(j)] = sphere ? 1.0 - v * v / 2.0 : v * v;
    }
    return p;
  };
  sys.finalize();
  return sys;
}

PolynomialSystem build_cm_system(const CMSubsystem& sub, const LengthAssignment& lengths) {
  if (lengths.geometry() != sub.base.geometry()) throw SystemError("length geometry does not match the subsystem");
  lengths.validate_for(sub.base);
  return build_cm_system(sub);
}

}  // namespace rigid
