#include "rigid/algebra/system.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace rigid {

std::string_view to_string(Formulation f) { return f == Formulation::Sphere ? "sphere" : "cm"; }

Formulation formulation_from_string(std::string_view s) {
  if (s == "sphere") return Formulation::Sphere;
  if (s == "cm") return Formulation::CayleyMenger;
  throw std::invalid_argument("unknown formulation '" + std::string(s) + "'");
}

SideConditionReport check_side_conditions(const Eigen::VectorXd& x, const Eigen::VectorXd& p,
                                          const std::vector<SideCondition>& conditions, double tau) {
  SideConditionReport r;
  r.min_slack = std::numeric_limits<double>::infinity();
  for (const auto& c : conditions) {
    double value = 0.0, scale = 0.0;
    for (const auto& [mono, coeff] : c.poly.terms()) {
      double t = coeff;
      for (const auto& f : mono) {
        const double base = f.index >= 0 ? x[f.index] : p[-1 - f.index];
        t *= std::pow(base, f.power);
      }
      value += t;
      scale += std::abs(t);
    }
    const double slack = scale > 0.0 ? value / scale : 0.0;
    r.min_slack = std::min(r.min_slack, slack);
    if (slack <= -tau) {
      r.violations.push_back(c.label);
      r.satisfied = false;
    } else if (slack < 0.0 || (c.strict && slack == 0.0)) {
      r.near_violations.push_back(c.label);
    }
  }
  if (conditions.empty()) r.min_slack = 0.0;
  return r;
}

Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
  const int n = static_cast<int>(m.size());
  if (n == 0) return Polynomial(1.0);
  for (const auto& row : m)
    if (static_cast<int>(row.size()) != n) throw std::invalid_argument("determinant of non-square matrix");
  if (n > 10) throw std::invalid_argument("determinant too large for symbolic expansion");
  // Laplace along rows; memo[mask] = minor of the last popcount(mask) rows on columns mask.
  std::map<unsigned, Polynomial> memo;
  std::function<Polynomial(int, unsigned)> minor = [&](int row, unsigned cols) -> Polynomial {
    if (row == n) return Polynomial(1.0);
    auto it = memo.find(cols);
    if (it != memo.end()) return it->second;
    Polynomial acc;
    int sign = 1;
    for (int c = 0; c < n; ++c) {
      if (!(cols & (1u << c))) continue;
      if (!m[row][c].is_zero()) {
        Polynomial sub = minor(row + 1, cols & ~(1u << c));
        if (!sub.is_zero()) acc += (sign > 0 ? m[row][c] : -m[row][c]) * sub;
      }
      sign = -sign;
    }
    memo.emplace(cols, acc);
    return acc;
  };
  return minor(0, (1u << n) - 1);
}

SideCondition cayley_menger_condition(const std::vector<std::vector<Polynomial>>& squared, std::string label) {
  const int m = static_cast<int>(squared.size());
  std::vector<std::vector<Polynomial>> b(m + 1, std::vector<Polynomial>(m + 1));
  for (int i = 1; i <= m; ++i) {
    b[0][i] = Polynomial(1.0);
    b[i][0] = Polynomial(1.0);
    for (int j = 1; j <= m; ++j) b[i][j] = squared[i - 1][j - 1];
  }
  Polynomial det = determinant(b);
  if (m % 2 == 1) det *= -1.0;
  return SideCondition{std::move(det), false, std::move(label)};
}

std::vector<SideCondition> distance_side_conditions(int n, Geometry g) {
  std::vector<std::vector<int>> pair(n + 1, std::vector<int>(n + 1, -1));
  int k = 0;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b) pair[a][b] = pair[b][a] = k++;
  auto var = [&](int a, int b) { return Polynomial::variable(pair[a][b]); };
  auto name = [](std::initializer_list<int> vs) {
    std::string s;
    for (int v : vs) s += (s.empty() ? "" : "-") + std::to_string(v);
    return s;
  };
  std::vector<SideCondition> out;
  for (int a = 1; a <= n; ++a)
    for (int b = a + 1; b <= n; ++b)
      for (int c = b + 1; c <= n; ++c) {
        if (g == Geometry::Sphere) {
          const Polynomial x = var(a, b), y = var(a, c), z = var(b, c);
          out.push_back({2.0 * x * y * z - x * x - y * y - z * z + Polynomial(1.0), false,
                         "spherical triangle " + name({a, b, c})});
          continue;
        }
        const int v[3] = {a, b, c};
        std::vector<std::vector<Polynomial>> sq(3, std::vector<Polynomial>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j)
            if (i != j) sq[i][j] = var(v[i], v[j]);
        out.push_back(cayley_menger_condition(sq, "triangle " + name({a, b, c})));
      }
  if (g == Geometry::Space)
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        for (int c = b + 1; c <= n; ++c)
          for (int d = c + 1; d <= n; ++d) {
            const int v[4] = {a, b, c, d};
            std::vector<std::vector<Polynomial>> sq(4, std::vector<Polynomial>(4));
            for (int i = 0; i < 4; ++i)
              for (int j = 0; j < 4; ++j)
                if (i != j) sq[i][j] = var(v[i], v[j]);
            out.push_back(cayley_menger_condition(sq, "tetrahedron " + name({a, b, c, d})));
          }
  return out;
}

Eigen::VectorXcd PolynomialSystem::parameters_for(const LengthAssignment& lengths) const {
  if (!parameterize) throw SystemError("system has no parameter map");
  lengths.validate_for(graph);
  return parameterize(lengths);
}

std::string PolynomialSystem::to_text(const LengthAssignment& lengths) const {
  const Eigen::VectorXcd pc = parameters_for(lengths);
  if (pc.imag().cwiseAbs().maxCoeff() > 1e-12) throw SystemError("lengths give complex coefficients");
  const Eigen::VectorXd p = pc.real();
  std::string out = "variables:";
  for (const auto& v : variables) out += " " + v;
  out += "\n";
  for (const auto& eq : equations) out += rigid::to_text(eq.instantiate<double>(p), variables) + "\n";
  return out;
}

Eigen::MatrixXcd PolynomialSystem::positions(const Eigen::VectorXcd& x, const Eigen::VectorXcd& p) const {
  if (coordinates.empty()) throw SystemError("positions need the sphere formulation");
  const int n = graph.vertex_count();
  const int dim = static_cast<int>(coordinates[0].size());
  Eigen::MatrixXcd out(dim, n);
  for (int v = 0; v < n; ++v)
    for (int k = 0; k < dim; ++k) out(k, v) = coordinates[v][k].evaluate<std::complex<double>>(x, p);
  return out;
}

void PolynomialSystem::finalize() {
  if (equations.size() != variables.size())
    throw SystemError("non-square system: " + std::to_string(equations.size()) + " equations in " +
                      std::to_string(variables.size()) + " variables");
  for (const auto& eq : equations)
    if (eq.variable_degree() < 1) throw SystemError("equation without variables");
  compiled = CompiledSystem(equations, static_cast<int>(variables.size()), static_cast<int>(parameters.size()));
}

namespace {

bool has_triangle(const RigidGraph& g, int a, int b, int c) {
  return g.has_edge(a, b) && g.has_edge(a, c) && g.has_edge(b, c);
}

}  // namespace

std::vector<int> default_pinned_simplex(const RigidGraph& g) {
  const int n = g.vertex_count();
  if (g.geometry() == Geometry::Space) {
    if (n >= 3 && has_triangle(g, 1, 2, 3)) return {1, 2, 3};
    for (int a = 1; a <= n; ++a)
      for (int b = a + 1; b <= n; ++b)
        for (int c = b + 1; c <= n; ++c)
          if (has_triangle(g, a, b, c)) return {a, b, c};
    throw SystemError("graph '" + g.name() + "' has no triangle to pin");
  }
  if (n >= 2 && g.has_edge(1, 2)) return {1, 2};
  if (g.edges().empty()) throw SystemError("graph '" + g.name() + "' has no edge to pin");
  return {g.edges().front().a, g.edges().front().b};
}

PolynomialSystem build_sphere_system(const RigidGraph& g, std::optional<std::vector<int>> pinned_opt) {
  const Geometry geo = g.geometry();
  const int n = g.vertex_count();
  const int dim = ambient_dimension(geo);
  std::vector<int> pin = pinned_opt ? *pinned_opt : default_pinned_simplex(g);
  const std::size_t want = geo == Geometry::Space ? 3 : 2;
  if (pin.size() != want) throw SystemError("pinned simplex must have " + std::to_string(want) + " vertices");
  for (std::size_t i = 0; i < pin.size(); ++i) {
    if (pin[i] < 1 || pin[i] > n) throw SystemError("pinned vertex out of range");
    for (std::size_t j = 0; j < i; ++j) {
      if (pin[i] == pin[j]) throw SystemError("pinned vertices must be distinct");
      if (!g.has_edge(pin[i], pin[j]))
        throw SystemError("pinned simplex edge " + edge_key(Edge(pin[i], pin[j])) + " not in graph");
    }
  }
  auto pin_slot = [&](int v) {
    auto it = std::find(pin.begin(), pin.end(), v);
    return it == pin.end() ? -1 : static_cast<int>(it - pin.begin());
  };

  PolynomialSystem sys;
  sys.graph = g;
  sys.geometry = geo;
  sys.formulation = Formulation::Sphere;
  sys.pinned = pin;

  // Pinned coordinates as parameters.
  int np = 0;
  auto P = [](int j) { return Polynomial::parameter(j); };
  std::vector<std::vector<Polynomial>> coords(n, std::vector<Polynomial>(dim));
  std::vector<Polynomial> mags(n);
  if (geo == Geometry::Plane) {
    sys.parameters = {"a"};
    np = 1;
    coords[pin[1] - 1][1] = P(0);
    mags[pin[1] - 1] = P(0) * P(0);
  } else if (geo == Geometry::Space) {
    sys.parameters = {"a", "b", "c"};
    np = 3;
    coords[pin[1] - 1][1] = P(0);
    coords[pin[2] - 1][0] = P(1);
    coords[pin[2] - 1][1] = P(2);
    mags[pin[1] - 1] = P(0) * P(0);
    mags[pin[2] - 1] = P(1) * P(1) + P(2) * P(2);
  } else {
    sys.parameters = {"b", "c"};
    np = 2;
    coords[pin[0] - 1][2] = Polynomial(1.0);
    coords[pin[1] - 1][1] = P(0);
    coords[pin[1] - 1][2] = P(1);
    for (auto& m : mags) m = Polynomial(1.0);
  }

  // Free vertices: coordinates (+ magnitude off the sphere).
  static const char* axis[] = {"x", "y", "z"};
  for (int v = 1; v <= n; ++v) {
    if (pin_slot(v) >= 0) continue;
    for (int k = 0; k < dim; ++k) {
      coords[v - 1][k] = Polynomial::variable(static_cast<int>(sys.variables.size()));
      sys.variables.push_back(std::string(axis[k]) + std::to_string(v));
    }
    Polynomial norm;
    for (int k = 0; k < dim; ++k) norm += coords[v - 1][k] * coords[v - 1][k];
    if (geo == Geometry::Sphere) {
      sys.equations.push_back(norm - Polynomial(1.0));
    } else {
      mags[v - 1] = Polynomial::variable(static_cast<int>(sys.variables.size()));
      sys.variables.push_back("s" + std::to_string(v));
      sys.equations.push_back(norm - mags[v - 1]);
    }
  }

  std::vector<Edge> param_edges;
  for (const auto& e : g.edges()) {
    if (pin_slot(e.a) >= 0 && pin_slot(e.b) >= 0) continue;
    const int j = np++;
    sys.parameters.push_back("m" + edge_key(e));
    param_edges.push_back(e);
    Polynomial dot;
    for (int k = 0; k < dim; ++k) dot += coords[e.a - 1][k] * coords[e.b - 1][k];
    sys.equations.push_back(mags[e.a - 1] + mags[e.b - 1] - 2.0 * dot - P(j));
  }
  sys.coordinates = std::move(coords);

  const Edge e01(pin[0], pin[1]);
  const std::optional<Edge> e02 = pin.size() == 3 ? std::optional<Edge>(Edge(pin[0], pin[2])) : std::nullopt;
  const std::optional<Edge> e12 = pin.size() == 3 ? std::optional<Edge>(Edge(pin[1], pin[2])) : std::nullopt;
  sys.parameterize = [geo, e01, e02, e12, param_edges, np](const LengthAssignment& l) {
    Eigen::VectorXcd p(np);
    int k = 0;
    const double l01 = l.at(e01);
    if (geo == Geometry::Plane) {
      p[k++] = l01;
    } else if (geo == Geometry::Space) {
      const double l02 = l.at(*e02), l12 = l.at(*e12);
      const double y3 = (l02 * l02 + l01 * l01 - l12 * l12) / (2.0 * l01);
      p[k++] = l01;
      p[k++] = std::sqrt(std::complex<double>(l02 * l02 - y3 * y3));
      p[k++] = y3;
    } else {
      const double c = 1.0 - l01 * l01 / 2.0;
      p[k++] = std::sqrt(std::complex<double>(1.0 - c * c));
      p[k++] = c;
    }
    for (const auto& e : param_edges) {
      const double v = l.at(e);
      p[k++] = v * v;
    }
    return p;
  };
  sys.finalize();
  return sys;
}

PolynomialSystem build_sphere_system(const RigidGraph& g, const LengthAssignment& lengths,
                                     std::optional<std::vector<int>> pinned) {
  PolynomialSystem sys = build_sphere_system(g, std::move(pinned));
  lengths.validate_for(g);
  if (lengths.geometry() != g.geometry()) throw SystemError("length geometry does not match graph geometry");
  const Eigen::VectorXcd p = sys.parameterize(lengths);
  if (g.geometry() == Geometry::Space) {
    const double l02 = lengths.at(sys.pinned[0], sys.pinned[2]);
    if (!(p[1].real() > 1e-6 * l02) || std::abs(p[1].imag()) > 0.0)
      throw SystemError("degenerate pinned triangle");
  }
  return sys;
}

}  // namespace rigid
