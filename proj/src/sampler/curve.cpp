#include "rigid/sampler/curve.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "rigid/solver/monodromy.hpp"

namespace rigid {

namespace {

using VecD = Eigen::VectorXd;
using MatD = Eigen::MatrixXd;

double inf_norm(const VecD& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

// Equations of G with one row left out, in real arithmetic.
struct Reduced {
  const PolynomialSystem& sys;
  int removed;
  const VecD& p;

  void eval(const VecD& x, VecD& f, MatD& j) const {
    VecD full;
    MatD jfull;
    sys.compiled.evaluate<double>(x, p, full, jfull, nullptr);
    const Eigen::Index m = full.size() - 1;
    f.resize(m);
    j.resize(m, x.size());
    for (Eigen::Index r = 0, k = 0; r < full.size(); ++r) {
      if (r == removed) continue;
      f[k] = full[r];
      j.row(k++) = jfull.row(r);
    }
  }
  double removed_value(const VecD& x) const {
    VecD full;
    MatD jfull;
    sys.compiled.evaluate<double>(x, p, full, jfull, nullptr);
    return full[removed];
  }
  VecD tangent(const MatD& j) const {
    Eigen::HouseholderQR<MatD> qr(j.transpose());
    MatD q = qr.householderQ();
    return q.col(q.cols() - 1);
  }
};

Eigen::Vector3d point_of(const CompiledSystem& cmap, const VecD& x, const VecD& p, MatD* jac = nullptr) {
  VecD v;
  MatD j;
  cmap.evaluate<double>(x, p, v, j, nullptr);
  if (jac) *jac = j;
  return Eigen::Vector3d(v[0], v[1], v[2]);
}

// Newton on [reduced; extra(x) = 0] from x; extra gives value and gradient.
template <typename Extra>
bool project(const Reduced& red, VecD& x, Extra extra, int iterations = 12) {
  VecD f;
  MatD j;
  for (int it = 0; it < iterations; ++it) {
    red.eval(x, f, j);
    double g;
    VecD grad;
    extra(x, g, grad);
    MatD a(j.rows() + 1, j.cols());
    a << j, grad.transpose();
    VecD rhs(f.size() + 1);
    rhs << f, g;
    const VecD dx = a.partialPivLu().solve(rhs);
    if (!dx.allFinite()) return false;
    x -= dx;
    if (inf_norm(dx) <= 1e-13 * (1.0 + inf_norm(x))) return true;
  }
  return inf_norm(f) < 1e-9 * (1.0 + inf_norm(x) * inf_norm(x));
}

struct Walk {
  std::vector<VecD> states;
  bool closed = false;
  bool truncated = false;
};

Walk continue_from(const Reduced& red, const VecD& x0, const VecD& dir0, int steps, const CurveOptions& o) {
  Walk w;
  w.states.push_back(x0);
  const double scale = 1.0 + inf_norm(x0);
  const double hmax = o.max_step * scale, hmin = o.min_step * scale;
  double h = 0.25 * hmax;
  VecD x = x0, tau = dir0, f;
  MatD j;
  double travelled = 0.0;
  int successes = 0;
  for (int step = 0; step < steps;) {
    VecD xp = x + h * tau;
    const VecD pred = xp;
    bool ok = true;
    double prev = std::numeric_limits<double>::infinity();
    bool converged = false;
    for (int it = 0; it < 5 && ok; ++it) {
      red.eval(xp, f, j);
      MatD a(j.rows() + 1, j.cols());
      a << j, tau.transpose();
      VecD rhs(f.size() + 1);
      rhs << f, tau.dot(xp - pred);
      const VecD dx = a.partialPivLu().solve(rhs);
      const double s = inf_norm(dx);
      if (!dx.allFinite() || (it == 0 && s > 0.5 * h) || s > 0.5 * prev) {
        ok = false;
        break;
      }
      xp -= dx;
      prev = s;
      if (s <= 1e-12 * scale) {
        converged = true;
        break;
      }
    }
    VecD tnew;
    if (ok && converged) {
      red.eval(xp, f, j);
      tnew = red.tangent(j);
      if (tnew.dot(tau) < 0) tnew = -tnew;
      if (tnew.dot(tau) < 0.95) ok = false;
    } else {
      ok = false;
    }
    if (!ok) {
      h *= 0.5;
      successes = 0;
      if (h < hmin) {
        w.truncated = true;
        return w;
      }
      continue;
    }
    ++step;
    travelled += (xp - x).norm();
    x = xp;
    tau = tnew;
    // Back at the start, heading the same way.
    const double gap = (x - x0).norm();
    if (travelled > 4.0 * hmax && gap < 1.5 * h && tau.dot(dir0) > 0.0) {
      w.closed = true;
      return w;
    }
    w.states.push_back(x);
    if (++successes >= 3) {
      h = std::min(1.5 * h, hmax);
      successes = 0;
    }
  }
  w.truncated = true;
  return w;
}

int removed_equation_of(const PolynomialSystem& sys, const Edge& uc) {
  const std::string name = "m" + edge_key(uc);
  const auto it = std::find(sys.parameters.begin(), sys.parameters.end(), name);
  if (it == sys.parameters.end()) throw SamplerError("edge " + edge_key(uc) + " has no equation");
  const int j = static_cast<int>(it - sys.parameters.begin());
  const int edge_params = static_cast<int>(sys.parameters.size()) - 3;
  return static_cast<int>(sys.equations.size()) - edge_params + (j - 3);
}

CompiledSystem c_map(const PolynomialSystem& sys, int c) {
  return CompiledSystem(sys.coordinates[c - 1], sys.size(), static_cast<int>(sys.parameters.size()));
}

}  // namespace

CouplerCurve trace_coupler_curve(const RigidGraph& g, const LengthAssignment& lambda, const CouplerSubgraph& sg,
                                 int steps, const CurveOptions& opts) {
  if (g.geometry() != Geometry::Space) throw SamplerError("coupler curves are defined in space");
  validate_coupler(g, sg);
  lambda.validate_for(g);
  auto sys = std::make_shared<PolynomialSystem>(build_sphere_system(g, lambda, std::vector<int>{sg.v, sg.u, sg.w}));
  CouplerCurve curve;
  curve.subgraph = sg;
  curve.system = sys;
  curve.removed_equation = removed_equation_of(*sys, Edge(sg.u, sg.c));
  curve.parameters = sys->parameters_for(lambda).real();
  const Reduced red{*sys, curve.removed_equation, curve.parameters};

  MonodromyOptions mo;
  mo.seed = opts.seed;
  mo.known_count = opts.known_count;
  const SolutionSet generic = monodromy_solve(sys, mo);

  // Real embeddings of G at several l_uc all lie on the curve.
  const double uw = lambda.at(sg.u, sg.w), cw = lambda.at(sg.c, sg.w);
  const double lo = std::abs(uw - cw), hi = uw + cw;
  std::vector<VecD> seeds;
  for (int k = 0; k < opts.seeds; ++k) {
    LengthAssignment lk = lambda;
    if (k > 0) lk.set(Edge(sg.u, sg.c), lo + (hi - lo) * (k - 0.5) / (opts.seeds - 1));
    HomotopyOptions ho;
    ho.seed = opts.seed + 101 * static_cast<std::uint64_t>(k);
    SolutionSet set = parameter_homotopy(generic, lk, ho);
    const RealCount rc = count_real(set);
    for (int i : rc.real_indices) seeds.push_back(set.solutions[i].x.real());
  }

  const double hmax_rel = opts.max_step;
  for (const VecD& s : seeds) {
    const double near = (steps > 0 ? 2.0 * hmax_rel : 1e-8) * (1.0 + inf_norm(s));
    bool known = false;
    for (const CurveComponent& comp : curve.components)
      for (const VecD& x : comp.states)
        if ((x - s).norm() < near) known = true;
    if (known) continue;
    CurveComponent comp;
    if (steps <= 0) {
      comp.states = {s};
      comp.truncated = true;
    } else {
      VecD f;
      MatD j;
      red.eval(s, f, j);
      const VecD tau = red.tangent(j);
      Walk fwd = continue_from(red, s, tau, steps, opts);
      comp.closed = fwd.closed;
      if (fwd.closed) {
        comp.states = std::move(fwd.states);
      } else {
        Walk back = continue_from(red, s, -tau, steps, opts);
        comp.states.assign(back.states.rbegin(), back.states.rend() - 1);
        comp.states.insert(comp.states.end(), fwd.states.begin(), fwd.states.end());
        comp.truncated = fwd.truncated || back.truncated;
      }
    }
    const CompiledSystem cm = c_map(*sys, sg.c);
    for (const VecD& x : comp.states) comp.points.push_back(point_of(cm, x, curve.parameters));
    curve.components.push_back(std::move(comp));
  }
  return curve;
}

std::vector<Eigen::Vector3d> curve_intersections(const CouplerCurve& curve, const LengthAssignment& lambda) {
  const PolynomialSystem& sys = *curve.system;
  const VecD p = sys.parameters_for(lambda).real();
  const Reduced red{sys, curve.removed_equation, p};
  const CompiledSystem cm = c_map(sys, curve.subgraph.c);
  std::vector<Eigen::Vector3d> out;
  std::vector<VecD> found;
  for (const CurveComponent& comp : curve.components) {
    const std::size_t n = comp.states.size();
    if (n < 2) continue;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = red.removed_value(comp.states[i]);
    const std::size_t segments = comp.closed ? n : n - 1;
    for (std::size_t i = 0; i < segments; ++i) {
      const std::size_t k = (i + 1) % n;
      if ((g[i] < 0) == (g[k] < 0)) continue;
      const double s = g[i] / (g[i] - g[k]);
      VecD x = (1.0 - s) * comp.states[i] + s * comp.states[k];
      const bool ok = project(red, x, [&](const VecD& y, double& val, VecD& grad) {
        VecD full;
        MatD j;
        sys.compiled.evaluate<double>(y, p, full, j, nullptr);
        val = full[curve.removed_equation];
        grad = j.row(curve.removed_equation).transpose();
      });
      if (!ok) continue;
      bool dup = false;
      for (const VecD& y : found)
        if ((y - x).norm() < 1e-8 * (1.0 + inf_norm(x))) dup = true;
      if (dup) continue;
      found.push_back(x);
      out.push_back(point_of(cm, x, p));
    }
  }
  return out;
}

namespace {

// Point of component b nearest to the state x, corrected onto the curve in the hyperplane
// through x normal to the local direction of b.
std::optional<VecD> nearest_on(const CouplerCurve& to, const CurveComponent& b, const VecD& x) {
  if (b.states.empty()) return std::nullopt;
  std::size_t best = 0;
  for (std::size_t i = 1; i < b.states.size(); ++i)
    if ((b.states[i] - x).squaredNorm() < (b.states[best] - x).squaredNorm()) best = i;
  const std::size_t n = b.states.size();
  const std::size_t lo = best > 0 ? best - 1 : (b.closed ? n - 1 : best);
  const std::size_t hi = best + 1 < n ? best + 1 : (b.closed ? 0 : best);
  VecD dir = b.states[hi] - b.states[lo];
  if (dir.norm() == 0.0) return b.states[best];
  dir.normalize();
  const Reduced red{*to.system, to.removed_equation, to.parameters};
  VecD y = b.states[best];
  const bool ok = project(red, y, [&](const VecD& z, double& val, VecD& grad) {
    val = (z - x).dot(dir);
    grad = dir;
  });
  if (!ok || (y - x).norm() > (b.states[best] - x).norm() + 1e-12) return b.states[best];
  return y;
}

// Largest distance of c from points of a to the curve through b.
double directed(const CouplerCurve& ca, const CurveComponent& a, const CouplerCurve& cb, const CurveComponent& b) {
  const CompiledSystem ma = c_map(*ca.system, ca.subgraph.c), mb = c_map(*cb.system, cb.subgraph.c);
  double worst = 0.0;
  for (const VecD& x : a.states) {
    const std::optional<VecD> y = nearest_on(cb, b, x);
    if (!y) return std::numeric_limits<double>::infinity();
    worst = std::max(worst, (point_of(ma, x, ca.parameters) - point_of(mb, *y, cb.parameters)).norm());
  }
  return worst;
}

}  // namespace

CurveMatch match_curves(const CouplerCurve& a, const CouplerCurve& b, double match_tol) {
  if (!(a.subgraph == b.subgraph)) throw SamplerError("curves of different subgraphs");
  CurveMatch m;
  std::vector<bool> used(b.components.size(), false);
  for (const CurveComponent& ca : a.components) {
    bool found = false;
    for (std::size_t j = 0; j < b.components.size() && !found; ++j) {
      if (used[j] || ca.states.empty()) continue;
      const VecD& x = ca.states.front();
      const std::optional<VecD> y = nearest_on(b, b.components[j], x);
      if (!y || (*y - x).norm() > match_tol * (1.0 + inf_norm(x))) continue;
      used[j] = found = true;
      m.hausdorff = std::max({m.hausdorff, directed(a, ca, b, b.components[j]), directed(b, b.components[j], a, ca)});
    }
    if (found) ++m.matched;
    else ++m.unmatched;
  }
  for (bool u : used)
    if (!u) ++m.unmatched;
  return m;
}

void write_curve_csv(std::ostream& os, const CouplerCurve& curve) {
  os << "x,y,z,component\n";
  char buf[128];
  for (std::size_t k = 0; k < curve.components.size(); ++k)
    for (const Eigen::Vector3d& q : curve.components[k].points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%zu\n", q.x(), q.y(), q.z(), k);
      os << buf;
    }
}

}  // namespace rigid
