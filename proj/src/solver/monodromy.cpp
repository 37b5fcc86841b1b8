#include "rigid/solver/monodromy.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rigid/solver/parallel.hpp"

namespace rigid {

namespace {

using VecC = Eigen::VectorXcd;

std::complex<double> random_unit(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, u(rng));
}

// Configuration expressed in the pinned frame; false if the pinned simplex is too flat.
bool to_pinned_frame(const PolynomialSystem& sys, Eigen::MatrixXd& pts) {
  const Geometry geo = sys.geometry;
  const auto& pin = sys.pinned;
  const int n = static_cast<int>(pts.cols());
  if (geo == Geometry::Plane) {
    const Eigen::Vector2d o = pts.col(pin[0] - 1);
    Eigen::Vector2d ey = pts.col(pin[1] - 1) - o;
    if (ey.norm() < 0.1) return false;
    ey.normalize();
    const Eigen::Vector2d ex(ey.y(), -ey.x());
    Eigen::MatrixXd q(2, n);
    for (int v = 0; v < n; ++v) {
      const Eigen::Vector2d d = pts.col(v) - o;
      q(0, v) = d.dot(ex);
      q(1, v) = d.dot(ey);
    }
    pts = q;
    return true;
  }
  Eigen::Vector3d o, ey, ex, ez;
  if (geo == Geometry::Space) {
    o = pts.col(pin[0] - 1);
    ey = pts.col(pin[1] - 1) - o;
    Eigen::Vector3d w = pts.col(pin[2] - 1) - o;
    if (ey.norm() < 0.1) return false;
    ey.normalize();
    ex = w - w.dot(ey) * ey;
    if (ex.norm() < 0.1 * w.norm() || w.norm() < 0.1) return false;
    ex.normalize();
    ez = ex.cross(ey);
  } else {
    o.setZero();
    ez = pts.col(pin[0] - 1);
    const Eigen::Vector3d b = pts.col(pin[1] - 1);
    ey = b - b.dot(ez) * ez;
    if (ey.norm() < 0.1) return false;
    ey.normalize();
    ex = ey.cross(ez);
  }
  Eigen::MatrixXd q(3, n);
  for (int v = 0; v < n; ++v) {
    const Eigen::Vector3d d = pts.col(v) - o;
    q(0, v) = d.dot(ex);
    q(1, v) = d.dot(ey);
    q(2, v) = d.dot(ez);
  }
  pts = q;
  return true;
}

}  // namespace

SeedRealization seed_realization(const PolynomialSystem& sys, std::uint64_t seed) {
  const Geometry geo = sys.geometry;
  const int n = sys.graph.vertex_count();
  const int dim = ambient_dimension(geo);
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::MatrixXd pts(dim, n);
    for (Eigen::Index i = 0; i < pts.size(); ++i) pts.data()[i] = normal(rng);
    if (geo == Geometry::Sphere)
      for (int v = 0; v < n; ++v) pts.col(v).normalize();
    bool ok = true;
    for (const auto& e : sys.graph.edges()) {
      const double d = (pts.col(e.a - 1) - pts.col(e.b - 1)).norm();
      if (d < 1e-2 || (geo == Geometry::Sphere && d > 2.0 - 1e-6)) ok = false;
    }
    if (!ok) continue;
    if (sys.formulation == Formulation::Sphere && !to_pinned_frame(sys, pts)) continue;

    SeedRealization r;
    r.points = pts;
    r.lengths = induced_lengths(sys.graph, pts, geo);
    VecC x(sys.size());
    int k = 0;
    if (sys.formulation == Formulation::Sphere) {
      auto pinned = [&](int v) { return std::find(sys.pinned.begin(), sys.pinned.end(), v) != sys.pinned.end(); };
      for (int v = 1; v <= n; ++v) {
        if (pinned(v)) continue;
        for (int c = 0; c < dim; ++c) x[k++] = pts(c, v - 1);
        if (geo != Geometry::Sphere) x[k++] = pts.col(v - 1).squaredNorm();
      }
    } else {
      // squared distances, or cosines on the unit sphere
      for (const auto& e : sys.cm_variables)
        x[k++] = geo == Geometry::Sphere ? pts.col(e.a - 1).dot(pts.col(e.b - 1))
                                         : (pts.col(e.a - 1) - pts.col(e.b - 1)).squaredNorm();
    }
    if (k != sys.size()) throw SystemError("seed realization does not match the system layout");
    const VecC p = sys.parameterize(r.lengths);
    r.solution = refine(sys, p, x);
    if (r.solution.cls == SolutionClass::Singular) continue;
    return r;
  }
  throw SystemError("could not sample a nondegenerate realization");
}

namespace {

VecC random_parameters(const VecC& base, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  double mean = base.size() ? base.cwiseAbs().mean() : 1.0;
  VecC p(base.size());
  for (Eigen::Index j = 0; j < base.size(); ++j) {
    const double s = std::max(std::abs(base[j]), 0.1 * mean);
    const double a = normal(rng), b = normal(rng);
    p[j] = base[j] + s * std::complex<double>(a, b) / std::sqrt(2.0);
  }
  return p;
}

std::vector<Solution> track_all(const PolynomialSystem& sys, const VecC& pa, const VecC& pb,
                                const std::vector<VecC>& starts, std::complex<double> gamma,
                                const TrackerOptions& opts) {
  std::vector<Solution> out(starts.size());
  parallel_for(starts.size(), [&](std::size_t i) { out[i] = track_path(sys, pa, pb, starts[i], gamma, opts); });
  return out;
}

bool usable(const Solution& s) { return s.cls == SolutionClass::Real || s.cls == SolutionClass::Complex; }

}  // namespace

SolutionSet monodromy_solve(std::shared_ptr<const PolynomialSystem> sys, const MonodromyOptions& opts) {
  const SeedRealization seed = seed_realization(*sys, opts.seed);
  SolutionSet set;
  set.system = sys;
  set.lengths = seed.lengths;
  set.parameters = sys->parameterize(seed.lengths);
  set.solutions.push_back(seed.solution);
  const VecC& p0 = set.parameters;

  if (sys->size() == 0) {
    set.evidence.kind = CompletenessEvidence::Kind::Stable;
    return set;
  }

  std::mt19937_64 rng(opts.seed ^ 0x5bd1e995u);
  int stable = 0;
  int loops = 0;
  for (; loops < opts.max_loops; ++loops) {
    if (opts.known_count && set.size() >= *opts.known_count) break;
    const VecC p1 = random_parameters(p0, rng);
    const VecC p2 = random_parameters(p0, rng);
    const auto g1 = random_unit(rng), g2 = random_unit(rng), g3 = random_unit(rng);

    std::vector<VecC> cur;
    for (const auto& s : set.solutions) cur.push_back(s.x);
    auto keep = [](const std::vector<Solution>& sols) {
      std::vector<VecC> xs;
      for (const auto& s : sols)
        if (usable(s)) xs.push_back(s.x);
      return xs;
    };
    cur = keep(track_all(*sys, p0, p1, cur, g1, opts.tracker));
    cur = keep(track_all(*sys, p1, p2, cur, g2, opts.tracker));
    const auto back = track_all(*sys, p2, p0, cur, g3, opts.tracker);

    int added = 0;
    for (const auto& s : back) {
      if (!usable(s)) continue;
      if (find_solution(set.solutions, s.x) >= 0) continue;
      set.solutions.push_back(s);
      ++added;
      if (opts.known_count && set.size() >= *opts.known_count) break;
    }
    stable = added ? 0 : stable + 1;
    if (stable >= opts.stable_rounds) {
      ++loops;
      break;
    }
  }
  set.evidence.loops = loops;
  set.evidence.stable_rounds = stable;
  if (opts.known_count && set.size() >= *opts.known_count)
    set.evidence.kind = CompletenessEvidence::Kind::KnownCount;
  else if (stable >= opts.stable_rounds)
    set.evidence.kind = CompletenessEvidence::Kind::Stable;
  else
    set.evidence.kind = CompletenessEvidence::Kind::LowerBound;
  return set;
}

SolutionSet parameter_homotopy(const SolutionSet& set, const LengthAssignment& target, const HomotopyOptions& opts) {
  SolutionSet out = parameter_homotopy(set, set.system->parameters_for(target), opts);
  out.lengths = target;
  return out;
}

SolutionSet parameter_homotopy(const SolutionSet& set, const Eigen::VectorXcd& target, const HomotopyOptions& opts) {
  const PolynomialSystem& sys = *set.system;
  std::mt19937_64 rng(opts.seed ^ 0x9e3779b9u);
  const std::size_t m = set.solutions.size();
  std::vector<VecC> starts(m);
  for (std::size_t i = 0; i < m; ++i) starts[i] = set.solutions[i].x;

  // A different gamma can permute which start reaches which endpoint, so retries retrack the whole
  // set and pool the distinct endpoints.
  SolutionSet out;
  out.system = set.system;
  out.parameters = target;
  std::vector<Solution> singular;
  TrackerOptions topts = opts.tracker;
  for (int attempt = 0; attempt <= opts.retries && out.solutions.size() < m; ++attempt) {
    if (attempt > 0) {
      topts.max_step *= 0.5;
      topts.initial_step *= 0.5;
    }
    for (auto& s : track_all(sys, set.parameters, target, starts, random_unit(rng), topts)) {
      if (s.cls == SolutionClass::Diverged) continue;
      if (s.cls == SolutionClass::Singular) {
        if (attempt == 0) singular.push_back(std::move(s));
        continue;
      }
      if (find_solution(out.solutions, s.x) < 0) out.solutions.push_back(std::move(s));
    }
  }
  // Pooled retries can keep two copies of an ill-conditioned root; merge more loosely.
  for (double tau = 10 * kTauSep; out.solutions.size() > m && tau <= 1e-3; tau *= 10) {
    std::vector<Solution> merged;
    for (auto& s : out.solutions)
      if (find_solution(merged, s.x, tau) < 0) merged.push_back(std::move(s));
    out.solutions = std::move(merged);
  }
  const int failed = static_cast<int>(m) - static_cast<int>(out.solutions.size());
  if (failed > 0) out.singular = std::move(singular);
  out.evidence = set.evidence;
  out.evidence.failed_paths = failed;
  if (failed != 0 || !set.evidence.complete())
    out.evidence.kind = CompletenessEvidence::Kind::LowerBound;
  else
    out.evidence.kind = CompletenessEvidence::Kind::Tracked;
  return out;
}

RealCount count_real(SolutionSet& set, double tau_im) {
  RealCount rc;
  const PolynomialSystem& sys = *set.system;
  for (std::size_t i = 0; i < set.solutions.size(); ++i) {
    Solution s = refine(sys, set.parameters, set.solutions[i].x, tau_im);
    if (s.cls == SolutionClass::Singular) s = set.solutions[i];
    if (s.max_imag >= 1e-15 && s.max_imag <= 1e-6) s = polish_double_double(sys, set.parameters, s, tau_im);
    set.solutions[i] = s;
    if (s.cls == SolutionClass::Real) {
      ++rc.real;
      rc.real_indices.push_back(static_cast<int>(i));
      if (s.max_imag <= 1e-15) ++rc.real_strict;
    }
  }
  return rc;
}

SideConditionTally side_condition_tally(const SolutionSet& set, const std::vector<int>& indices, double tau) {
  const PolynomialSystem& sys = *set.system;
  SideConditionTally t;
  const Eigen::VectorXd p = set.parameters.real();
  std::vector<SideCondition> distance;
  if (sys.formulation == Formulation::Sphere) distance = distance_side_conditions(sys.graph.vertex_count(), sys.geometry);
  for (int i : indices) {
    const Eigen::VectorXd x = set.solutions.at(static_cast<std::size_t>(i)).x.real();
    SideConditionReport r;
    if (sys.formulation == Formulation::CayleyMenger) {
      r = check_side_conditions(x, p, sys.side_conditions, tau);
    } else {
      const Eigen::MatrixXd pts = sys.positions(set.solutions[static_cast<std::size_t>(i)].x, set.parameters).real();
      const int n = static_cast<int>(pts.cols());
      Eigen::VectorXd d(n * (n - 1) / 2);
      int k = 0;
      for (int a = 0; a < n; ++a)
        for (int b = a + 1; b < n; ++b)
          d[k++] = sys.geometry == Geometry::Sphere ? pts.col(a).dot(pts.col(b)) : (pts.col(a) - pts.col(b)).squaredNorm();
      r = check_side_conditions(d, Eigen::VectorXd(), distance, tau);
    }
    if (!r.violations.empty()) ++t.violated;
    else if (!r.near_violations.empty()) ++t.near;
    else ++t.satisfied;
    t.reports.push_back(std::move(r));
  }
  return t;
}

}  // namespace rigid
