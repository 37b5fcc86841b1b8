#include "rigid/solver/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "rigid/solver/double_double.hpp"

namespace rigid {

namespace {

using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

double inf_norm(const VecC& v) { return v.size() ? v.cwiseAbs().maxCoeff() : 0.0; }

double max_imag(const VecC& v) { return v.size() ? v.imag().cwiseAbs().maxCoeff() : 0.0; }

SolutionClass real_or_complex(const VecC& x, const VecC& p, double tau_im) {
  return max_imag(x) <= tau_im && max_imag(p) <= 1e-12 ? SolutionClass::Real : SolutionClass::Complex;
}

}  // namespace

std::string_view to_string(SolutionClass c) {
  switch (c) {
    case SolutionClass::Real: return "real";
    case SolutionClass::Complex: return "complex";
    case SolutionClass::Singular: return "singular";
    case SolutionClass::Diverged: return "diverged";
  }
  return "?";
}

std::string_view to_string(CompletenessEvidence::Kind k) {
  switch (k) {
    case CompletenessEvidence::Kind::None: return "none";
    case CompletenessEvidence::Kind::Stable: return "stable";
    case CompletenessEvidence::Kind::KnownCount: return "known-count";
    case CompletenessEvidence::Kind::LowerBound: return "lower-bound";
    case CompletenessEvidence::Kind::Tracked: return "tracked";
  }
  return "?";
}

double max_norm_distance(const VecC& a, const VecC& b) { return inf_norm(a - b); }

int find_solution(const std::vector<Solution>& sols, const VecC& x, double tau) {
  const double scaled = tau * std::max(1.0, inf_norm(x));
  for (std::size_t i = 0; i < sols.size(); ++i)
    if (max_norm_distance(sols[i].x, x) < scaled) return static_cast<int>(i);
  return -1;
}

double residual(const PolynomialSystem& sys, const VecC& p, const VecC& x) {
  VecC f;
  sys.compiled.evaluate_values<std::complex<double>>(x, p, f);
  return inf_norm(f);
}

Solution refine(const PolynomialSystem& sys, const VecC& p, const VecC& x0, double tau_im, int iterations) {
  Solution s;
  s.x = x0;
  VecC f;
  MatC jx;
  double last = std::numeric_limits<double>::infinity();
  bool converged = false;
  for (int it = 0; it < iterations; ++it) {
    sys.compiled.evaluate(s.x, p, f, jx, nullptr);
    Eigen::PartialPivLU<MatC> lu(jx);
    const VecC dx = lu.solve(f);
    if (!dx.allFinite()) break;
    const double step = inf_norm(dx);
    s.x -= dx;
    const double scale = 1.0 + inf_norm(s.x);
    if (step <= 1e-14 * scale) {
      last = step;
      converged = true;
      break;
    }
    // Stagnation at working precision.
    if (step > 0.5 * last && step < 1e-11 * scale) {
      last = step;
      converged = true;
      break;
    }
    last = step;
  }
  if (!converged && last < 1e-10 * (1.0 + inf_norm(s.x))) converged = true;
  // Ill-conditioned roots stagnate in double precision; retry in double-double.
  if (!converged && s.x.allFinite() && last < 1e-5 * (1.0 + inf_norm(s.x))) {
    Solution seed = s;
    seed.newton_contraction = last;
    seed.cls = SolutionClass::Complex;
    const Solution dd = polish_double_double(sys, p, seed, tau_im, 8);
    if (dd.x.allFinite() && dd.newton_contraction < 1e-11 * (1.0 + inf_norm(dd.x))) {
      s.x = dd.x;
      last = dd.newton_contraction;
      converged = true;
    }
  }
  s.newton_contraction = last;
  s.residual = residual(sys, p, s.x);
  s.max_imag = max_imag(s.x);
  // Equations are quadratic: scale the residual by the largest term magnitude.
  const double xs = inf_norm(s.x);
  const double term_scale = std::max({1.0, inf_norm(p), xs * xs});
  if (!s.x.allFinite() || !converged || !(s.residual < kTauRes * term_scale))
    s.cls = SolutionClass::Singular;
  else
    s.cls = real_or_complex(s.x, p, tau_im);
  return s;
}

namespace {

// F(x, p) evaluated in double-double and rounded.
VecC residual_double_double(const PolynomialSystem& sys, const VecC& p, const VecC& x) {
  std::vector<ComplexDD> xd(x.size()), pd(p.size()), f;
  for (Eigen::Index i = 0; i < x.size(); ++i) xd[i] = ComplexDD(x[i]);
  for (Eigen::Index j = 0; j < p.size(); ++j) pd[j] = ComplexDD(p[j]);
  sys.compiled.evaluate_values<ComplexDD>(xd, pd, f);
  VecC out(static_cast<Eigen::Index>(f.size()));
  for (std::size_t i = 0; i < f.size(); ++i) out[static_cast<Eigen::Index>(i)] = f[i].to_complex();
  return out;
}

}  // namespace

Solution polish_double_double(const PolynomialSystem& sys, const VecC& p, const Solution& s0, double tau_im,
                              int iterations) {
  const int n = static_cast<int>(s0.x.size());
  std::vector<ComplexDD> x(n), pd(p.size()), f;
  for (int i = 0; i < n; ++i) x[i] = ComplexDD(s0.x[i]);
  for (int j = 0; j < p.size(); ++j) pd[j] = ComplexDD(p[j]);
  VecC xd(n), fd(n), dummy;
  MatC jx;
  double last = s0.newton_contraction;
  for (int it = 0; it < iterations; ++it) {
    for (int i = 0; i < n; ++i) xd[i] = x[i].to_complex();
    sys.compiled.evaluate_values<ComplexDD>(x, pd, f);
    sys.compiled.evaluate(xd, p, dummy, jx, nullptr);
    for (int i = 0; i < n; ++i) fd[i] = f[i].to_complex();
    const VecC dx = Eigen::PartialPivLU<MatC>(jx).solve(fd);
    if (!dx.allFinite()) break;
    for (int i = 0; i < n; ++i) x[i] -= ComplexDD(dx[i]);
    last = inf_norm(dx);
    if (last == 0.0) break;
  }
  Solution s = s0;
  for (int i = 0; i < n; ++i) s.x[i] = x[i].to_complex();
  // Imaginary parts with the low words, which carry the extra precision.
  double mi = 0.0;
  for (int i = 0; i < n; ++i) mi = std::max(mi, std::abs(x[i].im.to_double()));
  s.max_imag = mi;
  s.newton_contraction = last;
  s.residual = residual(sys, p, s.x);
  if (s.cls != SolutionClass::Singular) s.cls = real_or_complex(s.x, p, tau_im);
  return s;
}

namespace {

struct PathContext {
  const PolynomialSystem& sys;
  const VecC& pA;
  const VecC& pB;
  std::complex<double> gamma;

  VecC param(double t) const {
    const std::complex<double> den = (1.0 - t) * gamma + t;
    return ((1.0 - t) * gamma * pA + t * pB) / den;
  }
  VecC dparam(double t) const {
    const std::complex<double> den = (1.0 - t) * gamma + t;
    return gamma * (pB - pA) / (den * den);
  }
  // dx/dt = -Jx^{-1} Jp dp/dt
  bool velocity(const VecC& x, double t, VecC& out) const {
    VecC f;
    MatC jx, jp;
    const VecC p = param(t);
    sys.compiled.evaluate(x, p, f, jx, &jp);
    Eigen::PartialPivLU<MatC> lu(jx);
    out = -lu.solve(jp * dparam(t));
    return out.allFinite();
  }
};

}  // namespace

Solution track_path(const PolynomialSystem& sys, const VecC& pA, const VecC& pB, const VecC& start,
                    std::complex<double> gamma, const TrackerOptions& o) {
  PathContext ctx{sys, pA, pB, gamma};
  Solution fail;
  fail.x = start;
  fail.cls = SolutionClass::Diverged;

  double t = 0.0;
  double h = o.initial_step;
  VecC x = start;
  int successes = 0;
  bool extended = false;  // once needed, residuals stay in double-double
  VecC f;
  MatC jx;
  for (int steps = 0; t < 1.0; ++steps) {
    if (steps > o.max_steps) return fail;
    h = std::min({h, o.max_step, 1.0 - t});
    VecC xp;
    bool ok = true;
    VecC k1, k2, k3, k4;
    if (!ctx.velocity(x, t, k1)) ok = false;
    if (ok && o.predictor == Predictor::RungeKutta4) {
      ok = ctx.velocity(x + 0.5 * h * k1, t + 0.5 * h, k2) && ctx.velocity(x + 0.5 * h * k2, t + 0.5 * h, k3) &&
           ctx.velocity(x + h * k3, t + h, k4);
      if (ok) xp = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    } else if (ok) {
      xp = x + h * k1;
    }
    if (ok) {
      // Newton corrector: converge within max_newton with contraction, without drifting
      // far from the prediction.
      const VecC p1 = ctx.param(t + h);
      const double disp = inf_norm(xp - x);
      double prev = std::numeric_limits<double>::infinity();
      bool converged = false;
      extended = extended || h < o.extended_below;
      for (int it = 0; it < o.max_newton; ++it) {
        sys.compiled.evaluate(xp, p1, f, jx, nullptr);
        if (extended) f = residual_double_double(sys, p1, xp);
        const VecC dx = Eigen::PartialPivLU<MatC>(jx).solve(f);
        if (!dx.allFinite()) break;
        const double step = inf_norm(dx);
        if (it == 0 && step > std::max(0.25 * disp, o.corrector_tol * (1.0 + inf_norm(xp)))) break;
        if (step > 0.5 * prev) break;
        xp -= dx;
        prev = step;
        if (step <= o.corrector_tol * (1.0 + inf_norm(xp))) {
          converged = true;
          break;
        }
      }
      ok = converged;
    }
    if (ok) {
      t = (1.0 - t - h <= 1e-15) ? 1.0 : t + h;
      x = xp;
      if (inf_norm(x) > o.divergence) return fail;
      if (++successes >= 4) {
        h = std::min(h * 1.25, o.max_step);
        successes = 0;
      }
    } else {
      h *= 0.5;
      successes = 0;
      if (h < o.min_step) {
        Solution s;
        s.x = x;
        s.cls = SolutionClass::Singular;
        s.residual = residual(sys, ctx.param(t), x);
        return s;
      }
    }
  }
  Solution s = refine(sys, pB, x, o.tau_im);
  if (inf_norm(s.x) > o.divergence) s.cls = SolutionClass::Diverged;
  return s;
}

}  // namespace rigid
