#include "rigid/sampler/coupler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <tuple>

namespace rigid {

std::string to_string(const CouplerSubgraph& sg) {
  return "(" + std::to_string(sg.u) + "," + std::to_string(sg.v) + "," + std::to_string(sg.w) + "," +
         std::to_string(sg.p) + "," + std::to_string(sg.c) + ")";
}

CouplerSubgraph coupler_from_string(const std::string& s) {
  CouplerSubgraph sg;
  char tail = 0;
  std::string t;
  for (char ch : s)
    if (ch != ' ' && ch != '(' && ch != ')' && ch != 'v') t += ch;
  if (std::sscanf(t.c_str(), "%d,%d,%d,%d,%d%c", &sg.u, &sg.v, &sg.w, &sg.p, &sg.c, &tail) != 5)
    throw SamplerError("bad coupler subgraph '" + s + "', expected (u,v,w,p,c)");
  return sg;
}

namespace {

bool qualifies(const RigidGraph& g, int u, int v, int w, int p, int c) {
  return g.has_edge(u, v) && g.has_edge(u, w) && g.has_edge(u, p) && g.has_edge(u, c) && g.has_edge(p, v) &&
         g.has_edge(v, w) && g.has_edge(c, w);
}

}  // namespace

std::vector<CouplerSubgraph> find_coupler_subgraphs(const RigidGraph& g, bool relax) {
  std::vector<CouplerSubgraph> out;
  for (int u = 1; u <= g.vertex_count(); ++u) {
    const int deg = g.degree(u);
    if (deg < 4 || (deg > 4 && !relax)) continue;
    const std::vector<int> nb = g.neighbors(u);
    for (int v : nb)
      for (int w : nb)
        for (int p : nb)
          for (int c : nb) {
            if (v == w || v == p || v == c || w == p || w == c || p == c) continue;
            if (!qualifies(g, u, v, w, p, c)) continue;
            if (w > p && qualifies(g, u, v, p, w, c)) continue;
            out.push_back({u, v, w, p, c, deg > 4});
          }
  }
  std::sort(out.begin(), out.end(), [](const CouplerSubgraph& a, const CouplerSubgraph& b) {
    return std::tie(a.u, a.v, a.w, a.p, a.c) < std::tie(b.u, b.v, b.w, b.p, b.c);
  });
  return out;
}

void validate_coupler(const RigidGraph& g, const CouplerSubgraph& sg) {
  const int n = g.vertex_count();
  for (int x : {sg.u, sg.v, sg.w, sg.p, sg.c})
    if (x < 1 || x > n) throw SamplerError("coupler vertex out of range in " + to_string(sg));
  if (!qualifies(g, sg.u, sg.v, sg.w, sg.p, sg.c) || sg.v == sg.w || sg.v == sg.p || sg.v == sg.c ||
      sg.w == sg.p || sg.w == sg.c || sg.p == sg.c)
    throw SamplerError("not a coupler subgraph: " + to_string(sg));
  if (g.degree(sg.u) != 4 && !sg.relaxed)
    throw SamplerError("deg(u) != 4 in " + to_string(sg) + "; mark it relaxed");
}

CouplerFrame coupler_frame(const LengthAssignment& lambda, const CouplerSubgraph& sg) {
  const double uv = lambda.at(sg.u, sg.v), uw = lambda.at(sg.u, sg.w), vw = lambda.at(sg.v, sg.w);
  const double up = lambda.at(sg.u, sg.p), vp = lambda.at(sg.v, sg.p);
  CouplerFrame f;
  f.y_w = (vw * vw + uv * uv - uw * uw) / (2.0 * uv);
  f.y_p = (vp * vp + uv * uv - up * up) / (2.0 * uv);
  const double xw2 = vw * vw - f.y_w * f.y_w, zp2 = vp * vp - f.y_p * f.y_p;
  if (!(xw2 > 0.0)) throw SamplerError("degenerate triangle uvw in " + to_string(sg));
  if (!(zp2 > 0.0)) throw SamplerError("degenerate triangle uvp in " + to_string(sg));
  f.x_w = std::sqrt(xw2);
  f.z_p = std::sqrt(zp2);
  return f;
}

LengthAssignment lambda_family(const LengthAssignment& lambda, const CouplerSubgraph& sg, double t) {
  if (!(t > 0.0)) throw SamplerError("lambda_family needs t > 0");
  const CouplerFrame f = coupler_frame(lambda, sg);
  LengthAssignment out = lambda;
  out.set(Edge(sg.u, sg.v), t);
  out.set(Edge(sg.u, sg.w), std::hypot(f.x_w, f.y_w - t));
  out.set(Edge(sg.u, sg.p), std::hypot(f.y_p - t, f.z_p));
  return out;
}

LengthAssignment lengths_from_angles(const LengthAssignment& lambda, const CouplerSubgraph& sg, double phi,
                                     double theta) {
  constexpr double half_pi = std::numbers::pi / 2;
  if (!(phi > -half_pi && phi < half_pi)) throw SamplerError("phi outside (-pi/2, pi/2)");
  if (!(theta > 0.0 && theta < std::numbers::pi)) throw SamplerError("theta outside (0, pi)");
  const CouplerFrame f = coupler_frame(lambda, sg);
  const double t = f.y_w + f.x_w * std::tan(phi);
  const double uw = f.x_w / std::cos(phi);
  if (!(t > 0.0) || !std::isfinite(uw)) throw SamplerError("u leaves the positive axis");
  LengthAssignment out = lambda_family(lambda, sg, t);
  out.set(Edge(sg.u, sg.w), uw);
  const double cw = lambda.at(sg.c, sg.w);
  const double uc2 = uw * uw + cw * cw - 2.0 * uw * cw * std::cos(theta);
  if (!(uc2 > 0.0)) throw SamplerError("degenerate triangle uwc");
  out.set(Edge(sg.u, sg.c), std::sqrt(uc2));
  return out;
}

std::pair<double, double> angles_of(const LengthAssignment& lambda, const CouplerSubgraph& sg) {
  const CouplerFrame f = coupler_frame(lambda, sg);
  const double phi = std::atan2(lambda.at(sg.u, sg.v) - f.y_w, f.x_w);
  const double uw = lambda.at(sg.u, sg.w), cw = lambda.at(sg.c, sg.w), uc = lambda.at(sg.u, sg.c);
  const double cos_theta = (uw * uw + cw * cw - uc * uc) / (2.0 * uw * cw);
  if (!(std::abs(cos_theta) < 1.0)) throw SamplerError("degenerate triangle uwc");
  return {phi, std::acos(cos_theta)};
}

}  // namespace rigid
