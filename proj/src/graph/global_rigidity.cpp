#include "rigid/graph/global_rigidity.hpp"

#include <random>

namespace rigid {

int numerical_rank(const Eigen::MatrixXd& m, double rel_tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > rel_tol * s(0)) ++rank;
  return rank;
}

namespace {

int expected_rank(int n, int d) { return n >= d ? d * n - d * (d + 1) / 2 : n * (n - 1) / 2; }

}  // namespace

GlobalRigidityTrial global_rigidity_trial(const RigidGraph& g, int d, std::uint64_t seed) {
  const int n = g.vertex_count();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::MatrixXd p(d, n);
  for (Eigen::Index i = 0; i < p.size(); ++i) p.data()[i] = normal(rng);

  GlobalRigidityTrial t;
  const Eigen::MatrixXd r = rigidity_matrix(g, p);
  t.rigidity_rank = numerical_rank(r);
  t.expected_rigidity_rank = expected_rank(n, d);
  t.expected_stress_rank = std::max(0, n - d - 1);

  if (n <= d + 1) {
    // No room for a non-trivial stress: globally rigid iff complete.
    t.stress_rank = 0;
    t.passed = t.rigidity_rank == t.expected_rigidity_rank && g.edge_count() == n * (n - 1) / 2;
    return t;
  }

  // Equilibrium stresses span the left kernel of R.
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double cut = s.size() > 0 ? 1e-9 * s(0) : 0.0;
  int rank = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) > cut) ++rank;
  const int m = g.edge_count();
  Eigen::VectorXd omega = Eigen::VectorXd::Zero(m);
  for (int k = rank; k < m; ++k) omega += normal(rng) * svd.matrixU().col(k);

  Eigen::MatrixXd stress = Eigen::MatrixXd::Zero(n, n);
  int row = 0;
  for (const auto& e : g.edges()) {
    const int i = e.a - 1, j = e.b - 1;
    stress(i, j) -= omega(row);
    stress(j, i) -= omega(row);
    stress(i, i) += omega(row);
    stress(j, j) += omega(row);
    ++row;
  }
  t.stress_rank = rank < m ? numerical_rank(stress) : 0;
  t.passed = t.rigidity_rank == t.expected_rigidity_rank && t.stress_rank == t.expected_stress_rank;
  return t;
}

bool is_globally_rigid_generic(const RigidGraph& g, int d, std::uint64_t seed, int trials) {
  if (d != 2 && d != 3) throw GraphError("dimension must be 2 or 3");
  std::seed_seq seq{seed, std::uint64_t{0x9e3779b97f4a7c15ULL}};
  std::vector<std::uint64_t> seeds(trials);
  seq.generate(seeds.begin(), seeds.end());
  for (int k = 0; k < trials; ++k)
    if (global_rigidity_trial(g, d, seeds[k] ^ (std::uint64_t(k) << 32)).passed) return true;
  return false;
}

RigidGraph extend_to_globally_rigid(const RigidGraph& g, int d, std::uint64_t seed) {
  const int n = g.vertex_count();
  const int k = n - (d + 1);
  if (k < 0) throw GraphError("graph too small to extend");
  if (k == 0) {
    if (is_globally_rigid_generic(g, d, seed)) return g;
    throw GraphError("no globally rigid extension");
  }
  const auto missing = g.non_edges();
  const int m = static_cast<int>(missing.size());
  if (m < k) throw GraphError("not enough non-edges for a globally rigid extension");

  constexpr long kBudget = 200000;
  long tried = 0;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  for (;;) {
    // Necessary condition: minimum degree >= d+1 after the additions.
    std::vector<int> deg(n + 1);
    for (int v = 1; v <= n; ++v) deg[v] = g.degree(v);
    for (int i : idx) {
      ++deg[missing[i].a];
      ++deg[missing[i].b];
    }
    bool ok = true;
    for (int v = 1; v <= n && ok; ++v) ok = deg[v] >= d + 1;
    if (ok) {
      std::vector<Edge> extra;
      for (int i : idx) extra.push_back(missing[i]);
      RigidGraph h = g.with_edges(extra, g.name() + "+gr");
      if (is_globally_rigid_generic(h, d, seed)) return h;
      if (++tried > kBudget) break;
    }
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  throw GraphError("globally rigid extension search exhausted");
}

}  // namespace rigid
