#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "rigid/algebra/lengths.hpp"
#include "rigid/algebra/system.hpp"

namespace rigid {

enum class SolutionClass { Real, Complex, Singular, Diverged };

std::string_view to_string(SolutionClass c);

struct Solution {
  Eigen::VectorXcd x;
  double residual = 0.0;
  double newton_contraction = 0.0;  // size of the last Newton step
  double max_imag = 0.0;
  SolutionClass cls = SolutionClass::Complex;
};

struct CompletenessEvidence {
  enum class Kind { None, Stable, KnownCount, LowerBound, Tracked };
  Kind kind = Kind::None;
  int loops = 0;
  int stable_rounds = 0;
  int failed_paths = 0;
  bool complete() const { return kind == Kind::Stable || kind == Kind::KnownCount || kind == Kind::Tracked; }
};

std::string_view to_string(CompletenessEvidence::Kind k);

/// Deduplicated solutions of one instantiation of a system.
struct SolutionSet {
  std::shared_ptr<const PolynomialSystem> system;
  Eigen::VectorXcd parameters;
  std::optional<LengthAssignment> lengths;  // when the parameters come from real lengths
  std::vector<Solution> solutions;
  std::vector<Solution> singular;  // endpoints excluded from counts
  CompletenessEvidence evidence;

  int size() const { return static_cast<int>(solutions.size()); }
};

constexpr double kTauSep = 1e-8;
constexpr double kTauIm = 1e-8;
constexpr double kTauRes = 1e-10;

double max_norm_distance(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b);

/// Index of a stored solution within tau * max(1, |x|) of x, or -1.
int find_solution(const std::vector<Solution>& sols, const Eigen::VectorXcd& x, double tau = kTauSep);

}  // namespace rigid
