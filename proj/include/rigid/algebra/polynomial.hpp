#pragma once

#include <complex>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

namespace rigid {

/// Power of one indeterminate. index >= 0 names a variable, index < 0 names
/// parameter (-1 - index).
struct Factor {
  int index = 0;
  int power = 1;
  friend bool operator==(const Factor&, const Factor&) = default;
  friend auto operator<=>(const Factor&, const Factor&) = default;
};

using Monomial = std::vector<Factor>;  // sorted by index, powers >= 1

constexpr int parameter_index(int j) { return -1 - j; }

/// Sparse polynomial in variables x and parameters p with real coefficients.
/// Parameters carry the length dependence, so one polynomial serves every instantiation.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(double c);

  static Polynomial variable(int i);
  static Polynomial parameter(int j);

  const std::map<Monomial, double>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree in the variables only.
  int variable_degree() const;
  bool uses_variable(int i) const;
  bool has_parameters() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(double s);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
  friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
  friend Polynomial operator-(Polynomial a) { return a *= -1.0; }

  /// Substitute numeric parameter values, leaving a polynomial in the variables.
  template <typename Scalar>
  std::map<Monomial, Scalar> instantiate(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& params) const;

  template <typename Scalar, typename VecX, typename VecP>
  Scalar evaluate(const VecX& x, const VecP& p) const;

 private:
  void add_term(const Monomial& m, double c);
  std::map<Monomial, double> terms_;
};

template <typename Scalar, typename VecX, typename VecP>
Scalar Polynomial::evaluate(const VecX& x, const VecP& p) const {
  Scalar sum(0.0);
  for (const auto& [mono, c] : terms_) {
    Scalar t(c);
    for (const auto& f : mono) {
      const Scalar base = f.index >= 0 ? Scalar(x[f.index]) : Scalar(p[-1 - f.index]);
      for (int k = 0; k < f.power; ++k) t = t * base;
    }
    sum = sum + t;
  }
  return sum;
}

template <typename Scalar>
std::map<Monomial, Scalar> Polynomial::instantiate(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& params) const {
  std::map<Monomial, Scalar> out;
  for (const auto& [mono, c] : terms_) {
    Scalar coeff(c);
    Monomial vars;
    for (const auto& f : mono) {
      if (f.index >= 0) {
        vars.push_back(f);
      } else {
        for (int k = 0; k < f.power; ++k) coeff *= params[-1 - f.index];
      }
    }
    out[vars] += coeff;
  }
  return out;
}

/// Flattened, evaluation-ready form of a list of polynomials. Evaluates values,
/// the variable Jacobian and the parameter Jacobian in one pass.
class CompiledSystem {
 public:
  CompiledSystem() = default;
  CompiledSystem(const std::vector<Polynomial>& equations, int num_variables, int num_parameters);

  int equations() const { return static_cast<int>(eq_begin_.size()) - 1; }
  int variables() const { return nvars_; }
  int parameters() const { return nparams_; }

  /// Values only; works with any indexable vector types (used for extended precision).
  template <typename Scalar, typename VecX, typename VecP, typename VecOut>
  void evaluate_values(const VecX& x, const VecP& p, VecOut& values) const;

  /// values, d/dx (equations x variables) and, if jp != nullptr, d/dp.
  template <typename Scalar>
  void evaluate(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x, const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& p,
                Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values,
                Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& jx,
                std::type_identity_t<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>* jp) const;

 private:
  int nvars_ = 0;
  int nparams_ = 0;
  std::vector<int> eq_begin_;    // term range per equation
  std::vector<double> coeff_;    // per term
  std::vector<int> term_begin_;  // factor range per term
  std::vector<Factor> factors_;
};

template <typename Scalar, typename VecX, typename VecP, typename VecOut>
void CompiledSystem::evaluate_values(const VecX& x, const VecP& p, VecOut& values) const {
  const int neq = equations();
  values.resize(neq);
  for (int e = 0; e < neq; ++e) {
    Scalar sum(0.0);
    for (int t = eq_begin_[e]; t < eq_begin_[e + 1]; ++t) {
      Scalar m(coeff_[t]);
      for (int f = term_begin_[t]; f < term_begin_[t + 1]; ++f) {
        const auto& fac = factors_[f];
        const Scalar base = fac.index >= 0 ? Scalar(x[fac.index]) : Scalar(p[-1 - fac.index]);
        for (int k = 0; k < fac.power; ++k) m *= base;
      }
      sum += m;
    }
    values[e] = sum;
  }
}

template <typename Scalar>
void CompiledSystem::evaluate(const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& x,
                              const Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& p,
                              Eigen::Matrix<Scalar, Eigen::Dynamic, 1>& values,
                              Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& jx,
                              std::type_identity_t<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>>* jp) const {
  const int neq = equations();
  values.resize(neq);
  jx.setZero(neq, nvars_);
  if (jp) jp->setZero(neq, nparams_);
  Scalar pw[16];
  for (int e = 0; e < neq; ++e) {
    Scalar sum(0.0);
    for (int t = eq_begin_[e]; t < eq_begin_[e + 1]; ++t) {
      const int fb = term_begin_[t], fe = term_begin_[t + 1];
      const int k = fe - fb;
      Scalar m(coeff_[t]);
      for (int f = fb; f < fe; ++f) {
        const auto& fac = factors_[f];
        const Scalar& base = fac.index >= 0 ? x[fac.index] : p[-1 - fac.index];
        Scalar v = base;
        for (int q = 1; q < fac.power; ++q) v *= base;
        pw[f - fb] = v;
        m *= v;
      }
      sum += m;
      for (int i = 0; i < k; ++i) {
        const auto& fac = factors_[fb + i];
        if (fac.index < 0 && !jp) continue;
        // d/dbase of c * prod = c * power * base^(power-1) * prod_{j != i}
        Scalar d(coeff_[t] * fac.power);
        const Scalar& base = fac.index >= 0 ? x[fac.index] : p[-1 - fac.index];
        for (int q = 1; q < fac.power; ++q) d *= base;
        for (int j = 0; j < k; ++j)
          if (j != i) d *= pw[j];
        if (fac.index >= 0)
          jx(e, fac.index) += d;
        else
          (*jp)(e, -1 - fac.index) += d;
      }
    }
    values[e] = sum;
  }
}

/// Polynomial as text in the variables (parameters substituted), degrevlex order,
/// 17 significant digits.
std::string to_text(const std::map<Monomial, double>& poly, const std::vector<std::string>& variable_names);

}  // namespace rigid
