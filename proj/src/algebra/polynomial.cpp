#include "rigid/algebra/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace rigid {

Polynomial::Polynomial(double c) {
  if (c != 0.0) terms_[{}] = c;
}

Polynomial Polynomial::variable(int i) {
  if (i < 0) throw std::invalid_argument("variable index must be >= 0");
  Polynomial p;
  p.terms_[{Factor{i, 1}}] = 1.0;
  return p;
}

Polynomial Polynomial::parameter(int j) {
  if (j < 0) throw std::invalid_argument("parameter index must be >= 0");
  Polynomial p;
  p.terms_[{Factor{parameter_index(j), 1}}] = 1.0;
  return p;
}

int Polynomial::variable_degree() const {
  int best = 0;
  for (const auto& [m, c] : terms_) {
    int d = 0;
    for (const auto& f : m)
      if (f.index >= 0) d += f.power;
    best = std::max(best, d);
  }
  return best;
}

bool Polynomial::uses_variable(int i) const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m)
      if (f.index == i) return true;
  return false;
}

bool Polynomial::has_parameters() const {
  for (const auto& [m, c] : terms_)
    for (const auto& f : m)
      if (f.index < 0) return true;
  return false;
}

void Polynomial::add_term(const Monomial& m, double c) {
  if (c == 0.0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0.0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(double s) {
  if (s == 0.0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, c] : terms_) c *= s;
  return *this;
}

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].index < b[j].index)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].index < a[i].index) {
      out.push_back(b[j++]);
    } else {
      out.push_back({a[i].index, a[i].power + b[j].power});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) out.add_term(multiply(ma, mb), ca * cb);
  return out;
}

CompiledSystem::CompiledSystem(const std::vector<Polynomial>& equations, int num_variables, int num_parameters)
    : nvars_(num_variables), nparams_(num_parameters) {
  eq_begin_.push_back(0);
  term_begin_.push_back(0);
  for (const auto& eq : equations) {
    for (const auto& [m, c] : eq.terms()) {
      if (m.size() > 16) throw std::invalid_argument("monomial has too many factors");
      for (const auto& f : m) {
        if (f.index >= nvars_ || -1 - f.index >= nparams_)
          throw std::invalid_argument("polynomial index out of range");
        factors_.push_back(f);
      }
      coeff_.push_back(c);
      term_begin_.push_back(static_cast<int>(factors_.size()));
    }
    eq_begin_.push_back(static_cast<int>(coeff_.size()));
  }
}

namespace {

// Exponent vector over the variables, for ordering.
std::vector<int> exponents(const Monomial& m, int nvars) {
  std::vector<int> e(nvars, 0);
  for (const auto& f : m) e[f.index] = f.power;
  return e;
}

// degrevlex: true if a > b.
bool degrevlex_greater(const std::vector<int>& a, const std::vector<int>& b) {
  int da = 0, db = 0;
  for (int x : a) da += x;
  for (int x : b) db += x;
  if (da != db) return da > db;
  for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_text(const std::map<Monomial, double>& poly, const std::vector<std::string>& variable_names) {
  const int nv = static_cast<int>(variable_names.size());
  std::vector<std::pair<std::vector<int>, double>> terms;
  for (const auto& [m, c] : poly) {
    if (c == 0.0) continue;
    for (const auto& f : m)
      if (f.index < 0 || f.index >= nv) throw std::invalid_argument("to_text: unsubstituted parameter");
    terms.emplace_back(exponents(m, nv), c);
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& x, const auto& y) { return degrevlex_greater(x.first, y.first); });
  if (terms.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms) {
    double mag = c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (c < 0) mag = -c;
    bool constant = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    std::string mono;
    for (int i = 0; i < nv; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variable_names[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (constant) {
      out += format_double(mag);
    } else if (mag == 1.0) {
      out += mono;
    } else {
      out += format_double(mag) + "*" + mono;
    }
    first = false;
  }
  return out;
}

}  // namespace rigid
