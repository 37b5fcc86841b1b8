#pragma once

#include <cmath>
#include <complex>

namespace rigid {

/// Unevaluated sum hi + lo with |lo| <= ulp(hi)/2 (about 32 significant digits).
struct DoubleDouble {
  double hi = 0.0;
  double lo = 0.0;

  DoubleDouble() = default;
  DoubleDouble(double x) : hi(x), lo(0.0) {}  // NOLINT implicit on purpose
  DoubleDouble(double h, double l) : hi(h), lo(l) {}

  static DoubleDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
  }
  static DoubleDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
  }
  static DoubleDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
  }

  friend DoubleDouble operator+(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble s = two_sum(a.hi, b.hi);
    DoubleDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
  }
  friend DoubleDouble operator-(const DoubleDouble& a) { return {-a.hi, -a.lo}; }
  friend DoubleDouble operator-(const DoubleDouble& a, const DoubleDouble& b) { return a + (-b); }
  friend DoubleDouble operator*(const DoubleDouble& a, const DoubleDouble& b) {
    DoubleDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
  }
  DoubleDouble& operator+=(const DoubleDouble& o) { return *this = *this + o; }
  DoubleDouble& operator-=(const DoubleDouble& o) { return *this = *this - o; }
  DoubleDouble& operator*=(const DoubleDouble& o) { return *this = *this * o; }

  double to_double() const { return hi + lo; }
};

/// Complex number over DoubleDouble; only the ring operations polynomial evaluation needs.
struct ComplexDD {
  DoubleDouble re;
  DoubleDouble im;

  ComplexDD() = default;
  ComplexDD(double x) : re(x) {}  // NOLINT
  ComplexDD(std::complex<double> z) : re(z.real()), im(z.imag()) {}  // NOLINT
  ComplexDD(DoubleDouble r, DoubleDouble i) : re(r), im(i) {}

  friend ComplexDD operator+(const ComplexDD& a, const ComplexDD& b) { return {a.re + b.re, a.im + b.im}; }
  friend ComplexDD operator-(const ComplexDD& a, const ComplexDD& b) { return {a.re - b.re, a.im - b.im}; }
  friend ComplexDD operator*(const ComplexDD& a, const ComplexDD& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  ComplexDD& operator+=(const ComplexDD& o) { return *this = *this + o; }
  ComplexDD& operator-=(const ComplexDD& o) { return *this = *this - o; }
  ComplexDD& operator*=(const ComplexDD& o) { return *this = *this * o; }

  std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }
};

}  // namespace rigid
