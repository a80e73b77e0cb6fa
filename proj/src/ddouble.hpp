#pragma once

// Double-double arithmetic (unevaluated sums hi + lo) for the recurrences
// whose terms cancel by many orders of magnitude.

#include <cmath>
#include <vector>

#include "polyroot/error.hpp"
#include "polyroot/poly.hpp"

namespace polyroot::dd {

struct Real2 {
  double hi = 0;
  double lo = 0;
};

inline Real2 two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline Real2 quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline Real2 operator+(Real2 a, Real2 b) {
  Real2 s = two_sum(a.hi, b.hi);
  s.lo += a.lo + b.lo;
  return quick_two_sum(s.hi, s.lo);
}
inline Real2 operator-(Real2 a) { return {-a.hi, -a.lo}; }
inline Real2 operator-(Real2 a, Real2 b) { return a + (-b); }

inline Real2 operator*(Real2 a, Real2 b) {
  const double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}

inline Real2 operator/(Real2 a, Real2 b) {
  const double q1 = a.hi / b.hi;
  const Real2 r = a - Real2{q1} * b;
  const double q2 = r.hi / b.hi;
  const Real2 r2 = r - Real2{q2} * b;
  return quick_two_sum(q1, q2) + Real2{r2.hi / b.hi};
}

struct Complex2 {
  Real2 re;
  Real2 im;

  Complex2() = default;
  Complex2(Real2 r, Real2 i) : re(r), im(i) {}
  explicit Complex2(Complex z) : re{z.real()}, im{z.imag()} {}

  Complex value() const { return {re.hi + re.lo, im.hi + im.lo}; }
};

inline Complex2 operator+(Complex2 a, Complex2 b) { return {a.re + b.re, a.im + b.im}; }
inline Complex2 operator-(Complex2 a, Complex2 b) { return {a.re - b.re, a.im - b.im}; }
inline Complex2 operator*(Complex2 a, Complex2 b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline Complex2 operator/(Complex2 a, Complex2 b) {
  const Real2 n = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

// s_1..s_k of the roots of p by Newton's identities,
// p_d s_i = -i p_{d-i} - sum_{j=1}^{i-1} p_{d-j} s_{i-j}.
inline std::vector<Complex2> newton_power_sums(const Poly& p, int k) {
  const int d = p.degree();
  const Complex2 lead(p.leading());
  std::vector<Complex2> s(k + 1);
  for (int i = 1; i <= k; ++i) {
    Complex2 acc;
    if (i <= d) acc = Complex2(Complex(-i)) * Complex2(p[d - i]);
    for (int j = 1; j <= std::min(i - 1, d); ++j) acc = acc - Complex2(p[d - j]) * s[i - j];
    s[i] = acc / lead;
  }
  s.erase(s.begin());
  return s;
}

}  // namespace polyroot::dd
