#pragma once

#include <initializer_list>
#include <span>
#include <vector>

#include "polyroot/scalar.hpp"

namespace polyroot {

struct Evaluation {
  Complex value;
  Complex derivative;
};

enum class Norm { One, Two, Inf };

// Dense univariate polynomial, coefficients lowest degree first. Exact zero
// leading coefficients are trimmed; the zero polynomial is the single
// coefficient {0}.
class Poly {
 public:
  Poly() : c_{Complex{0}} {}
  explicit Poly(std::vector<Complex> coeffs);
  Poly(std::initializer_list<Complex> coeffs);

  static Poly constant(Complex a) { return Poly({a}); }
  static Poly monomial(int k, Complex a = 1);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == Complex{0}; }
  Complex leading() const { return c_.back(); }

  Complex operator[](int i) const {
    return (i >= 0 && i < static_cast<int>(c_.size())) ? c_[i] : Complex{0};
  }
  const std::vector<Complex>& coeffs() const { return c_; }
  std::span<const Complex> span() const { return c_; }

  Complex operator()(Complex x) const;

  Poly derivative() const;
  Poly monic() const;
  bool is_finite() const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(Complex a);

 private:
  void trim();
  std::vector<Complex> c_;
};

Poly operator+(Poly a, const Poly& b);
Poly operator-(Poly a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
Poly operator*(Poly a, Complex s);
Poly operator*(Complex s, Poly a);

// Value and first derivative by Horner's rule.
Evaluation eval_horner(const Poly& p, Complex x);

// Horner plus a running rounding-error bound on the value.
struct BoundedEvaluation {
  Complex value;
  Complex derivative;
  Real error_bound;
};
BoundedEvaluation eval_horner_bounded(const Poly& p, Complex x);

Real norm(const Poly& p, Norm kind = Norm::One);
Real norm(std::span<const Complex> v, Norm kind = Norm::One);

// t(x) = p(c + rho * x)
Poly shift_scale(const Poly& p, Complex c, Complex rho);

// x^d p(1/x)
Poly reverse(const Poly& p);

// p truncated to degree < k
Poly truncate(const Poly& p, int k);

// Power series inverse of a mod x^n; requires a(0) != 0.
Poly series_inverse(const Poly& a, int n);

// Long division by a divisor with nonzero leading coefficient.
struct DivMod {
  Poly quotient;
  Poly remainder;
};
DivMod divmod(const Poly& p, const Poly& v);
Poly mod(const Poly& p, const Poly& v);

// Product of (x - r) over roots, times lead.
Poly from_roots(std::span<const Complex> roots, Complex lead = 1);

}  // namespace polyroot
