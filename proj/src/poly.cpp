#include "polyroot/poly.hpp"

#include <algorithm>
#include <cmath>

#include "polyroot/error.hpp"

namespace polyroot {

Poly::Poly(std::vector<Complex> coeffs) : c_(std::move(coeffs)) { trim(); }

Poly::Poly(std::initializer_list<Complex> coeffs) : c_(coeffs) { trim(); }

Poly Poly::monomial(int k, Complex a) {
  require(k >= 0, "monomial: negative degree");
  std::vector<Complex> c(static_cast<std::size_t>(k) + 1, Complex{0});
  c[k] = a;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (c_.size() > 1 && c_.back() == Complex{0}) c_.pop_back();
  if (c_.empty()) c_.push_back(Complex{0});
}

Complex Poly::operator()(Complex x) const { return eval_horner(*this, x).value; }

Poly Poly::derivative() const {
  if (c_.size() <= 1) return Poly{};
  std::vector<Complex> d(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * Real(i);
  return Poly(std::move(d));
}

Poly Poly::monic() const {
  if (is_zero()) fail(ErrorCode::ZeroPolynomial, "monic: zero polynomial");
  Poly r = *this;
  const Complex lc = leading();
  for (auto& a : r.c_) a /= lc;
  r.c_.back() = 1;
  return r;
}

bool Poly::is_finite() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](Complex z) { return polyroot::is_finite(z); });
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex{0});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), Complex{0});
  for (std::size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

Poly& Poly::operator*=(Complex a) {
  for (auto& x : c_) x *= a;
  trim();
  return *this;
}

Poly operator+(Poly a, const Poly& b) { return a += b; }
Poly operator-(Poly a, const Poly& b) { return a -= b; }
Poly operator*(Poly a, Complex s) { return a *= s; }
Poly operator*(Complex s, Poly a) { return a *= s; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  const auto& x = a.coeffs();
  const auto& y = b.coeffs();
  std::vector<Complex> r(x.size() + y.size() - 1, Complex{0});
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) r[i + j] += x[i] * y[j];
  return Poly(std::move(r));
}

Evaluation eval_horner(const Poly& p, Complex x) {
  const auto& c = p.coeffs();
  Complex v = c.back();
  Complex d{0};
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * x + v;
    v = v * x + c[i];
  }
  return {v, d};
}

BoundedEvaluation eval_horner_bounded(const Poly& p, Complex x) {
  const auto& c = p.coeffs();
  const Real ax = std::abs(x);
  Complex v = c.back();
  Complex d{0};
  Real mu = std::abs(v) / 2;
  for (std::size_t i = c.size() - 1; i-- > 0;) {
    d = d * x + v;
    v = v * x + c[i];
    mu = mu * ax + std::abs(v);
  }
  // Complex Horner running bound; the factor covers complex multiply-add.
  const Real bound = 2 * std::sqrt(Real(2)) * kEps * (2 * mu - std::abs(v));
  return {v, d, std::max(bound, Real(0))};
}

Real norm(std::span<const Complex> v, Norm kind) {
  Real r = 0;
  switch (kind) {
    case Norm::One:
      for (auto z : v) r += std::abs(z);
      return r;
    case Norm::Two:
      for (auto z : v) r += std::norm(z);
      return std::sqrt(r);
    case Norm::Inf:
      for (auto z : v) r = std::max(r, std::abs(z));
      return r;
  }
  return r;
}

Real norm(const Poly& p, Norm kind) { return norm(p.span(), kind); }

Poly shift_scale(const Poly& p, Complex c, Complex rho) {
  require(rho != Complex{0}, "shift_scale: rho must be nonzero");
  std::vector<Complex> a = p.coeffs();
  const std::size_t n = a.size();
  // Repeated synthetic division: coefficients of p(c + y).
  if (c != Complex{0}) {
    for (std::size_t k = 0; k + 1 < n; ++k)
      for (std::size_t i = n - 1; i-- > k;) a[i] += c * a[i + 1];
  }
  Complex s{1};
  for (std::size_t k = 0; k < n; ++k) {
    a[k] *= s;
    s *= rho;
  }
  return Poly(std::move(a));
}

Poly reverse(const Poly& p) {
  std::vector<Complex> a = p.coeffs();
  std::reverse(a.begin(), a.end());
  return Poly(std::move(a));
}

Poly truncate(const Poly& p, int k) {
  if (k <= 0) return Poly{};
  const auto& c = p.coeffs();
  std::vector<Complex> r(c.begin(),
                         c.begin() + std::min<std::size_t>(c.size(), k));
  return Poly(std::move(r));
}

Poly series_inverse(const Poly& a, int n) {
  require(n >= 1, "series_inverse: n must be positive");
  if (a[0] == Complex{0})
    fail(ErrorCode::InvalidArgument, "series_inverse: a(0) = 0");
  std::vector<Complex> b(n, Complex{0});
  const Complex inv0 = Real(1) / a[0];
  b[0] = inv0;
  for (int k = 1; k < n; ++k) {
    Complex s{0};
    const int top = std::min(k, a.degree());
    for (int j = 1; j <= top; ++j) s += a[j] * b[k - j];
    b[k] = -s * inv0;
  }
  return Poly(std::move(b));
}

DivMod divmod(const Poly& p, const Poly& v) {
  if (v.is_zero()) fail(ErrorCode::ZeroPolynomial, "divmod: zero divisor");
  const int dp = p.degree();
  const int dv = v.degree();
  if (dp < dv) return {Poly{}, p};
  std::vector<Complex> r = p.coeffs();
  std::vector<Complex> q(dp - dv + 1, Complex{0});
  const Complex lc = v.leading();
  for (int k = dp - dv; k >= 0; --k) {
    const Complex t = r[k + dv] / lc;
    q[k] = t;
    for (int j = 0; j <= dv; ++j) r[k + j] -= t * v[j];
    r[k + dv] = 0;
  }
  r.resize(std::max(dv, 1));
  return {Poly(std::move(q)), Poly(std::move(r))};
}

Poly mod(const Poly& p, const Poly& v) { return divmod(p, v).remainder; }

Poly from_roots(std::span<const Complex> roots, Complex lead) {
  std::vector<Complex> r(roots.begin(), roots.end());
  std::stable_sort(r.begin(), r.end(), [](Complex a, Complex b) {
    return std::abs(a) > std::abs(b);
  });
  std::vector<Complex> c{lead};
  c.reserve(r.size() + 1);
  for (Complex x : r) {
    c.push_back(Complex{0});
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - x * c[i];
    c[0] = -x * c[0];
  }
  return Poly(std::move(c));
}

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid argument";
    case ErrorCode::ZeroPolynomial: return "zero polynomial";
    case ErrorCode::NonFinite: return "non-finite value";
    case ErrorCode::RootOnContour: return "root on contour";
    case ErrorCode::Undecided: return "undecided";
    case ErrorCode::Cancellation: return "cancellation";
    case ErrorCode::PrecisionBudget: return "precision budget exceeded";
    case ErrorCode::Collision: return "collision";
    case ErrorCode::Inconclusive: return "inconclusive";
    case ErrorCode::Diverged: return "diverged";
    case ErrorCode::Inconsistent: return "inconsistent";
    case ErrorCode::Breakdown: return "breakdown";
    case ErrorCode::NoCluster: return "no cluster";
    case ErrorCode::Io: return "i/o";
  }
  return "unknown";
}

}  // namespace polyroot
