#include "polyroot/realroots.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "polyroot/dft.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/error.hpp"
#include "polyroot/powersums.hpp"

namespace polyroot {

Complex zhukovsky(Complex z) {
  if (z == Complex{0}) fail(ErrorCode::InvalidArgument, "zhukovsky: z = 0");
  return (z + Real(1) / z) / Real(2);
}

std::pair<Complex, Complex> zhukovsky_inverse(Complex x) {
  // sqrt(x - 1) sqrt(x + 1) keeps the branch cut on [-1, 1]
  const Complex r = std::sqrt(x - Real(1)) * std::sqrt(x + Real(1));
  return {x + r, x - r};
}

Poly lift_to_circle(const Poly& p) {
  const int d = p.degree();
  if (d <= 0) return p;
  const int n = static_cast<int>(next_pow2(2 * d + 1));
  std::vector<Complex> v(n);
  for (int h = 0; h < n; ++h) {
    const Complex z = unit_root(n, h);
    v[h] = unit_root(n, static_cast<long long>(h) * d % n) *
           eval_horner(p, Complex(z.real(), 0)).value;
  }
  dft_inplace(v, true);
  v.resize(2 * d + 1);
  return Poly(std::move(v));
}

BlackBoxPoly lift_to_circle_blackbox(const BlackBoxPoly& p) {
  const int d = p.degree();
  const Complex lead = p.leading_coefficient() / std::pow(Real(2), d);
  auto s = [p, d](Complex z) -> Evaluation {
    const Evaluation e = p.eval(zhukovsky(z));
    const Complex zd1 = std::pow(z, d - 1);
    return {zd1 * z * e.value,
            Real(d) * zd1 * e.value +
                zd1 * z * e.derivative * (Real(1) - Real(1) / (z * z)) / Real(2)};
  };
  return BlackBoxPoly::custom(2 * d, [s](Complex z) -> Evaluation {
    if (z != Complex{0}) return s(z);
    // s is a polynomial; its value and slope at 0 from a symmetric pair
    const Real h = 1e-4;
    const Evaluation a = s(Complex(h, 0));
    const Evaluation b = s(Complex(-h, 0));
    return {(a.value + b.value) / Real(2), (a.value - b.value) / (2 * h)};
  }, lead, p.sequential_only());
}

CircleFactor circle_factor(const BlackBoxPoly& s, Real thetabar, std::uint64_t seed) {
  require(thetabar > 1, "circle_factor: thetabar must exceed 1");
  CircleFactor out;
  const int n = s.degree();
  if (n <= 0) {
    out.g = Poly::constant(1);
    return out;
  }
  out.q = static_cast<int>(next_pow2(2 * n + 200));
  const PowerSumEstimate est = power_sums_circle(s, 0, 1, out.q, thetabar, true, seed);
  out.count = est.values[0].real();
  const long long m = std::llround(out.count);
  if (std::abs(out.count - Real(m)) >= 0.25 || std::abs(est.values[0].imag()) >= 0.25)
    fail(ErrorCode::Undecided, "circle_factor: band count is not near an integer");
  if (m % 2 != 0)
    fail(ErrorCode::Inconsistent,
         "circle_factor: odd number of roots on the circle; a root lies close to the segment");
  out.w = static_cast<int>(m / 2);
  if (m == 0) {
    out.g = Poly::constant(1);
    return out;
  }
  std::vector<Complex> sums(est.values.begin() + 1, est.values.begin() + 1 + m);
  out.g = power_sums_to_coeffs_schonhage(sums, static_cast<int>(m), static_cast<int>(m));
  return out;
}

Poly segment_polynomial(const Poly& g, int w) {
  require(g.degree() == 2 * w, "segment_polynomial: degree of g must be 2w");
  if (w == 0) return Poly::constant(1);
  const int k = static_cast<int>(next_pow2(w + 1));
  const int n = 2 * k;
  std::vector<Complex> v(g.coeffs().begin(), g.coeffs().end());
  // g has degree 2w < 2K: one wrap-free transform gives g at the 2K-th roots
  v.resize(n, Complex{0});
  dft_inplace(v, false);
  const Real scale = std::pow(Real(2), -w);
  for (int h = 0; h < n; ++h)
    v[h] *= unit_root(n, -(static_cast<long long>(h) * w % n)) * scale;
  // v[h] = f(cos(pi h / K)); Chebyshev coefficients by the inverse transform
  dft_inplace(v, true);
  std::vector<Complex> cheb(w + 1);
  cheb[0] = v[0];
  for (int j = 1; j <= w; ++j) cheb[j] = v[j] + v[n - j];

  Poly prev = Poly::constant(1);
  Poly cur = Poly::monomial(1);
  Poly f = Poly::constant(cheb[0]);
  for (int j = 1; j <= w; ++j) {
    f += cur * cheb[j];
    Poly next = Poly::monomial(1, 2) * cur - prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return f;
}

namespace {

// Newton on p from t; returns the limit and the last step.
std::pair<Complex, Real> polish(const BlackBoxPoly& p, Complex t, int m) {
  Real step = kInf;
  for (int it = 0; it < 20; ++it) {
    const Complex r = p.log_derivative(t);
    if (!is_finite(r) || r == Complex{0}) return {t, 0};
    const Complex dt = Real(m) / r;
    const Real a = std::abs(dt);
    if (a > 2 * step) break;  // moving away; keep the last iterate
    t -= dt;
    step = a;
    if (a <= 4 * kEps * std::max<Real>(1, std::abs(t))) break;
  }
  return {t, step};
}

}  // namespace

RootReport solve_segment(const BlackBoxPoly& p, Real lo, Real hi, const SegmentConfig& cfg) {
  require(lo < hi, "solve_segment: need lo < hi");
  require(cfg.epsilon > 0, "solve_segment: epsilon must be positive");
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t ev0 = p.evaluations();
  const int d = p.degree();
  RootReport rep;
  if (d <= 0) {
    if (p.leading_coefficient() == Complex{0})
      fail(ErrorCode::ZeroPolynomial, "solve_segment: zero polynomial");
    return rep;
  }
  const Real mid = (lo + hi) / 2;
  const Real half = (hi - lo) / 2;

  // p on [-1, 1]
  BlackBoxPoly pt = p;
  if (p.dense()) {
    pt = shift_scale(*p.dense(), mid, half);
  } else {
    pt = BlackBoxPoly::custom(d, [p, mid, half](Complex t) -> Evaluation {
      const Evaluation e = p.eval(mid + half * t);
      return {e.value, half * e.derivative};
    }, p.leading_coefficient() * std::pow(half, d), p.sequential_only());
  }

  const BlackBoxPoly s = pt.dense() ? BlackBoxPoly(lift_to_circle(*pt.dense()))
                                    : lift_to_circle_blackbox(pt);
  const CircleFactor cf = circle_factor(s, cfg.thetabar, cfg.seed);
  rep.expected_count = cf.w;

  std::vector<std::pair<Complex, int>> approx;  // t and multiplicity
  auto from_report = [&](const RootReport& r, bool on_circle) {
    approx.clear();
    if (r.partial) return false;
    for (const auto& a : r.roots) {
      if (on_circle) {
        // conjugate pairs: keep the upper half, halve the real-axis roots
        if (a.approx.imag() > 1e-7) {
          approx.push_back({a.approx.real(), a.multiplicity});
        } else if (std::abs(a.approx.imag()) <= 1e-7) {
          if (a.multiplicity % 2 != 0) return false;
          approx.push_back({a.approx.real(), a.multiplicity / 2});
        }
      } else {
        if (std::abs(a.approx.imag()) > 1e-3) return false;
        approx.push_back({a.approx.real(), a.multiplicity});
      }
    }
    int total = 0;
    for (const auto& a : approx) total += a.second;
    return total == cf.w;
  };

  if (cf.w > 0) {
    EhrlichConfig ec;
    ec.epsilon = std::min<Real>(cfg.epsilon, 1e-12);
    ec.seed = cfg.seed;
    bool ok = false;
    if (cfg.transition) {
      try {
        ok = from_report(solve_all(segment_polynomial(cf.g, cf.w), ec), false);
      } catch (const Error&) {
        ok = false;
      }
    }
    if (!ok) ok = from_report(solve_all(cf.g, ec), true);
    if (!ok)
      fail(ErrorCode::Inconsistent,
           "solve_segment: roots on the circle do not pair up; the isolation contract is violated");
  }

  for (const auto& [t, m] : approx) {
    auto [tp, step] = polish(pt, t, m);
    if (std::abs(tp.imag()) > 1e-6 || std::abs(tp.real()) > 1 + 1e-6) {
      tp = t;
      step = cfg.epsilon / half;
    }
    Real re = std::clamp<Real>(tp.real(), -1, 1);
    const Real radius = std::max<Real>(m == 1 ? d * step : step, kEps * std::abs(re)) * half;
    rep.roots.push_back({Complex(mid + half * re, 0), radius, m, RootMethod::Segment});
  }
  std::sort(rep.roots.begin(), rep.roots.end(),
            [](const RootApprox& a, const RootApprox& b) { return a.approx.real() < b.approx.real(); });
  // black-box input is counted on p itself through the wrappers
  rep.stats.evaluations =
      p.evaluations() - ev0 + (p.dense() ? pt.evaluations() + s.evaluations() : 0);
  rep.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace polyroot
