#include "polyroot/radii.hpp"

#include <algorithm>
#include <cmath>

#include "polyroot/error.hpp"
#include "polyroot/powersums.hpp"

namespace polyroot {

RadiusBracket r1_coefficient_bounds(const Poly& p) {
  const int d = p.degree();
  require(d >= 1, "r1_coefficient_bounds: degree must be positive");
  const Real lead = std::abs(p.leading());
  Real rt = 0;
  Real sq = 1;
  for (int j = 1; j <= d; ++j) {
    const Real a = std::abs(p[d - j]) / lead;
    sq += a * a;
    if (a > 0) rt = std::max(rt, std::pow(a, Real(1) / j));
  }
  RadiusBracket b;
  b.lower = rt / d;
  b.coefficient_upper = 2 * rt;
  b.euclidean_upper = std::sqrt(sq);
  b.upper = std::min(b.coefficient_upper, b.euclidean_upper);
  return b;
}

Real r1_upper(const BlackBoxPoly& p) {
  const int d = p.degree();
  require(d >= 1, "r1_upper: degree must be positive");
  if (const Poly* dp = p.dense()) return r1_coefficient_bounds(*dp).upper;
  if (const auto* r = p.known_roots()) {
    Real m = 0;
    for (Complex x : *r) m = std::max(m, std::abs(x));
    return m;
  }
  const int q = static_cast<int>(next_pow2(std::max(64, 4 * d)));
  for (int j = -20; j <= 200; ++j) {
    const Real R = std::ldexp(Real(1), j);
    PowerSumEstimate e;
    try {
      e = power_sums_disc(p, Disc{0, R}, q, /*rotate=*/true, kDefaultSeed + j);
    } catch (const Error&) {
      continue;
    }
    if (std::abs(e.values[0] - Real(d)) < 0.25) return 2 * R;
  }
  fail(ErrorCode::Undecided, "r1_upper: no enclosing disc found");
}

TuranBracket turan_r1(std::span<const Complex> sums, int d, int K) {
  require(d >= 1 && K >= 1, "turan_r1: d and K must be positive");
  require(!sums.empty(), "turan_r1: no power sums");
  TuranBracket t;
  for (std::size_t g = 1; g <= sums.size(); ++g) {
    const Real v = std::abs(sums[g - 1]) / d;
    if (v > 0)
      t.r_star = std::max(t.r_star, std::pow(v, Real(1) / (Real(g) * K)));
  }
  t.lower = t.r_star;
  t.upper = t.r_star * std::pow(Real(5), Real(1) / K);
  return t;
}

std::optional<Real> cauchy_inclusion_radius(const BlackBoxPoly& p, Complex c) {
  const Evaluation e = p.eval(c);
  if (e.value == Complex{0}) return Real(0);
  if (e.derivative == Complex{0}) return std::nullopt;
  const Real r = p.degree() * std::abs(e.value / e.derivative);
  if (!std::isfinite(r)) return std::nullopt;
  return r;
}

int dandelin_cap(int d) {
  if (d <= 2) return 2;
  return static_cast<int>(std::ceil(std::log2(std::log2(Real(d))))) + 2;
}

namespace {
Poly dandelin_step(const Poly& p) {
  const int d = p.degree();
  // p(x) = e(x^2) + x o(x^2);  p(sqrt x) p(-sqrt x) = e(x)^2 - x o(x)^2
  std::vector<Complex> e, o;
  for (int i = 0; i <= d; ++i) (i % 2 == 0 ? e : o).push_back(p[i]);
  Poly pe(e), po(o);
  Poly r = pe * pe - Poly::monomial(1) * (po * po);
  if (d % 2 == 1) r *= Complex(-1);
  return r.monic();
}
}  // namespace

DandelinResult dandelin_squaring(const Poly& p, int iterations) {
  require(iterations >= 0, "dandelin_squaring: negative iteration count");
  require(p.degree() >= 1, "dandelin_squaring: degree must be positive");
  DandelinResult r{p.monic(), 0, iterations > dandelin_cap(p.degree())};
  for (int i = 0; i < iterations; ++i) {
    r.poly = dandelin_step(r.poly);
    r.iterations = i + 1;
    if (!r.poly.is_finite())
      fail(ErrorCode::NonFinite, "dandelin_squaring: coefficient overflow");
  }
  return r;
}

namespace {
struct Edge {
  Real radius;
  int mult;
};

// Upper hull of (i, log|a_i|); radii of the hull edges.
std::vector<Edge> newton_polygon(const Poly& a, int first) {
  std::vector<int> hull;
  std::vector<Real> lg(a.degree() + 1, -kInf);
  for (int i = first; i <= a.degree(); ++i) {
    const Real m = std::abs(a[i]);
    if (m == 0) continue;
    lg[i] = std::log(m);
    while (hull.size() >= 2) {
      const int i1 = hull[hull.size() - 2];
      const int i2 = hull.back();
      // drop i2 when it lies on or below the chord i1 -> i
      if ((lg[i2] - lg[i1]) * (i - i1) <= (lg[i] - lg[i1]) * (i2 - i1))
        hull.pop_back();
      else
        break;
    }
    hull.push_back(i);
  }
  std::vector<Edge> edges;
  for (std::size_t k = 1; k < hull.size(); ++k) {
    const int i = hull[k - 1], j = hull[k];
    edges.push_back({std::exp((lg[i] - lg[j]) / (j - i)), j - i});
  }
  return edges;
}
}  // namespace

std::vector<Annulus> annuli_cover(const Poly& p, Real width, int refine) {
  const int d = p.degree();
  require(d >= 1, "annuli_cover: degree must be positive");
  require(width > 1, "annuli_cover: width must exceed 1");
  int first = 0;
  while (p[first] == Complex{0}) ++first;

  std::vector<Annulus> out;
  if (first > 0) out.push_back({0, 0, 0, first});
  if (first == d) return out;

  // Drop the zero roots, then sharpen by root squaring. Each step squares the
  // worst-case estimate error, (2d)^(1/2^s) after s steps.
  std::vector<Complex> tail(p.coeffs().begin() + first, p.coeffs().end());
  Poly base(std::move(tail));
  const int db = base.degree();
  if (refine < 0)
    refine = db <= 1 ? 0
                     : static_cast<int>(std::ceil(std::log2(std::log2(2.0 * db))));
  Poly sq = base.monic();
  int steps = 0;
  for (; steps < refine; ++steps) {
    Poly next = dandelin_step(sq);
    bool ok = next.is_finite();
    for (auto c : next.coeffs())
      if (ok && c != Complex{0} && std::abs(c) < 1e-280) ok = false;
    if (!ok) break;
    sq = std::move(next);
  }
  const Real pw = std::ldexp(Real(1), -steps);

  std::vector<Edge> edges = newton_polygon(sq, 0);
  for (auto& e : edges) e.radius = std::pow(e.radius, pw);

  std::size_t k = 0;
  while (k < edges.size()) {
    Annulus a{0, edges[k].radius, edges[k].radius, 0};
    while (k < edges.size() && edges[k].radius <= width * a.inner) {
      a.outer = std::max(a.outer, edges[k].radius);
      a.count += edges[k].mult;
      ++k;
    }
    out.push_back(a);
  }
  return out;
}

}  // namespace polyroot
