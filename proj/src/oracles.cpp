#include "polyroot/oracles.hpp"

#include "ddouble.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"
#include "polyroot/error.hpp"

namespace polyroot::oracle {

namespace {

using LReal = long double;
using Coeffs = std::vector<LComplex>;

Coeffs widen(const Poly& p) { return Coeffs(p.coeffs().begin(), p.coeffs().end()); }

Poly narrow(const Coeffs& c) {
  std::vector<Complex> v;
  v.reserve(c.size());
  for (const auto& a : c) v.emplace_back(static_cast<Real>(a.real()), static_cast<Real>(a.imag()));
  return Poly(std::move(v));
}

LComplex horner(const Coeffs& c, LComplex x) {
  LComplex v = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

Coeffs multiply(const Coeffs& a, const Coeffs& b) {
  Coeffs out(a.size() + b.size() - 1, LComplex{0});
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

}  // namespace

Poly build_from_roots(std::vector<Complex> roots) {
  std::stable_sort(roots.begin(), roots.end(),
                   [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
  Coeffs c{LComplex{1}};
  for (Complex r : roots) {
    // multiply by (x - r) in place
    c.push_back(0);
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - LComplex(r) * c[i];
    c[0] = -LComplex(r) * c[0];
  }
  return narrow(c);
}

std::vector<Complex> brute_power_sums(const std::vector<Complex>& roots, const Disc& disc,
                                      int count) {
  std::vector<LComplex> s(std::max(count, 0), LComplex{0});
  for (Complex r : roots) {
    if (!(std::abs(r - disc.center) < disc.radius)) continue;
    const LComplex y = LComplex(r) - LComplex(disc.center);
    LComplex pw = 1;
    for (int h = 0; h < count; ++h) {
      s[h] += pw;
      pw *= y;
    }
  }
  std::vector<Complex> out;
  for (const auto& v : s) out.emplace_back(static_cast<Real>(v.real()), static_cast<Real>(v.imag()));
  return out;
}

std::vector<Complex> discretized_power_sums(const std::vector<Complex>& roots,
                                            const Disc& disc, int q) {
  std::vector<LComplex> s(q, LComplex{0});
  const LReal rho = disc.radius;
  for (Complex r : roots) {
    const LComplex y = (LComplex(r) - LComplex(disc.center)) / rho;
    const LReal a = std::abs(y);
    if (a < 1) {
      const LComplex den = LReal(1) - std::pow(y, q);
      for (int h = 0; h < q; ++h) s[h] += std::pow(y, h) / den;
    } else {
      const LComplex yi = LReal(1) / y;
      const LComplex den = LReal(1) - std::pow(yi, q);
      for (int h = 0; h < q; ++h) s[h] -= std::pow(yi, q - h) / den;
    }
  }
  std::vector<Complex> out;
  LReal scale = 1;
  for (int h = 0; h < q; ++h) {
    const LComplex v = s[h] * scale;
    out.emplace_back(static_cast<Real>(v.real()), static_cast<Real>(v.imag()));
    scale *= rho;
  }
  return out;
}

std::pair<Poly, Poly> long_division(const Poly& p, const Poly& v) {
  if (v.is_zero()) fail(ErrorCode::InvalidArgument, "long_division: zero divisor");
  Coeffs r = widen(p);
  const Coeffs b = widen(v);
  const int n = p.degree();
  const int m = v.degree();
  if (n < m) return {Poly::constant(0), p};
  Coeffs q(n - m + 1, LComplex{0});
  for (int i = n - m; i >= 0; --i) {
    const LComplex t = r[i + m] / b[m];
    q[i] = t;
    for (int j = 0; j <= m; ++j) r[i + j] -= t * b[j];
  }
  r.resize(std::max(m, 1));
  return {narrow(q), narrow(r)};
}

Poly expand_family(const std::string& name, int k) {
  require(k >= 0, "expand_family: k must be non-negative");
  Coeffs p;
  if (name == "mandelbrot") {
    // p_1 = x
    p = k == 0 ? Coeffs{1} : Coeffs{0, 1};
    for (int i = 1; i < k; ++i) {
      Coeffs sq = multiply(p, p);
      sq.insert(sq.begin(), LComplex{0});
      sq[0] += 1;
      p = std::move(sq);
    }
  } else if (name == "mandelbrot-map") {
    p = {0};
    for (int i = 0; i < k; ++i) {
      Coeffs sq = multiply(p, p);
      if (sq.size() < 2) sq.resize(2, LComplex{0});
      sq[1] += 1;
      p = std::move(sq);
    }
  } else if (name == "iterated-square") {
    p = {0, 1};
    for (int i = 0; i < k; ++i) {
      Coeffs sq = multiply(p, p);
      sq[0] += 2;
      p = std::move(sq);
    }
  } else {
    fail(ErrorCode::InvalidArgument, "expand_family: unknown family " + name);
  }
  require(p.size() <= 257, "expand_family: degree above 256");
  return narrow(p);
}

std::vector<Complex> reference_roots(const Poly& p, int max_iter) {
  const int d = p.degree();
  if (d <= 0) return {};
  Coeffs c = widen(p);
  const LComplex lead = c.back();
  for (auto& a : c) a /= lead;
  LReal bound = 0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::pow(std::abs(c[i]), LReal(1) / (d - i)));
  bound = 2 * bound + 1e-3L;

  std::vector<LComplex> z(d);
  const LComplex seed(0.4L, 0.9L);
  LComplex pw = 1;
  for (int j = 0; j < d; ++j) {
    pw *= seed;
    z[j] = pw / std::abs(pw) * bound * LReal(0.5 + 0.5 * (j + 1) / d);
  }
  const LReal tol = 64 * std::numeric_limits<LReal>::epsilon();
  for (int it = 0; it < max_iter; ++it) {
    LReal worst = 0;
    for (int j = 0; j < d; ++j) {
      LComplex den = 1;
      for (int i = 0; i < d; ++i)
        if (i != j) den *= (z[j] - z[i]);
      if (den == LComplex{0}) den = tol;
      const LComplex step = horner(c, z[j]) / den;
      z[j] -= step;
      worst = std::max(worst, std::abs(step) / std::max<LReal>(1, std::abs(z[j])));
    }
    if (worst <= tol) break;
  }
  std::vector<Complex> out;
  for (const auto& v : z) out.emplace_back(static_cast<Real>(v.real()), static_cast<Real>(v.imag()));
  return out;
}

std::vector<Complex> polish_roots(const Poly& p, std::vector<Complex> roots,
                                  int iterations) {
  // Horner in double-double on the stored coefficients: the value is then
  // accurate well below the conditioning of clustered roots.
  using dd::Complex2;
  const int d = p.degree();
  for (auto& z : roots) {
    Complex2 x(z);
    for (int it = 0; it < iterations; ++it) {
      Complex2 v, dv;
      for (int i = d; i >= 0; --i) {
        dv = dv * x + v;
        v = v * x + Complex2(p[i]);
      }
      if (dv.value() == Complex{0}) break;
      x = x - v / dv;
    }
    z = x.value();
  }
  return roots;
}

Real min_separation(const std::vector<Complex>& roots) {
  Real m = std::numeric_limits<Real>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j) m = std::min(m, std::abs(roots[i] - roots[j]));
  return m;
}

Real match_distance(std::vector<Complex> got, std::vector<Complex> want) {
  if (got.size() != want.size()) return std::numeric_limits<Real>::infinity();
  Real worst = 0;
  // closest pair first, repeatedly
  while (!want.empty()) {
    std::size_t bi = 0, bj = 0;
    Real best = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < got.size(); ++i)
      for (std::size_t j = 0; j < want.size(); ++j) {
        const Real e = std::abs(got[i] - want[j]);
        if (e < best) {
          best = e;
          bi = i;
          bj = j;
        }
      }
    worst = std::max(worst, best);
    got.erase(got.begin() + bi);
    want.erase(want.begin() + bj);
  }
  return worst;
}

std::vector<Complex> random_roots_in_disc(std::mt19937_64& rng, int n, Complex center,
                                          Real radius, Real separation) {
  std::uniform_real_distribution<Real> u(0, 1);
  std::vector<Complex> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < n) {
    if (++attempts > 1000000)
      fail(ErrorCode::InvalidArgument, "random_roots_in_disc: separation cannot be met");
    const Complex z = center + std::polar(radius * std::sqrt(u(rng)), 2 * kPi * u(rng));
    bool ok = true;
    for (Complex w : out)
      if (std::abs(z - w) < separation) {
        ok = false;
        break;
      }
    if (ok) out.push_back(z);
  }
  return out;
}

namespace {

Complex in_annulus(std::mt19937_64& rng, Real r0, Real r1) {
  std::uniform_real_distribution<Real> u(0, 1);
  // uniform by area
  const Real r = std::sqrt(r0 * r0 + (r1 * r1 - r0 * r0) * u(rng));
  return std::polar(r, 2 * kPi * u(rng));
}

bool far_enough(const std::vector<Complex>& roots, Complex z, Real sep) {
  for (Complex w : roots)
    if (std::abs(z - w) < sep) return false;
  return true;
}

std::vector<Complex> draw(const CorpusParams& cp, std::mt19937_64& rng) {
  std::uniform_real_distribution<Real> u(0, 1);
  const int d = cp.degree;
  std::vector<Complex> roots;
  auto push_sep = [&](auto gen) {
    for (int tries = 0; tries < 100000; ++tries) {
      const Complex z = gen();
      if (far_enough(roots, z, cp.separation)) {
        roots.push_back(z);
        return;
      }
    }
    fail(ErrorCode::InvalidArgument, "make_corpus: separation cannot be met");
  };
  if (cp.kind == "disc") {
    roots = random_roots_in_disc(rng, d, cp.center, cp.radius, cp.separation);
  } else if (cp.kind == "annulus-free") {
    for (int j = 0; j < d; ++j) {
      const bool inner = cp.inner_count > 0 ? j < cp.inner_count : u(rng) < 0.5;
      if (inner)
        push_sep([&] { return in_annulus(rng, 0, cp.gap_inner * (1 - 1e-9)); });
      else
        push_sep([&] { return in_annulus(rng, cp.gap_outer * (1 + 1e-9), cp.outer_max); });
    }
  } else if (cp.kind == "split") {
    for (int j = 0; j < cp.inner_count; ++j)
      push_sep([&] { return in_annulus(rng, 0, cp.gap_inner); });
    for (int j = cp.inner_count; j < d; ++j)
      push_sep([&] { return in_annulus(rng, cp.gap_outer, cp.outer_max); });
  } else if (cp.kind == "segment") {
    for (int j = 0; j < cp.inner_count; ++j)
      push_sep([&] { return Complex(cp.lo + (cp.hi - cp.lo) * u(rng), 0); });
    int rest = d - cp.inner_count;
    while (rest >= 2) {
      const Complex z = in_annulus(rng, cp.gap_outer, cp.outer_max);
      const Complex zz(z.real(), std::abs(z.imag()) + 1e-3);
      roots.push_back(zz);
      roots.push_back(std::conj(zz));
      rest -= 2;
    }
    if (rest == 1) roots.push_back(-(cp.gap_outer + (cp.outer_max - cp.gap_outer) * u(rng)));
  } else {
    fail(ErrorCode::InvalidArgument, "make_corpus: unknown kind " + cp.kind);
  }
  return roots;
}

}  // namespace

Corpus make_corpus(const CorpusParams& params, int count, std::uint64_t seed, bool dense) {
  require(params.degree >= 1, "make_corpus: degree must be positive");
  Corpus c;
  c.params = params;
  c.seed = seed;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < count; ++i) {
    CorpusEntry e;
    e.roots = draw(params, rng);
    if (dense) {
      const Poly p = build_from_roots(e.roots);
      const Coeffs w = widen(p);
      LReal n1 = 0;
      for (const auto& a : w) n1 += std::abs(a);
      for (Complex r : e.roots) {
        const LReal bound = 1e-8L * n1 * std::pow(1 + LReal(std::abs(r)), params.degree);
        if (!(std::abs(horner(w, r)) <= bound))
          fail(ErrorCode::Inconsistent, "make_corpus: stored root fails the self-check");
      }
      e.poly = p;
    }
    c.entries.push_back(std::move(e));
  }
  return c;
}

namespace {
nlohmann::json cjson(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }
Complex from_cjson(const nlohmann::json& j) { return {j.at(0).get<Real>(), j.at(1).get<Real>()}; }
}  // namespace

std::string to_json(const Corpus& c) {
  nlohmann::json j;
  const auto& p = c.params;
  j["seed"] = c.seed;
  j["params"] = {{"kind", p.kind},           {"degree", p.degree},
                 {"separation", p.separation}, {"center", cjson(p.center)},
                 {"radius", p.radius},       {"gap_inner", p.gap_inner},
                 {"gap_outer", p.gap_outer}, {"outer_max", p.outer_max},
                 {"inner_count", p.inner_count}, {"lo", p.lo}, {"hi", p.hi}};
  auto& arr = j["polys"] = nlohmann::json::array();
  for (const auto& e : c.entries) {
    nlohmann::json roots = nlohmann::json::array();
    for (Complex r : e.roots) roots.push_back(cjson(r));
    arr.push_back({{"roots", roots}});
  }
  return j.dump();
}

Corpus corpus_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& ex) {
    fail(ErrorCode::InvalidArgument, std::string("corpus_from_json: ") + ex.what());
  }
  Corpus c;
  c.seed = j.value("seed", std::uint64_t{0});
  if (j.contains("params")) {
    const auto& p = j["params"];
    c.params.kind = p.value("kind", "");
    c.params.degree = p.value("degree", 0);
    c.params.separation = p.value("separation", Real(0));
    if (p.contains("center")) c.params.center = from_cjson(p["center"]);
    c.params.radius = p.value("radius", Real(1));
    c.params.gap_inner = p.value("gap_inner", Real(0));
    c.params.gap_outer = p.value("gap_outer", Real(0));
    c.params.outer_max = p.value("outer_max", Real(0));
    c.params.inner_count = p.value("inner_count", 0);
    c.params.lo = p.value("lo", Real(-1));
    c.params.hi = p.value("hi", Real(1));
  }
  for (const auto& e : j.at("polys")) {
    CorpusEntry ce;
    for (const auto& r : e.at("roots")) ce.roots.push_back(from_cjson(r));
    c.entries.push_back(std::move(ce));
  }
  return c;
}

BlackBoxPoly as_blackbox(const CorpusEntry& e) { return BlackBoxPoly::factored(e.roots); }

}  // namespace polyroot::oracle
