#include "polyroot/deflation.hpp"

#include <algorithm>
#include <cmath>

#include "ddouble.hpp"
#include "polyroot/dft.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/error.hpp"
#include "polyroot/powersums.hpp"
#include "polyroot/radii.hpp"

namespace polyroot {

namespace {

Complex product_minus(Complex y, std::span<const Complex> roots) {
  Complex v{1};
  for (Complex t : roots) v *= (y - t);
  return v;
}

// |lead f(y) prod(y - t) - p(y)| / |p(y)| at one point off the sample set.
Real check_point_defect(const BlackBoxPoly& p, const Poly& f,
                        std::span<const Complex> tame, Complex y) {
  const Complex pv = p.eval(y).value;
  const Complex mv = p.leading_coefficient() * f(y) * product_minus(y, tame);
  const Real den = std::abs(pv);
  return den > 0 ? std::abs(mv - pv) / den : std::abs(mv - pv);
}

}  // namespace

Deflation deflate_powersum(const BlackBoxPoly& p, std::span<const Complex> tame,
                           int w, Real max_loss_bits) {
  const int d = p.degree();
  require(w >= 1 && w <= d, "deflate_powersum: need 1 <= w <= d");
  require(static_cast<int>(tame.size()) == d - w,
          "deflate_powersum: expected d - w tame roots");
  const int n = 2 * w;
  std::vector<dd::Complex2> s;
  Real R = 1;
  if (p.kind() == PolyKind::Dense) {
    s = dd::newton_power_sums(*p.dense(), n);
  } else {
    R = 2 * r1_upper(p);
    const int q = static_cast<int>(next_pow2(n + 64));
    const PowerSumEstimate e = power_sums_disc(p, Disc{0, R}, q, true);
    for (int h = 1; h <= n; ++h) s.emplace_back(e.values[h]);
  }

  Deflation out;
  out.method = DeflationMethod::PowerSum;
  std::vector<Complex> wild(n);
  std::vector<dd::Complex2> pw(tame.size(), dd::Complex2(Complex{1}));
  for (int h = 1; h <= n; ++h) {
    dd::Complex2 t;
    for (std::size_t j = 0; j < tame.size(); ++j) {
      pw[j] = pw[j] * dd::Complex2(tame[j]);
      t = t + pw[j];
    }
    wild[h - 1] = (s[h - 1] - t).value();
    // the factor depends on s_1..s_w only
    const Real a = std::abs(s[h - 1].value()), b = std::abs(wild[h - 1]);
    if (h <= w && a > 0 && b > 0)
      out.precision_loss_bits = std::max(out.precision_loss_bits, std::log2(a / b));
  }
  if (out.precision_loss_bits > max_loss_bits)
    fail(ErrorCode::PrecisionBudget, "deflate_powersum: cancellation in wild sums");
  out.factor = power_sums_to_coeffs_schonhage(wild, w, w);
  out.residual = check_point_defect(p, out.factor, tame, std::polar(R, 0.7));
  return out;
}

Deflation deflate_evalinterp(const BlackBoxPoly& p, std::span<const Complex> tame,
                             int w, Real R) {
  const int d = p.degree();
  require(w >= 1 && w <= d, "deflate_evalinterp: need 1 <= w <= d");
  require(static_cast<int>(tame.size()) == d - w,
          "deflate_evalinterp: expected d - w tame roots");
  require(R > 0, "deflate_evalinterp: radius must be positive");
  const int K = static_cast<int>(next_pow2(w + 1));

  Complex u{1};
  auto collides = [&](Complex rot) {
    for (int j = 0; j < K; ++j) {
      const Complex y = R * rot * unit_root(K, j);
      for (Complex t : tame)
        if (std::abs(y - t) < 1e-8 * R) return true;
    }
    return false;
  };
  if (collides(u)) {
    u = unit_root(2 * K, 1);
    if (collides(u))
      fail(ErrorCode::Collision, "deflate_evalinterp: sample point hits a tame root");
  }

  std::vector<Complex> v(K);
  for (int j = 0; j < K; ++j) {
    const Complex y = R * u * unit_root(K, j);
    v[j] = p.eval(y).value / product_minus(y, tame);
  }
  dft_inplace(v, true);
  const Complex ru = R * u;
  Complex s{1};
  for (int i = 0; i < K; ++i) {
    v[i] /= s;
    s *= ru;
  }
  v.resize(w + 1);
  if (v[w] == Complex{0})
    fail(ErrorCode::Inconsistent, "deflate_evalinterp: vanishing leading coefficient");
  Deflation out;
  out.method = DeflationMethod::EvalInterp;
  out.factor = Poly(v).monic();
  out.residual =
      check_point_defect(p, out.factor, tame, R * u * unit_root(2 * K, 1) * 1.1);
  return out;
}

namespace {
// Taylor coefficients of p at c.
std::vector<Complex> taylor_at(const BlackBoxPoly& p, Complex c) {
  if (const Poly* dp = p.dense()) return shift_scale(*dp, c, 1).coeffs();
  const int d = p.degree();
  const int N = static_cast<int>(next_pow2(d + 1));
  std::vector<Complex> v(N);
  for (int j = 0; j < N; ++j) v[j] = p.eval(c + unit_root(N, j)).value;
  dft_inplace(v, true);
  v.resize(d + 1);
  return v;
}
}  // namespace

Deflation deflate_laser(const BlackBoxPoly& p, Complex c, std::optional<int> w,
                        Real tol) {
  const int d = p.degree();
  require(d >= 1, "deflate_laser: degree must be positive");
  const std::vector<Complex> t = taylor_at(p, c);
  int order = 0;
  if (w) {
    require(*w >= 1 && *w <= d, "deflate_laser: need 1 <= w <= d");
    order = *w;
  } else {
    const Real scale = norm(t, Norm::Inf);
    order = -1;
    for (int k = 0; k <= d; ++k) {
      if (std::abs(t[k]) > tol * scale) {
        order = k;
        break;
      }
    }
    if (order <= 0)
      fail(ErrorCode::NoCluster, "deflate_laser: no vanishing derivatives at c");
  }
  std::vector<Complex> head(t.begin(), t.begin() + order + 1);
  if (head.back() == Complex{0})
    fail(ErrorCode::NoCluster, "deflate_laser: derivative of order w vanishes");
  Deflation out;
  out.method = DeflationMethod::Laser;
  out.section = shift_scale(Poly(head), -c, 1);
  out.factor = out.section->monic();
  out.needs_strong_isolation = true;
  return out;
}

bool verify_by_roots(const BlackBoxPoly& p, const Poly& factor, Real tol) {
  if (factor.degree() < 1) return false;
  EhrlichConfig cfg;
  cfg.epsilon = 1e-14;
  const RootReport rep = solve_all(factor, cfg);
  for (const auto& r : rep.roots) {
    const auto rho = cauchy_inclusion_radius(p, r.approx);
    if (!rho || *rho > tol) return false;
  }
  return true;
}

ModularCheck verify_modular(const Poly& p_in, const Poly& factor,
                            std::span<const Modulus> moduli_in, Real eps) {
  require(eps > 0, "verify_modular: eps must be positive");
  const Poly f = factor.monic();
  const int d = p_in.degree();
  const int w = f.degree();
  ModularCheck out;
  const Real tau = eps / (d * std::ldexp(Real(1), 2 * d + 1));
  const Real floor = 64 * kEps * d;
  if (d <= 20 && tau >= floor) {
    out.threshold = tau;
  } else {
    out.threshold = eps;
    out.heuristic_threshold = true;
  }
  const int nq = d - w;
  if (nq < 0 || w < 1) return out;

  std::vector<Modulus> moduli(moduli_in.begin(), moduli_in.end());
  if (moduli.empty())
    for (int a = 0; a <= 2; ++a) {
      moduli.push_back({Modulus::XPowK, 2 * w + a});
      moduli.push_back({Modulus::OneMinusXPowK, 2 * w + a});
    }
  int kx = 0, kfold = 0;
  for (const auto& m : moduli) {
    require(m.k >= 1, "verify_modular: modulus degree must be positive");
    if (m.kind == Modulus::XPowK) kx = std::max(kx, m.k);
    else if (m.k >= nq + 1) kfold = kfold ? std::min(kfold, m.k) : m.k;
  }


  const Real fscale = norm(f);
  const bool low_ok = std::abs(f[0]) > 1e-14 * fscale;
  using Candidate = std::vector<std::optional<Complex>>;
  std::vector<Candidate> candidates;

  // low side: q = p / f mod x^L; high side: x^nq q(1/x) = rev(p) / rev(f)
  auto sides = [&](int L, Candidate& lo, Candidate& hi) {
    lo.assign(nq + 1, std::nullopt);
    hi.assign(nq + 1, std::nullopt);
    if (L <= 0) return;
    if (low_ok) {
      const Poly ql = truncate(truncate(p_in, L) * series_inverse(truncate(f, L), L), L);
      for (int i = 0; i < L; ++i) lo[i] = ql[i];
    }
    std::vector<Complex> pr(p_in.coeffs().rbegin(), p_in.coeffs().rend());
    std::vector<Complex> fr(f.coeffs().rbegin(), f.coeffs().rend());
    const Poly qr = truncate(truncate(Poly(pr), L) * series_inverse(Poly(fr), L), L);
    for (int i = 0; i < L; ++i) hi[nq - i] = qr[i];
  };
  auto merge = [](const Candidate& first, const Candidate& second) {
    Candidate c = first;
    for (std::size_t i = 0; i < c.size(); ++i)
      if (!c[i]) c[i] = second[i];
    return c;
  };
  auto complete = [](const Candidate& c) {
    return std::all_of(c.begin(), c.end(), [](const auto& v) { return v.has_value(); });
  };

  Candidate lo, hi;
  sides(std::min(kx, nq + 1), lo, hi);
  candidates.push_back(merge(lo, hi));
  candidates.push_back(merge(hi, lo));
  if (kfold > 0) {
    // deg q < k: q is the interpolant of p/f at the k-th roots of unity
    const int n = static_cast<int>(next_pow2(kfold));
    std::vector<Complex> v(n);
    bool ok = true;
    for (int j = 0; j < n && ok; ++j) {
      const Complex y = unit_root(n, j);
      const Complex fv = f(y);
      if (std::abs(fv) < 1e-14 * fscale) ok = false;
      else v[j] = p_in(y) / fv;
    }
    if (ok) {
      dft_inplace(v, true);
      candidates.emplace_back(v.begin(), v.begin() + nq + 1);
    }
  }
  // any q with small |f q - p| certifies the factor
  const Real pn = norm(p_in);
  auto best = [&] {
    for (const auto& c : candidates) {
      if (!complete(c)) continue;
      std::vector<Complex> q(nq + 1);
      for (int i = 0; i <= nq; ++i) q[i] = *c[i];
      const Real r = norm(f * Poly(std::move(q)) - p_in) / pn;
      if (std::isfinite(r)) out.residual = std::min(out.residual, r);
    }
  };
  best();
  if (!(out.residual <= out.threshold)) {
    // the moduli do not pin down q, or the low-side series is unstable
    // (small roots of f): lengthen x^k to k = nq + 1
    out.extended = true;
    sides(nq + 1, lo, hi);
    candidates = {lo, hi};
    best();
  }
  if (!std::isfinite(out.residual)) {
    out.inconclusive = true;
    return out;
  }
  out.passed = out.residual <= out.threshold;
  return out;
}

Poly interpolate(std::span<const Complex> x, std::span<const Complex> y) {
  require(x.size() == y.size() && !x.empty(), "interpolate: size mismatch");
  const std::size_t n = x.size();
  std::vector<Complex> c(y.begin(), y.end());
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t i = n - 1; i >= j; --i) {
      const Complex dx = x[i] - x[i - j];
      if (dx == Complex{0}) fail(ErrorCode::Collision, "interpolate: repeated node");
      c[i] = (c[i] - c[i - 1]) / dx;
    }
  // Newton form to monomial basis
  std::vector<Complex> a{c[n - 1]};
  for (std::size_t k = n - 1; k-- > 0;) {
    a.push_back(Complex{0});
    for (std::size_t i = a.size() - 1; i > 0; --i) a[i] = a[i - 1] - x[k] * a[i];
    a[0] = c[k] - x[k] * a[0];
  }
  return Poly(std::move(a));
}

Poly mod_reduce(const BlackBoxPoly& p, std::span<const Complex> points) {
  std::vector<Complex> v(points.size());
  for (std::size_t j = 0; j < points.size(); ++j) v[j] = p.eval(points[j]).value;
  return interpolate(points, v);
}

Division divide(const BlackBoxPoly& p, const Poly& v, DivisionMethod method) {
  const int d = p.degree();
  const int k = v.degree();
  require(!v.is_zero() && k >= 1, "divide: divisor must have positive degree");
  Division out;
  if (d < k) {
    require(p.dense() != nullptr, "divide: low-degree black box");
    out.remainder = *p.dense();
    out.residual = 0;
    return out;
  }
  const Poly* dp = p.dense();
  switch (method) {
    case DivisionMethod::Coefficient: {
      require(dp != nullptr, "divide: coefficient method needs coefficients");
      const int n = d - k + 1;
      std::vector<Complex> pr(dp->coeffs().rbegin(), dp->coeffs().rend());
      std::vector<Complex> vr(v.coeffs().rbegin(), v.coeffs().rend());
      const Poly qr = truncate(Poly(pr) * series_inverse(Poly(vr), n), n);
      std::vector<Complex> qc(n);
      for (int i = 0; i < n; ++i) qc[i] = qr[n - 1 - i];
      out.quotient = Poly(std::move(qc));
      out.remainder = truncate(*dp - out.quotient * v, k);
      break;
    }
    case DivisionMethod::EvalInterp: {
      // p/v = q + r/v; the tail of r/v decays like (r1(v)/R)^m and aliases
      // into the low coefficients, so R stays modest and N generous.
      const Real R = 1.1 * std::max<Real>(1, r1_coefficient_bounds(v).upper);
      const int N = static_cast<int>(next_pow2(d - k + 1 + 400));
      std::vector<Complex> vals(N);
      for (int j = 0; j < N; ++j) {
        const Complex y = R * unit_root(N, j);
        vals[j] = p.eval(y).value / v(y);
      }
      dft_inplace(vals, true);
      std::vector<Complex> qc(d - k + 1);
      Real s = 1;
      for (int i = 0; i <= d - k; ++i) {
        qc[i] = vals[i] / s;
        s *= R;
      }
      out.quotient = Poly(std::move(qc));
      if (dp) {
        out.remainder = truncate(*dp - out.quotient * v, k);
      } else {
        const int m = static_cast<int>(next_pow2(std::max(k, 1)));
        std::vector<Complex> rv(m);
        for (int j = 0; j < m; ++j) {
          const Complex y = unit_root(m, j);
          rv[j] = p.eval(y).value - out.quotient(y) * v(y);
        }
        dft_inplace(rv, true);
        rv.resize(std::max(k, 1));
        out.remainder = Poly(std::move(rv));
      }
      break;
    }
    case DivisionMethod::ModReduce: {
      EhrlichConfig cfg;
      cfg.epsilon = 1e-14;
      const RootReport rep = solve_all(v, cfg);
      std::vector<Complex> pts;
      for (const auto& r : rep.roots)
        for (int m = 0; m < r.multiplicity; ++m) pts.push_back(r.approx);
      out.remainder = mod_reduce(p, pts);
      break;
    }
  }
  if (dp && method != DivisionMethod::ModReduce)
    out.residual = norm(*dp - (out.quotient * v + out.remainder)) / norm(*dp);
  return out;
}

namespace {
Poly product_except(const std::vector<Poly>& f, std::size_t skip) {
  Poly r = Poly::constant(1);
  for (std::size_t i = 0; i < f.size(); ++i)
    if (i != skip) r = r * f[i];
  return r;
}

void record(const Poly& p, RefinementState& s) {
  const Poly all = product_except(s.factors, s.factors.size());
  s.delta.push_back(norm(p - all) / norm(p));
  Poly acc = Poly::constant(1);
  for (std::size_t j = 0; j < s.factors.size(); ++j)
    acc -= s.h[j] * product_except(s.factors, j);
  s.sigma.push_back(norm(acc));
}
}  // namespace

RefinementState refine_factorization(const Poly& p_in, RefinementState s,
                                     int iterations) {
  require(!s.factors.empty(), "refine_factorization: no factors");
  require(iterations >= 0, "refine_factorization: negative iteration count");
  const Poly p = p_in.monic();
  int total = 0;
  for (auto& f : s.factors) {
    require(f.degree() >= 1, "refine_factorization: constant factor");
    f = f.monic();
    total += f.degree();
  }
  require(total == p.degree(), "refine_factorization: degrees do not add up");

  if (s.h.empty()) {
    for (std::size_t j = 0; j < s.factors.size(); ++j) {
      const Poly& fj = s.factors[j];
      std::vector<Complex> ys;
      if (fj.degree() == 1) {
        ys.push_back(-fj[0]);
      } else {
        EhrlichConfig cfg;
        cfg.epsilon = 1e-14;
        for (const auto& r : solve_all(fj, cfg).roots)
          for (int m = 0; m < r.multiplicity; ++m) ys.push_back(r.approx);
      }
      const Poly qj = product_except(s.factors, j);
      std::vector<Complex> vals;
      for (Complex y : ys) vals.push_back(Real(1) / qj(y));
      s.h.push_back(interpolate(ys, vals));
    }
  }
  require(s.h.size() == s.factors.size(), "refine_factorization: h size mismatch");
  if (s.delta.empty()) record(p, s);
  const Real delta0 = s.delta.front();

  for (int it = 0; it < iterations; ++it) {
    std::vector<Poly> nf(s.factors.size()), nh(s.factors.size());
    for (std::size_t j = 0; j < s.factors.size(); ++j) {
      const Poly& fj = s.factors[j];
      const Poly qj = product_except(s.factors, j);
      const Poly a = mod(s.h[j] * qj, fj);
      nh[j] = mod((Poly::constant(2) - a) * s.h[j], fj);
      nf[j] = fj + mod(nh[j] * p, fj);
    }
    s.factors = std::move(nf);
    s.h = std::move(nh);
    record(p, s);
    const Real dl = s.delta.back();
    if (!std::isfinite(dl) || dl > 1e3 * std::max(delta0, 64 * kEps))
      fail(ErrorCode::Diverged, "refine_factorization: residual grows");
  }
  return s;
}

bool deflation_policy(int component_degree, int total_degree, Real nu, int cap) {
  require(component_degree >= 1 && total_degree >= component_degree,
          "deflation_policy: bad degrees");
  return Real(total_degree) / component_degree >= nu && component_degree <= cap;
}

}  // namespace polyroot
