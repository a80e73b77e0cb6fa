#include "polyroot/powersums.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "polyroot/dft.hpp"
#include "ddouble.hpp"
#include "polyroot/error.hpp"

namespace polyroot {

Real power_sum_error_bound(int d, int d_f, int q, int h, Real theta) {
  require(theta > 1, "power_sum_error_bound: theta must exceed 1");
  const Real eta = 1 / theta;
  const Real eq = std::pow(eta, q);
  return (d_f * std::pow(eta, q + h) + (d - d_f) * std::pow(eta, q - h)) /
         (1 - eq);
}

namespace {

// Samples of rho u p'/p at c + rho u w^g; false when one is not finite.
bool sample_ratios(const BlackBoxPoly& p, const Disc& disc, int q, Complex u,
                   std::vector<Complex>& out) {
  out.assign(q, Complex{0});
  const Complex ru = disc.radius * u;
  const Poly* dp = p.dense();
  if (dp && p.kind() == PolyKind::Dense && disc.center == Complex{0} &&
      disc.radius == 1 && u == Complex{1}) {
    const auto ev = eval_at_roots_of_unity(p, 0, 1, q);
    for (int g = 0; g < q; ++g) {
      if (ev[g].value == Complex{0}) return false;
      out[g] = ev[g].derivative / ev[g].value;
      if (!is_finite(out[g])) return false;
    }
    return true;
  }
  for (int g = 0; g < q; ++g) {
    const Complex r = p.log_derivative(disc.center + ru * unit_root(q, g));
    if (!is_finite(r)) return false;
    out[g] = ru * r;
  }
  return true;
}

}  // namespace

PowerSumEstimate power_sums_disc(const BlackBoxPoly& p, const Disc& disc, int q,
                                 bool rotate, std::uint64_t seed,
                                 std::optional<Real> theta) {
  require(q >= 2, "power_sums_disc: q must be at least 2");
  require(disc.radius > 0 && std::isfinite(disc.radius),
          "power_sums_disc: radius must be positive");
  if (p.degree() == 0 && p.leading_coefficient() == Complex{0})
    fail(ErrorCode::ZeroPolynomial, "power_sums_disc: zero polynomial");
  q = static_cast<int>(next_pow2(q));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> angle(0, 2 * kPi / q);
  Complex u{1};
  std::vector<Complex> r;
  int attempt = 0;
  for (;; ++attempt) {
    if (rotate) u = std::polar(Real(1), angle(rng));
    if (sample_ratios(p, disc, q, u, r)) break;
    if (!rotate || attempt >= 4)
      fail(ErrorCode::RootOnContour, "power_sums_disc: p vanishes on the contour");
  }
  // apply the extra w^g, then one forward transform gives sum_g r_g w^{(h+1)g}
  const Complex ru = disc.radius * u;
  for (int g = 0; g < q; ++g) r[g] *= unit_root(q, g);
  dft_inplace(r, false);

  PowerSumEstimate e;
  e.q = q;
  e.disc = disc;
  e.values.resize(q);
  Complex scale{1};
  for (int h = 0; h < q; ++h) {
    e.values[h] = r[h] / Real(q) * scale;
    scale *= ru;
  }
  if (theta) {
    e.theta_hint = theta;
    const int d = p.degree();
    const int d_f = std::clamp(static_cast<int>(std::lround(e.values[0].real())), 0, d);
    e.error_bound.resize(q);
    Real rh = 1;
    for (int h = 0; h < q; ++h) {
      e.error_bound[h] = power_sum_error_bound(d, d_f, q, h, *theta) * rh;
      rh *= disc.radius;
    }
  }
  return e;
}

PowerSumEstimate power_sums_circle(const BlackBoxPoly& p, Complex center,
                                   Real radius, int q, Real thetabar,
                                   bool rotate, std::uint64_t seed) {
  require(thetabar > 1, "power_sums_circle: thetabar must exceed 1");
  PowerSumEstimate outer =
      power_sums_disc(p, Disc{center, radius * thetabar}, q, rotate, seed);
  const PowerSumEstimate inner =
      power_sums_disc(p, Disc{center, radius / thetabar}, q, rotate, seed + 1);
  for (int h = 0; h < outer.q; ++h) outer.values[h] -= inner.values[h];
  outer.disc = Disc{center, radius};
  return outer;
}

std::vector<Complex> coeffs_to_power_sums(const Poly& p, int k,
                                          std::optional<Real> radius_hint) {
  const int d = p.degree();
  require(d >= 1, "coeffs_to_power_sums: degree must be positive");
  require(k >= 1, "coeffs_to_power_sums: k must be positive");
  Real scale = 1;
  Poly t = p;
  if (radius_hint) {
    require(*radius_hint > 0, "coeffs_to_power_sums: radius hint must be positive");
    scale = 2 * *radius_hint;
    t = shift_scale(p, 0, scale);
  }
  // The recurrence cancels heavily when the roots are large; double-double
  // keeps that from swamping the sums.
  std::vector<Complex> out;
  for (const auto& v : dd::newton_power_sums(t, k)) out.push_back(v.value());
  if (radius_hint) {
    Real f = 1;
    for (auto& v : out) {
      f *= scale;
      v *= f;
    }
  }
  return out;
}

Poly power_sums_to_coeffs_newton(std::span<const Complex> s, int d_f) {
  require(d_f >= 0, "power_sums_to_coeffs_newton: negative degree");
  require(static_cast<int>(s.size()) >= d_f,
          "power_sums_to_coeffs_newton: need d_f power sums");
  std::vector<Complex> f(d_f + 1, Complex{0});
  f[d_f] = 1;
  for (int i = 1; i <= d_f; ++i) {
    Complex acc = s[i - 1];
    for (int j = 1; j < i; ++j) acc += s[i - j - 1] * f[d_f - j];
    f[d_f - i] = -acc / Real(i);
  }
  return Poly(std::move(f));
}

Poly power_sums_to_coeffs_schonhage(std::span<const Complex> s, int k, int d_f) {
  require(k >= 1 && k <= d_f, "power_sums_to_coeffs_schonhage: need 1 <= k <= d_f");
  require(static_cast<int>(s.size()) >= k,
          "power_sums_to_coeffs_schonhage: not enough power sums");
  auto sum_at = [&](int j) {
    return j <= static_cast<int>(s.size()) ? s[j - 1] : Complex{0};
  };

  // G = 1 + g_r, the reversed factor modulo x^(r+1).
  std::vector<Complex> G{Complex{1}, -s[0]};
  int r = 1;
  while (r < k) {
    const int n = 2 * r;
    const Poly inv = series_inverse(Poly(G), n);
    std::vector<Complex> gp(r, Complex{0});
    for (int i = 1; i <= r && i < static_cast<int>(G.size()); ++i)
      gp[i - 1] = G[i] * Real(i);
    // t = g_r' / (1 + g_r) mod x^n
    std::vector<Complex> t(n, Complex{0});
    for (int i = 0; i < r; ++i)
      for (int j = 0; i + j < n; ++j) t[i + j] += gp[i] * inv[j];
    // h' = -sum s_j x^(j-1) - t; integrate, keeping degrees r+1..2r
    std::vector<Complex> h(n + 1, Complex{0});
    h[0] = 1;
    for (int j = r; j < n; ++j) h[j + 1] = (-sum_at(j + 1) - t[j]) / Real(j + 1);
    std::vector<Complex> next(n + 1, Complex{0});
    for (std::size_t i = 0; i < G.size(); ++i)
      for (int j = 0; i + j <= static_cast<std::size_t>(n); ++j)
        next[i + j] += G[i] * h[j];
    G = std::move(next);
    r = n;
  }

  std::vector<Complex> f(d_f + 1, Complex{0});
  f[d_f] = 1;
  for (int i = 1; i <= k; ++i) f[d_f - i] = G[i];
  if (k < d_f) {
    require(static_cast<int>(s.size()) >= d_f,
            "power_sums_to_coeffs_schonhage: d_f sums needed to finish");
    for (int i = k + 1; i <= d_f; ++i) {
      Complex acc = s[i - 1];
      for (int j = 1; j < i; ++j) acc += s[i - j - 1] * f[d_f - j];
      f[d_f - i] = -acc / Real(i);
    }
  }
  return Poly(std::move(f));
}

}  // namespace polyroot
