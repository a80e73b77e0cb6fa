#include "polyroot/counting.hpp"

#include <algorithm>
#include <cmath>

#include "polyroot/error.hpp"
#include "polyroot/powersums.hpp"
#include "polyroot/radii.hpp"

namespace polyroot {

namespace {
int ceil_log(Real x, Real base) {
  return static_cast<int>(std::ceil(std::log(x) / std::log(base) - 1e-12));
}
}  // namespace

RootCount count_roots(const BlackBoxPoly& p, const Disc& disc,
                      const CountOptions& opt) {
  const int d = p.degree();
  if (d == 0 && p.leading_coefficient() == Complex{0})
    fail(ErrorCode::ZeroPolynomial, "count_roots: zero polynomial");
  require(opt.q0 >= 2, "count_roots: q0 must be at least 2");

  if (opt.theta) {
    require(*opt.theta > 1, "count_roots: theta must exceed 1");
    const int need = std::max(2, ceil_log(2.0 * d + 1, *opt.theta));
    const int q = static_cast<int>(next_pow2(std::max(opt.q0, need)));
    const PowerSumEstimate e =
        power_sums_disc(p, disc, q, opt.rotate, opt.seed, opt.theta);
    RootCount rc;
    rc.s0 = e.values[0];
    rc.q_used = e.q;
    rc.count = std::clamp(static_cast<int>(std::lround(rc.s0.real())), 0, d);
    rc.error_bound = e.error_bound[0];
    const bool certified = rc.error_bound < 0.25 &&
                           std::abs(rc.s0 - Real(rc.count)) < 0.5;
    rc.certainty = certified ? Certainty::Certified : Certainty::Heuristic;
    return rc;
  }

  const int qmax = opt.qmax > 0
                       ? opt.qmax
                       : static_cast<int>(std::max<std::size_t>(64, 4 * next_pow2(d)));
  std::optional<Complex> prev;
  for (int q = static_cast<int>(next_pow2(opt.q0)); q <= qmax; q *= 2) {
    const PowerSumEstimate e =
        power_sums_disc(p, disc, q, opt.rotate, opt.seed + q);
    const Complex s0 = e.values[0];
    const long c = std::lround(s0.real());
    const bool stable = std::abs(s0 - Real(c)) < 0.25 && c >= 0 && c <= d;
    if (stable && prev && std::abs(*prev - s0) < 0.25 &&
        std::lround(prev->real()) == c) {
      RootCount rc;
      rc.count = static_cast<int>(c);
      rc.certainty = Certainty::Heuristic;
      rc.q_used = e.q;
      rc.s0 = s0;
      rc.error_bound = std::abs(*prev - s0);
      return rc;
    }
    prev = stable ? std::optional<Complex>(s0) : std::nullopt;
  }
  fail(ErrorCode::Undecided, "count_roots: no stable count up to qmax");
}

int default_exclusion_q(int d) {
  const int need = std::max(1, ceil_log(2.0 * d + 1, 2.0));
  return static_cast<int>(next_pow2(std::max(4, need)));
}

ExclusionVerdict exclusion_test(const BlackBoxPoly& p, const Disc& disc,
                                const ExclusionMode& mode, Real tol,
                                bool rotate, std::uint64_t seed) {
  require(tol > 0, "exclusion_test: tol must be positive");
  const int d = p.degree();
  ExclusionVerdict v;
  v.mode = mode.kind;
  std::vector<int> hs;
  int q = 0;
  if (mode.kind == ExclusionMode::Deterministic) {
    q = static_cast<int>(next_pow2(std::max({2, d, mode.q})));
    for (int h = 0; h < q; ++h) hs.push_back(h);
  } else {
    require(!mode.h_list.empty(), "exclusion_test: empty h list");
    hs = mode.h_list;
    const int hmax = *std::max_element(hs.begin(), hs.end());
    q = mode.q > 0 ? mode.q : default_exclusion_q(d);
    q = static_cast<int>(next_pow2(std::max(q, hmax + 1)));
  }
  v.q = q;
  v.tested_h = hs;

  PowerSumEstimate e;
  try {
    e = power_sums_disc(p, disc, q, rotate, seed);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::RootOnContour) throw;
    v.root_on_contour = true;
    v.max_abs_s = kInf;
    return v;
  }
  v.excluded = true;
  for (int h : hs) {
    const Real s = std::abs(e.values[h]) / std::pow(disc.radius, h);
    v.max_abs_s = std::max(v.max_abs_s, s);
    if (!(s <= tol)) v.excluded = false;
  }
  return v;
}

ExclusionVerdict exclusion_test_adaptive(const BlackBoxPoly& p, const Disc& disc,
                                         int qmax, Real tol, bool rotate,
                                         std::uint64_t seed) {
  ExclusionMode mode;
  mode.q = default_exclusion_q(p.degree());
  ExclusionVerdict v;
  for (;;) {
    v = exclusion_test(p, disc, mode, tol, rotate, seed + mode.q);
    if (v.excluded || v.root_on_contour || mode.q * 2 > qmax) return v;
    mode.q *= 2;
  }
}

Bracket proximity(const BlackBoxPoly& p, Complex c, Real r_minus,
                  const ProximityOptions& opt) {
  require(r_minus > 0, "proximity: r_minus must be positive");
  require(p.degree() >= 1, "proximity: degree must be positive");
  auto excluded = [&](Real r) {
    return exclusion_test_adaptive(p, Disc{c, r}, opt.qmax, opt.tol).excluded;
  };
  if (!excluded(r_minus))
    fail(ErrorCode::InvalidArgument, "proximity: D(c, r_minus) is not excluded");
  Real lo = r_minus;
  Real hi = 0;
  for (int i = 1; i < 2100; ++i) {
    const Real r = std::ldexp(r_minus, i);
    if (!std::isfinite(r)) break;
    if (!excluded(r)) {
      hi = r;
      break;
    }
    lo = r;
  }
  if (hi == 0) fail(ErrorCode::Undecided, "proximity: no root found by doubling");
  for (int s = 0; s < opt.bisection_steps; ++s) {
    const Real mid = (lo + hi) / 2;
    if (excluded(mid))
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

Bracket max_distance(const Poly& p, Complex c, const ProximityOptions& opt) {
  require(p.degree() >= 1, "max_distance: degree must be positive");
  const Poly t = shift_scale(p, c, 1);
  if (t[0] == Complex{0}) fail(ErrorCode::InvalidArgument, "max_distance: p(c) = 0");
  const Poly rev = reverse(t);
  // every root of rev has modulus >= 1 / r1(t)
  const Real r_minus = 1 / (r1_coefficient_bounds(t).upper * 1.01);
  const Bracket b = proximity(rev, 0, r_minus, opt);
  return {1 / b.hi, 1 / b.lo};
}

Isolation estimate_isolation(const BlackBoxPoly& p, int K, Real theta_floor,
                             int d_minus, int d_plus) {
  require(K >= 1, "estimate_isolation: K must be positive");
  require(theta_floor > 1, "estimate_isolation: theta floor must exceed 1");
  require(d_minus >= 0 && d_plus >= 0, "estimate_isolation: negative counts");
  const int d = p.degree();
  // Enough samples that the aliasing error stays below 2^-40 relative to d.
  const int guard = ceil_log(1e12 * std::max(1, d), theta_floor);

  // Turan upper bound on the largest root modulus among those inside the
  // unit disc, using |s*| + error so that the bound holds for the true sums.
  auto side = [&](const BlackBoxPoly& f, int dmax, int& inside) -> Real {
    const int q = static_cast<int>(next_pow2(std::max(2, dmax * K + guard + 1)));
    const PowerSumEstimate e =
        power_sums_disc(f, Disc{0, 1}, q, true, kDefaultSeed, theta_floor);
    inside = std::clamp(static_cast<int>(std::lround(e.values[0].real())), 0, d);
    if (inside == 0) return 0;
    const int g_max = std::min(inside, std::max(dmax, 1));
    Real r_star = 0;
    for (int g = 1; g <= g_max && g * K < q; ++g) {
      const int h = g * K;
      const Real v = (std::abs(e.values[h]) + e.error_bound[h]) / inside;
      if (v > 0) r_star = std::max(r_star, std::pow(v, Real(1) / h));
    }
    return r_star * std::pow(Real(5), Real(1) / K);
  };

  Isolation iso;
  iso.r_minus = side(p, d_minus, iso.inside);
  if (iso.inside < d) {
    int outside = 0;
    const Real u = side(p.reversed(), d_plus, outside);
    iso.r_plus = u > 0 ? 1 / u : kInf;
  }
  if (iso.r_minus >= iso.r_plus)
    fail(ErrorCode::Inconclusive, "estimate_isolation: bounds overlap");
  return iso;
}

}  // namespace polyroot
