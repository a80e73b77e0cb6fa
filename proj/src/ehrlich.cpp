#include "polyroot/ehrlich.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

#include "polyroot/counting.hpp"
#include "polyroot/deflation.hpp"
#include "polyroot/error.hpp"
#include "polyroot/radii.hpp"
#include "polyroot/subdivision.hpp"

namespace polyroot {

namespace {
constexpr Real kGoldenAngle = 2.399963229728653;
}

SimState initialize(const BlackBoxPoly& p,
                    const std::optional<std::vector<Annulus>>& cover,
                    std::uint64_t seed) {
  const int d = p.degree();
  require(d >= 1, "initialize: degree must be positive");
  SimState s;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<Real> jitter(0, 0.1);

  if (cover && !cover->empty()) {
    Real smallest = kInf;
    for (const auto& a : *cover)
      if (a.outer > 0) smallest = std::min(smallest, a.inner > 0 ? a.inner : a.outer);
    if (!std::isfinite(smallest)) smallest = 1;
    int idx = 0;
    for (const auto& a : *cover) {
      const Real r = a.outer > 0 ? std::sqrt(std::max(a.inner, a.outer / 4) * a.outer)
                                 : smallest * 1e-3;
      const Real offset = kGoldenAngle * idx + jitter(rng);
      for (int j = 0; j < a.count; ++j)
        s.z.push_back(std::polar(r, offset + 2 * kPi * j / a.count));
      ++idx;
    }
  }
  if (static_cast<int>(s.z.size()) != d) {
    s.z.clear();
    const Real r = r1_upper(p);
    const Real offset = kPi / (2 * d);
    for (int j = 0; j < d; ++j) s.z.push_back(std::polar(r, offset + 2 * kPi * j / d));
  }
  s.tame.assign(d, false);
  s.last_update.assign(d, kInf);
  s.small_updates.assign(d, 0);
  return s;
}

Real tame_tolerance(Complex z, int d, Real epsilon) {
  return 4 * kEps * std::abs(z) * d + epsilon / 8;
}

namespace {
void mark(SimState& s, std::size_t j, Real upd, int d, Real epsilon) {
  s.last_update[j] = upd;
  if (upd <= tame_tolerance(s.z[j], d, epsilon)) {
    if (++s.small_updates[j] >= 3) s.tame[j] = true;
  } else {
    s.small_updates[j] = 0;
  }
}
}  // namespace

void ehrlich_step(const BlackBoxPoly& p, SimState& s, Real epsilon) {
  const int d = static_cast<int>(s.z.size());
  std::vector<Complex> nz = s.z;
  for (int j = 0; j < d; ++j) {
    if (s.tame[j]) continue;
    const Complex r = p.log_derivative(s.z[j]);
    if (!is_finite(r)) {
      // exact root
      s.last_update[j] = 0;
      s.tame[j] = true;
      continue;
    }
    Complex sum{0};
    for (int i = 0; i < d; ++i)
      if (i != j) {
        Complex diff = s.z[j] - s.z[i];
        if (diff == Complex{0}) diff = Complex(1e-12 * std::max<Real>(1, std::abs(s.z[j])), 0);
        sum += Real(1) / diff;
      }
    const Complex den = r - sum;
    Complex corr{0};
    if (den != Complex{0} && is_finite(den)) corr = Real(1) / den;
    nz[j] = s.z[j] - corr;
    mark(s, j, std::abs(corr), d, epsilon);
  }
  s.z = std::move(nz);
  ++s.sweeps;
}

std::vector<Complex> classical_weights(const BlackBoxPoly& p,
                                       const std::vector<Complex>& z) {
  const std::size_t d = z.size();
  std::vector<Complex> v(d);
  const Complex lead = p.leading_coefficient();
  for (std::size_t j = 0; j < d; ++j) {
    Complex den = lead;
    for (std::size_t i = 0; i < d; ++i)
      if (i != j) den *= (z[j] - z[i]);
    v[j] = -p.eval(z[j]).value / den;
  }
  return v;
}

void secular_step(const BlackBoxPoly& p, SimState& s, Real epsilon,
                  WeightUpdate update) {
  const int d = static_cast<int>(s.z.size());
  if (static_cast<int>(s.weights.size()) != d) s.weights = classical_weights(p, s.z);
  const std::vector<Complex>& v = s.weights;
  const std::vector<Complex>& z = s.z;

  std::vector<Complex> nz = z;
  for (int i = 0; i < d; ++i) {
    if (s.tame[i]) continue;
    Complex sp{-1};
    for (int j = 0; j < d; ++j)
      if (j != i) sp += v[j] / (z[i] - z[j]);
    // Newton on S_i(x) = v_i/(x - z_i) + sum_{j != i} v_j/(x - z_j) - 1 at x = z_i
    Complex corr{0};
    if (sp != Complex{0}) corr = v[i] / sp;
    if (!is_finite(corr)) corr = 0;
    nz[i] = z[i] - corr;
    mark(s, i, std::abs(corr), d, epsilon);
  }

  std::vector<Complex> nv(d);
  for (int i = 0; i < d; ++i) {
    const Complex x = nz[i];
    Complex ratio{1};
    for (int j = 0; j < d; ++j)
      if (j != i) ratio *= (x - z[j]) / (x - nz[j]);
    Complex rest{-1};
    for (int k = 0; k < d; ++k)
      if (k != i) rest += v[k] / (x - z[k]);
    if (update == WeightUpdate::Consistent) {
      // (x - z_i) S_old(x), with the pole term taken exactly
      nv[i] = ratio * (v[i] + (x - z[i]) * rest);
    } else {
      nv[i] = ratio * (rest + v[i] / (x - z[i]));
    }
    if (!is_finite(nv[i])) nv[i] = 0;
  }
  s.z = std::move(nz);
  s.weights = std::move(nv);
  ++s.sweeps;
}

namespace {

struct Cluster {
  std::vector<int> members;
};

// Union of overlapping inclusion discs d|p/p'| around the approximations.
std::vector<Cluster> clusters(const BlackBoxPoly& p, const std::vector<Complex>& z,
                              Real epsilon) {
  const int d = static_cast<int>(z.size());
  std::vector<Real> rad(d);
  for (int j = 0; j < d; ++j) {
    const Complex r = p.log_derivative(z[j]);
    rad[j] = is_finite(r) && r != Complex{0} ? d / std::abs(r) : 0;
    if (!is_finite(r)) rad[j] = 0;
    rad[j] = std::max(rad[j], epsilon / 8);
  }
  std::vector<int> parent(d);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j)
      if (std::abs(z[i] - z[j]) <= rad[i] + rad[j]) parent[find(i)] = find(j);
  std::vector<Cluster> out;
  std::vector<int> slot(d, -1);
  for (int j = 0; j < d; ++j) {
    const int r = find(j);
    if (slot[r] < 0) {
      slot[r] = static_cast<int>(out.size());
      out.emplace_back();
    }
    out[slot[r]].members.push_back(j);
  }
  return out;
}

}  // namespace

RootReport solve_all(const BlackBoxPoly& p, const EhrlichConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t ev0 = p.evaluations();
  const int d = p.degree();
  RootReport rep;
  rep.expected_count = d;
  if (d == 0) {
    if (p.leading_coefficient() == Complex{0})
      fail(ErrorCode::ZeroPolynomial, "solve_all: zero polynomial");
    return rep;
  }
  const RootMethod method =
      cfg.method == SimMethod::Ehrlich ? RootMethod::Ehrlich : RootMethod::Secular;

  std::optional<std::vector<Annulus>> cover;
  if (cfg.use_cover && p.dense()) {
    try {
      cover = annuli_cover(*p.dense());
    } catch (const Error&) {
      cover.reset();
    }
  }
  SimState s = initialize(p, cover, cfg.seed);
  while (s.sweeps < cfg.max_sweeps &&
         std::find(s.tame.begin(), s.tame.end(), false) != s.tame.end()) {
    if (cfg.method == SimMethod::Ehrlich)
      ehrlich_step(p, s, cfg.epsilon);
    else
      secular_step(p, s, cfg.epsilon, cfg.weight_update);
  }
  if (cfg.method == SimMethod::Secular) {
    // The carried weights drift by rounding; refresh them from p and let the
    // iteration settle again.
    for (int round = 0; round < 3 && s.sweeps < cfg.max_sweeps; ++round) {
      s.weights = classical_weights(p, s.z);
      std::fill(s.tame.begin(), s.tame.end(), false);
      std::fill(s.small_updates.begin(), s.small_updates.end(), 0);
      const int start = s.sweeps;
      while (s.sweeps < cfg.max_sweeps &&
             std::find(s.tame.begin(), s.tame.end(), false) != s.tame.end())
        secular_step(p, s, cfg.epsilon, cfg.weight_update);
      if (s.sweeps - start <= 3) break;
    }
  }
  rep.stats.sweeps = s.sweeps;

  // Merge clusters whose count confirms the multiplicity.
  std::vector<bool> done(d, false);
  for (const auto& c : clusters(p, s.z, cfg.epsilon)) {
    const int m = static_cast<int>(c.members.size());
    if (m == 1) continue;
    Complex center{0};
    for (int j : c.members) center += s.z[j];
    center /= Real(m);
    Real radius = 0;
    for (int j : c.members) radius = std::max(radius, std::abs(s.z[j] - center));
    radius = std::max(radius, cfg.epsilon);
    // a wide cluster is unconverged iteration, not a multiple root
    if (radius > std::sqrt(cfg.epsilon) * std::max<Real>(1, std::abs(center))) continue;
    CountOptions co;
    co.rotate = true;
    co.seed = cfg.seed;
    int count = -1;
    try {
      count = count_roots(p, Disc{center, 2 * radius}, co).count;
    } catch (const Error&) {
    }
    if (count != m) continue;
    rep.roots.push_back({center, 2 * radius, m, method});
    for (int j : c.members) done[j] = true;
  }

  std::vector<int> wild;
  for (int j = 0; j < d; ++j) {
    if (done[j]) continue;
    if (s.tame[j]) {
      // d |p/p'| is an inclusion radius; the last update when p' vanishes
      const auto rho = cauchy_inclusion_radius(p, s.z[j]);
      const Real r = std::max<Real>(rho ? *rho : s.last_update[j], kEps * std::abs(s.z[j]));
      rep.roots.push_back({s.z[j], r, 1, method});
    } else {
      wild.push_back(j);
    }
  }

  const int cap = cfg.wild_cap >= 0 ? cfg.wild_cap : std::max(16, d / 50);
  const int w = static_cast<int>(wild.size());
  bool recovered = false;
  if (w > 0 && cfg.deflate_wild && w <= cap) {
    std::vector<Complex> tame;
    for (const auto& r : rep.roots)
      for (int k = 0; k < r.multiplicity; ++k) tame.push_back(r.approx);
    try {
      const Deflation f = deflate_evalinterp(p, tame, w);
      SubdivisionConfig sc;
      sc.epsilon = cfg.epsilon;
      sc.seed = cfg.seed;
      sc.deflate_missing = false;
      const RootReport sub = solve(f.factor, std::nullopt, sc);
      if (sub.found() == w) {
        for (auto r : sub.roots) {
          r.method = RootMethod::Deflated;
          rep.roots.push_back(r);
        }
        recovered = true;
      }
    } catch (const Error&) {
    }
  }
  if (w > 0 && !recovered) {
    rep.partial = true;
    for (int j : wild) rep.roots.push_back({s.z[j], s.last_update[j], 1, method});
  }

  rep.stats.evaluations = p.evaluations() - ev0;
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return rep;
}

}  // namespace polyroot
