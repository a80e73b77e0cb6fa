#include "polyroot/subdivision.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <map>
#include <numeric>

#include "json.hpp"

#include "parallel.hpp"
#include "polyroot/counting.hpp"
#include "polyroot/deflation.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/error.hpp"
#include "polyroot/radii.hpp"

namespace polyroot {

std::string to_string(RootMethod m) {
  switch (m) {
    case RootMethod::Subdivision: return "subdivision";
    case RootMethod::Newton: return "newton";
    case RootMethod::Ehrlich: return "ehrlich";
    case RootMethod::Secular: return "secular";
    case RootMethod::Deflated: return "deflated";
    case RootMethod::Segment: return "segment";
  }
  return "unknown";
}

Square initial_square(const BlackBoxPoly& p) {
  require(p.degree() >= 1, "initial_square: degree must be positive");
  const Real r = r1_upper(p);
  // all roots at the origin give a zero bound
  return {0, r > 0 ? r * Real(1.25) : Real(1)};
}

std::vector<Square> subdivide(const Square& s) {
  const Real h = s.half_width / 2;
  return {{s.center + Complex(-h, -h), h},
          {s.center + Complex(h, -h), h},
          {s.center + Complex(-h, h), h},
          {s.center + Complex(h, h), h}};
}

SkipDecision skip_exclusion(const BlackBoxPoly& p, const Square& s,
                            const std::vector<Annulus>& annuli,
                            const SubdivisionConfig& cfg) {
  if (cfg.annuli_skip && !annuli.empty()) {
    // distance range from the origin to points of the square
    const Real dx = std::max<Real>(0, std::abs(s.center.real()) - s.half_width);
    const Real dy = std::max<Real>(0, std::abs(s.center.imag()) - s.half_width);
    const Real dmin = std::hypot(dx, dy);
    const Real dmax = std::hypot(std::abs(s.center.real()) + s.half_width,
                                 std::abs(s.center.imag()) + s.half_width);
    bool hit = false;
    for (const auto& a : annuli)
      if (dmin <= 2 * a.outer && dmax >= a.inner / 2) hit = true;
    if (!hit) return SkipDecision::Discard;
  }
  if (cfg.cauchy_skip) {
    const auto rho = cauchy_inclusion_radius(p, s.center);
    if (rho && *rho <= s.half_width * std::sqrt(Real(2)))
      return SkipDecision::SuspectWithoutTest;
  }
  return SkipDecision::NeedsTest;
}

Disc Component::cover() const {
  Real x0 = kInf, x1 = -kInf, y0 = kInf, y1 = -kInf;
  for (const auto& g : squares) {
    const auto& s = g.square;
    x0 = std::min(x0, s.center.real() - s.half_width);
    x1 = std::max(x1, s.center.real() + s.half_width);
    y0 = std::min(y0, s.center.imag() - s.half_width);
    y1 = std::max(y1, s.center.imag() + s.half_width);
  }
  return {Complex((x0 + x1) / 2, (y0 + y1) / 2), std::hypot(x1 - x0, y1 - y0) / 2};
}

std::vector<Component> components(const std::vector<GridSquare>& squares) {
  const std::size_t n = squares.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  std::map<std::pair<long long, long long>, std::size_t> at;
  for (std::size_t k = 0; k < n; ++k) at[{squares[k].i, squares[k].j}] = k;
  for (std::size_t k = 0; k < n; ++k)
    for (long long di = -1; di <= 1; ++di)
      for (long long dj = -1; dj <= 1; ++dj) {
        auto it = at.find({squares[k].i + di, squares[k].j + dj});
        if (it != at.end()) parent[find(k)] = find(it->second);
      }
  std::map<std::size_t, std::size_t> slot;
  std::vector<Component> out;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t r = find(k);
    auto [it, fresh] = slot.try_emplace(r, out.size());
    if (fresh) out.emplace_back();
    out[it->second].squares.push_back(squares[k]);
  }
  return out;
}

Real component_isolation(const Component& c, const std::vector<Component>& all) {
  const Disc me = c.cover();
  Real best = kInf;
  for (const auto& o : all) {
    if (&o == &c) continue;
    const Disc other = o.cover();
    best = std::min(best, (std::abs(me.center - other.center) - other.radius) / me.radius);
  }
  return best;
}

namespace {
std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
  std::uint64_t x = a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  x ^= x >> 31;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  return x;
}
}  // namespace

NewtonOutcome newton_accelerate(const BlackBoxPoly& p, Complex start, Real reach,
                                int m, const SubdivisionConfig& cfg) {
  require(m >= 1, "newton_accelerate: multiplicity must be positive");
  NewtonOutcome out;
  out.trace.multiplicity = m;
  Complex x = start;
  out.trace.iterates.push_back(x);
  Real prev = kInf;
  int growing = 0;
  Real step_size = 0;
  bool settled = false;
  for (int it = 0; it < 64; ++it) {
    const Complex r = p.log_derivative(x);
    if (!is_finite(r) || r == Complex{0}) {
      // landed on a root (or a critical point, which the count rejects)
      step_size = 0;
      settled = true;
      break;
    }
    const Complex step = Real(m) / r;
    const Complex nx = x - step;
    out.trace.iterates.push_back(nx);
    if (std::abs(nx - start) > reach) return out;
    step_size = std::abs(step);
    growing = step_size > prev ? growing + 1 : 0;
    if (growing >= 3) return out;
    prev = step_size;
    x = nx;
    if (step_size < cfg.epsilon / 4 || step_size < 4 * kEps * std::max<Real>(1, std::abs(x))) {
      settled = true;
      break;
    }
  }
  if (!settled) return out;

  // Certify: m roots in a small disc around the limit.
  Real rho = std::max({4 * step_size, cfg.epsilon / 4,
                       64 * kEps * std::max<Real>(1, std::abs(x))});
  rho = std::min(rho, cfg.epsilon);
  for (int k = 0; k < 12 && rho < reach / 2; ++k, rho *= 8) {
    CountOptions co;
    co.theta = std::max<Real>(2, (reach - std::abs(x - start)) / rho);
    co.rotate = true;
    co.seed = mix(cfg.seed, static_cast<std::uint64_t>(k + 1));
    try {
      const RootCount rc = count_roots(p, Disc{x, rho}, co);
      if (rc.count == m && rc.certainty == Certainty::Certified) {
        out.converged = true;
        out.root = x;
        out.radius = rho;
        out.trace.converged = true;
        return out;
      }
      if (rc.count > m) break;
    } catch (const Error&) {
    }
  }
  return out;
}

namespace {

int count_in(const BlackBoxPoly& p, const Disc& disc, std::uint64_t seed) {
  CountOptions co;
  co.rotate = true;
  co.seed = seed;
  try {
    return count_roots(p, disc, co).count;
  } catch (const Error&) {
    return -1;
  }
}

}  // namespace

RootReport solve(const BlackBoxPoly& p, std::optional<Disc> region,
                 const SubdivisionConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::uint64_t ev0 = p.evaluations();
  const int d = p.degree();
  RootReport rep;
  if (d == 0) {
    if (p.leading_coefficient() == Complex{0})
      fail(ErrorCode::ZeroPolynomial, "solve: zero polynomial");
    return rep;
  }
  require(cfg.epsilon > 0, "solve: epsilon must be positive");

  const Square init = region ? Square{region->center, region->radius} : initial_square(p);
  std::vector<Annulus> annuli;
  if (cfg.annuli_skip && p.dense()) {
    try {
      annuli = annuli_cover(*p.dense());
    } catch (const Error&) {
      annuli.clear();
    }
  }
  rep.expected_count = region ? count_in(p, *region, cfg.seed) : d;

  const int threads = p.sequential_only() ? 1 : detail::resolve_threads(cfg.threads);
  const int q_excl = std::max(cfg.q0, 2 * default_exclusion_q(d));
  std::atomic<std::uint64_t> tests{0}, skipped{0};

  std::vector<GridSquare> suspects{{init, 0, 0}};
  int level = 0;
  while (!suspects.empty() && level < cfg.max_levels) {
    ++level;
    std::vector<GridSquare> children;
    children.reserve(4 * suspects.size());
    for (const auto& g : suspects) {
      const auto kids = subdivide(g.square);
      children.push_back({kids[0], 2 * g.i, 2 * g.j});
      children.push_back({kids[1], 2 * g.i + 1, 2 * g.j});
      children.push_back({kids[2], 2 * g.i, 2 * g.j + 1});
      children.push_back({kids[3], 2 * g.i + 1, 2 * g.j + 1});
    }
    std::vector<char> keep(children.size(), 0);
    const std::uint64_t tested_before = tests.load();
    detail::parallel_for(children.size(), threads, [&](std::size_t k) {
      const GridSquare& g = children[k];
      switch (skip_exclusion(p, g.square, annuli, cfg)) {
        case SkipDecision::Discard:
          skipped.fetch_add(1);
          return;
        case SkipDecision::SuspectWithoutTest:
          skipped.fetch_add(1);
          keep[k] = 1;
          return;
        case SkipDecision::NeedsTest:
          break;
      }
      tests.fetch_add(1);
      ExclusionMode mode;
      mode.q = q_excl;
      const Disc disc = g.square.superscribing().dilated(Real(4) / 3);
      const auto v = exclusion_test(p, disc, mode, 0.25, true,
                                    mix(cfg.seed, mix(level, mix(g.i, g.j))));
      keep[k] = v.excluded ? 0 : 1;
    });
    suspects.clear();
    for (std::size_t k = 0; k < children.size(); ++k)
      if (keep[k]) suspects.push_back(children[k]);

    const int pop = static_cast<int>(suspects.size());
    rep.population.push_back(pop);
    rep.stats.max_population = std::max(rep.stats.max_population, pop);
    if (pop > cfg.population_factor * d)
      fail(ErrorCode::Breakdown, "solve: suspect population exceeds cap");

    std::vector<Component> comps = components(suspects);
    std::vector<GridSquare> remaining;
    int resolved = 0;
    for (const auto& c : comps) {
      const Disc cover = c.cover();
      const Real iso = component_isolation(c, comps);
      const std::uint64_t cseed = mix(cfg.seed, mix(level, c.squares.front().i * 7919 + c.squares.front().j));
      if (cover.radius <= cfg.epsilon) {
        const Real grow = std::isfinite(iso) ? std::clamp(iso / 2, Real(1.5), Real(4)) : Real(4);
        const int m = count_in(p, cover.dilated(grow), cseed);
        if (m != 0) rep.roots.push_back({cover.center, cover.radius, std::max(m, 1),
                                         RootMethod::Subdivision});
        ++resolved;
        continue;
      }
      if (cfg.newton && iso >= cfg.newton_threshold) {
        const Real theta = std::min<Real>(std::sqrt(iso), 8);
        const Disc reach = cover.dilated(theta);
        CountOptions co;
        co.theta = theta;
        co.rotate = true;
        co.seed = cseed;
        int m = -1;
        try {
          m = count_roots(p, reach, co).count;
        } catch (const Error&) {
        }
        if (m == 0) {
          ++resolved;
          continue;
        }
        if (m > 0) {
          ++rep.stats.newton_attempts;
          SubdivisionConfig nc = cfg;
          nc.seed = cseed;
          NewtonOutcome o = newton_accelerate(p, cover.center, reach.radius, m, nc);
          rep.newton_traces.push_back(o.trace);
          if (o.converged) {
            rep.roots.push_back({o.root, o.radius, m, RootMethod::Newton});
            ++resolved;
            continue;
          }
          ++rep.stats.newton_rejections;
        }
      }
      remaining.insert(remaining.end(), c.squares.begin(), c.squares.end());
    }
    if (cfg.trace) {
      nlohmann::json line = {{"level", level},
                             {"half_width", init.half_width / std::ldexp(Real(1), level)},
                             {"population", pop},
                             {"tested", tests.load() - tested_before},
                             {"components", comps.size()},
                             {"resolved", resolved},
                             {"roots_found", rep.found()}};
      *cfg.trace << line.dump() << '\n';
    }
    suspects = std::move(remaining);
  }
  rep.stats.levels = level;

  if (!suspects.empty()) {
    rep.partial = true;
    for (const auto& c : components(suspects)) {
      const Disc cover = c.cover();
      const int m = count_in(p, cover.dilated(2), cfg.seed);
      if (m != 0) rep.roots.push_back({cover.center, cover.radius, std::max(m, 1),
                                       RootMethod::Subdivision});
    }
  }

  if (!region && rep.found() < d && cfg.deflate_missing) {
    const int w = d - rep.found();
    std::vector<Complex> tame;
    for (const auto& r : rep.roots)
      for (int k = 0; k < r.multiplicity; ++k) tame.push_back(r.approx);
    try {
      const Deflation f = deflate_evalinterp(p, tame, w, std::max<Real>(1, init.half_width));
      EhrlichConfig ec;
      ec.deflate_wild = false;
      ec.epsilon = cfg.epsilon;
      const RootReport sub = solve_all(f.factor, ec);
      for (auto r : sub.roots) {
        const auto rho = cauchy_inclusion_radius(p, r.approx);
        r.radius = rho ? *rho : kInf;
        r.method = RootMethod::Deflated;
        rep.roots.push_back(r);
      }
    } catch (const Error&) {
    }
  }

  if (region) {
    std::erase_if(rep.roots, [&](const RootApprox& r) {
      return std::abs(r.approx - region->center) > region->radius;
    });
  }
  const int target = region ? rep.expected_count : d;
  rep.residual_roots_missing = target >= 0 ? std::max(0, target - rep.found()) : 0;
  if (rep.residual_roots_missing > 0) rep.partial = true;

  rep.stats.exclusions_run = tests.load();
  rep.stats.exclusions_skipped = skipped.load();
  rep.stats.evaluations = p.evaluations() - ev0;
  rep.stats.wall_ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - t0)
                          .count();
  return rep;
}

}  // namespace polyroot
