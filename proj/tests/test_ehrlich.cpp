#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "polyroot/ehrlich.hpp"
#include "polyroot/error.hpp"
#include "polyroot/oracles.hpp"
#include "polyroot/radii.hpp"

using namespace polyroot;

namespace {

std::vector<Complex> expand(const RootReport& r) {
  std::vector<Complex> out;
  for (const auto& x : r.roots)
    for (int k = 0; k < x.multiplicity; ++k) out.push_back(x.approx);
  return out;
}

SimState state_at(std::vector<Complex> z) {
  SimState s;
  const std::size_t d = z.size();
  s.z = std::move(z);
  s.tame.assign(d, false);
  s.last_update.assign(d, kInf);
  s.small_updates.assign(d, 0);
  return s;
}

Real max_error(const std::vector<Complex>& z, const std::vector<Complex>& roots) {
  Real m = 0;
  for (std::size_t j = 0; j < z.size(); ++j) m = std::max(m, std::abs(z[j] - roots[j]));
  return m;
}

}  // namespace

TEST_SUITE("ehrlich") {

TEST_CASE("initialization examples") {
  // x^4 - 16 has r1 = 2; the coefficient bound is sqrt(1 + 256)
  const Poly p{-16, 0, 0, 0, 1};
  const SimState s = initialize(p);
  REQUIRE(s.z.size() == 4);
  const Real r = r1_upper(p);
  for (int j = 0; j < 4; ++j) {
    CHECK(std::abs(s.z[j]) == doctest::Approx(r));
    CHECK(std::abs(s.z[(j + 1) % 4] - s.z[j]) == doctest::Approx(r * std::sqrt(2.0)));
  }
  CHECK(s.tame.size() == 4);
  CHECK(std::none_of(s.tame.begin(), s.tame.end(), [](bool b) { return b; }));

  const Poly q{2, -3, 1};
  const SimState c = initialize(q, annuli_cover(q));
  REQUIRE(c.z.size() == 2);
  std::vector<Real> mods{std::abs(c.z[0]), std::abs(c.z[1])};
  std::sort(mods.begin(), mods.end());
  CHECK(std::abs(std::log(mods[0])) < std::log(1.5));
  CHECK(std::abs(std::log(mods[1] / 2)) < std::log(1.5));

  const SimState again = initialize(q, annuli_cover(q));
  CHECK(again.z == c.z);
  CHECK_THROWS_AS(initialize(Poly{1}), Error);
}

TEST_CASE("ehrlich step examples") {
  SimState one = state_at({5});
  ehrlich_step(Poly{-Complex(0.3, 0.2), 1}, one, 1e-12);
  CHECK(testutil::near(one.z[0], Complex(0.3, 0.2), 1e-15));

  SimState two = state_at({2, -2});
  const Poly p{-1, 0, 1};
  int steps = 0;
  while (max_error(two.z, {1, -1}) >= 1e-12 && steps < 8) {
    ehrlich_step(p, two, 1e-12);
    ++steps;
  }
  CHECK(max_error(two.z, {1, -1}) < 1e-12);

  SimState at = state_at({1, 3});
  ehrlich_step(p, at, 1e-12);
  CHECK(at.z[0] == Complex{1});
}

TEST_CASE("secular step examples") {
  const Poly p{-1, 0, 1};
  SimState exact = state_at({1, -1});
  secular_step(p, exact, 1e-12);
  CHECK(max_error(exact.z, {1, -1}) < 1e-12);

  SimState a = state_at({2, -2}), b = state_at({2, -2});
  for (int k = 0; k < 12; ++k) {
    ehrlich_step(p, a, 1e-14);
    secular_step(p, b, 1e-14);
  }
  CHECK(max_error(a.z, b.z) < 1e-10);

  const std::vector<Complex> roots{0.5, Complex(-0.2, 0.4), Complex(0.1, -0.7)};
  for (Complex v : classical_weights(oracle::build_from_roots(roots), roots))
    CHECK(std::abs(v) < 1e-15);
}

TEST_CASE("classical weights reproduce p") {
  // p(x) = p_d prod (x - z_j) (1 - sum v_j / (x - z_j)) away from the nodes
  std::mt19937_64 rng(21);
  for (int t = 0; t < 20; ++t) {
    const int d = 2 + static_cast<int>(rng() % 8);
    const Poly p = testutil::rand_poly(rng, d);
    std::vector<Complex> z;
    for (int j = 0; j < d; ++j) z.push_back(std::polar(1.3, 2 * std::numbers::pi * j / d + 0.1));
    const auto v = classical_weights(p, z);
    const Complex x = testutil::rand_complex(rng);
    Complex prod = p.leading(), sec = 1;
    for (int j = 0; j < d; ++j) {
      prod *= x - z[j];
      sec -= v[j] / (x - z[j]);
    }
    CHECK(std::abs(prod * sec - p(x)) <= 1e-10 * std::max<Real>(1, std::abs(p(x))));
  }
}

TEST_CASE("consistent weight update matches the classical weights") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 10; ++t) {
    const auto roots = oracle::random_roots_in_disc(rng, 8, 0, 1, 0.2);
    const Poly p = oracle::build_from_roots(roots);
    std::vector<Complex> z;
    for (Complex r : roots) z.push_back(r + testutil::rand_complex(rng, 0.02));
    SimState s = state_at(z);
    secular_step(p, s, 1e-14);
    secular_step(p, s, 1e-14);
    const auto fresh = classical_weights(p, s.z);
    REQUIRE(s.weights.size() == fresh.size());
    for (std::size_t j = 0; j < fresh.size(); ++j)
      CHECK(std::abs(s.weights[j] - fresh[j]) <= 1e-8 * std::max<Real>(1e-6, std::abs(fresh[j])) + 1e-13);
  }
}

TEST_CASE("exact roots are fixed points of both steppers") {
  std::mt19937_64 rng(23);
  for (int t = 0; t < 10; ++t) {
    const auto roots = oracle::random_roots_in_disc(rng, 10, 0, 1, 0.1);
    const BlackBoxPoly p = BlackBoxPoly::factored(roots);
    SimState a = state_at(roots), b = state_at(roots);
    ehrlich_step(p, a, 1e-12);
    secular_step(p, b, 1e-12);
    CHECK(max_error(a.z, roots) <= 1e-12);
    CHECK(max_error(b.z, roots) <= 1e-12);
  }
}

TEST_CASE("local convergence is at least cubic-ish") {
  std::mt19937_64 rng(24);
  for (int t = 0; t < 10; ++t) {
    const auto roots = oracle::random_roots_in_disc(rng, 8, 0, 1, 0.25);
    const BlackBoxPoly p = BlackBoxPoly::factored(roots);
    std::vector<Complex> z;
    for (Complex r : roots) z.push_back(r + std::polar(1e-3, 2 * std::numbers::pi * (rng() % 1000) / 1000.0));
    SimState s = state_at(z);
    ehrlich_step(p, s, 1e-16);
    CHECK(max_error(s.z, roots) <= 1e-7);
  }
}

TEST_CASE("solve all examples") {
  const RootReport a = solve_all(Poly{-1, 0, 1});
  CHECK(a.roots.size() == 2);
  CHECK_FALSE(a.partial);
  CHECK(oracle::match_distance(expand(a), {1, -1}) < 1e-12);
  for (const auto& r : a.roots) CHECK(r.method == RootMethod::Ehrlich);

  for (int d : {3, 6}) {
    const RootReport m = solve_all(Poly::monomial(d));
    CHECK(m.found() == d);
    for (const auto& r : m.roots) CHECK(std::abs(r.approx) <= 1e-6);
  }
  CHECK_THROWS_AS(solve_all(Poly{0}), Error);
  CHECK(solve_all(Poly{2}).roots.empty());
}

TEST_CASE("both methods on a well-separated degree-64 corpus") {
  std::mt19937_64 rng(25);
  const auto roots = oracle::random_roots_in_disc(rng, 64, 0, 1, 0.05);
  const BlackBoxPoly p = BlackBoxPoly::factored(roots);
  EhrlichConfig ce, cs;
  cs.method = SimMethod::Secular;
  const RootReport e = solve_all(p, ce);
  const RootReport s = solve_all(p, cs);
  CHECK(e.stats.sweeps <= 100);
  CHECK(s.stats.sweeps <= 100);
  CHECK_FALSE(e.partial);
  CHECK_FALSE(s.partial);
  CHECK(oracle::match_distance(expand(e), roots) <= 1e-10);
  CHECK(oracle::match_distance(expand(s), roots) <= 1e-10);
  CHECK(oracle::match_distance(expand(e), expand(s)) <= 1e-8);
}

TEST_CASE("reported radii contain roots and the Cauchy radius") {
  std::mt19937_64 rng(26);
  for (int t = 0; t < 10; ++t) {
    const int d = 4 + static_cast<int>(rng() % 20);
    const auto roots = oracle::random_roots_in_disc(rng, d, 0, 1, 0.05);
    const BlackBoxPoly p = BlackBoxPoly::factored(roots);
    const RootReport rep = solve_all(p);
    CHECK(rep.found() == d);
    for (const auto& r : rep.roots) {
      const auto rho = cauchy_inclusion_radius(p, r.approx);
      if (rho) CHECK(*rho <= 2 * r.radius);
      Real near = kInf;
      for (Complex x : roots) near = std::min(near, std::abs(x - r.approx));
      CHECK(near <= r.radius + 1e-14);
    }
  }
}

TEST_CASE("a low sweep cap leaves wild roots for deflation") {
  std::mt19937_64 rng(27);
  const auto roots = oracle::random_roots_in_disc(rng, 20, 0, 1, 0.05);
  const BlackBoxPoly p = BlackBoxPoly::factored(roots);
  EhrlichConfig cfg;
  cfg.max_sweeps = 9;
  cfg.wild_cap = 20;
  const RootReport rep = solve_all(p, cfg);
  CHECK(rep.found() == 20);
  CHECK(oracle::match_distance(expand(rep), roots) <= 1e-9);

  cfg.deflate_wild = false;
  cfg.max_sweeps = 2;
  const RootReport part = solve_all(p, cfg);
  CHECK(part.partial);
  CHECK(part.found() == 20);
}

}  // TEST_SUITE
