#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "polyroot/error.hpp"
#include "polyroot/oracles.hpp"
#include "polyroot/powersums.hpp"

using namespace polyroot;

TEST_SUITE("oracles") {

TEST_CASE("build from roots examples") {
  CHECK(testutil::max_coeff_diff(oracle::build_from_roots({1, 2}), Poly{2, -3, 1}) == 0);
  const Poly one = oracle::build_from_roots({});
  CHECK(one.degree() == 0);
  CHECK(one[0] == Complex{1});
  std::vector<Complex> r;
  for (int j = 0; j < 8; ++j) r.push_back(std::polar(0.5, 2 * std::numbers::pi * j / 8));
  CHECK(testutil::max_coeff_diff(oracle::build_from_roots(r), Poly{-std::pow(0.5, 8), 0, 0, 0, 0, 0, 0, 0, 1}) < 1e-12);
}

TEST_CASE("built polynomials vanish at their roots") {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 30; ++t) {
    const int d = 1 + static_cast<int>(rng() % 20);
    std::vector<Complex> roots;
    for (int j = 0; j < d; ++j) roots.push_back(testutil::rand_complex(rng, 2));
    const Poly p = oracle::build_from_roots(roots);
    CHECK(p.degree() == d);
    CHECK(p.leading() == Complex{1});
    Real n1 = 0;
    for (int i = 0; i <= d; ++i) n1 += std::abs(p[i]);
    for (Complex x : roots) CHECK(std::abs(testutil::eval_naive(p, x)) <= 1e-12 * n1 * std::pow(1 + std::abs(x), d));
  }
}

TEST_CASE("brute power sums") {
  const auto a = oracle::brute_power_sums({0, 0}, Disc{0, 1}, 4);
  REQUIRE(a.size() == 4);
  CHECK(a[0] == Complex{2});
  for (int h = 1; h < 4; ++h) CHECK(a[h] == Complex{0});
  for (Complex v : oracle::brute_power_sums({3}, Disc{0, 1}, 5)) CHECK(v == Complex{0});
  const auto c = oracle::brute_power_sums({Complex(1, 1), 5}, Disc{1, 2}, 3);
  CHECK(c[0] == Complex{1});
  CHECK(testutil::near(c[1], Complex(0, 1), 1e-15));
  CHECK(testutil::near(c[2], Complex(-1, 0), 1e-15));
}

TEST_CASE("brute sums match the discretized contour within the bound") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 20; ++t) {
    // roots inside D(0, 1/2) and outside D(0, 2): theta = 2
    std::vector<Complex> roots;
    const int inner = 1 + static_cast<int>(rng() % 4), outer = static_cast<int>(rng() % 4);
    for (int j = 0; j < inner; ++j) roots.push_back(std::polar(0.5 * (rng() % 1000) / 1000.0, 0.01 * (rng() % 628)));
    for (int j = 0; j < outer; ++j) roots.push_back(std::polar(2 + (rng() % 1000) / 1000.0, 0.01 * (rng() % 628)));
    const int d = inner + outer;
    const int q = 32;
    const auto brute = oracle::brute_power_sums(roots, Disc{0, 1}, q);
    const auto disc = oracle::discretized_power_sums(roots, Disc{0, 1}, q);
    const auto est = power_sums_disc(BlackBoxPoly::factored(roots), Disc{0, 1}, q);
    for (int h = 0; h < q / 2; ++h) {
      CHECK(std::abs(disc[h] - brute[h]) <= power_sum_error_bound(d, inner, q, h, 2) * (1 + 1e-9) + 1e-14);
      CHECK(std::abs(est.values[h] - disc[h]) <= 1e-12);
    }
  }
}

TEST_CASE("long division") {
  auto [q, r] = oracle::long_division(Poly{-1, 0, 1}, Poly{-1, 1});
  CHECK(testutil::max_coeff_diff(q, Poly{1, 1}) == 0);
  CHECK(r.is_zero());
  std::tie(q, r) = oracle::long_division(Poly::monomial(3), Poly{1, 0, 1});
  CHECK(testutil::max_coeff_diff(q, Poly{0, 1}) == 0);
  CHECK(testutil::max_coeff_diff(r, Poly{0, -1}) == 0);
  CHECK_THROWS_AS(oracle::long_division(Poly{1, 1}, Poly{0}), Error);

  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    const Poly p = testutil::rand_poly(rng, static_cast<int>(rng() % 15));
    const Poly v = testutil::rand_poly(rng, 1 + static_cast<int>(rng() % 6));
    std::tie(q, r) = oracle::long_division(p, v);
    CHECK(r.degree() < v.degree());
    CHECK(testutil::max_coeff_diff(q * v + r, p) <= 1e-10);
  }
}

TEST_CASE("family expansions") {
  CHECK(testutil::max_coeff_diff(oracle::expand_family("mandelbrot", 2), Poly{1, 0, 0, 1}) == 0);
  CHECK(testutil::max_coeff_diff(oracle::expand_family("mandelbrot-map", 2), Poly{0, 1, 1}) == 0);
  CHECK(testutil::max_coeff_diff(oracle::expand_family("iterated-square", 1), Poly{2, 0, 1}) == 0);
  CHECK_THROWS_AS(oracle::expand_family("julia", 2), Error);
}

TEST_CASE("black boxes agree with dense expansions") {
  std::mt19937_64 rng(4);
  for (const char* name : {"mandelbrot", "mandelbrot-map", "iterated-square"}) {
    for (int k = 1; k <= 6; ++k) {
      const Poly dense = oracle::expand_family(name, k);
      const std::string n = name;
      const BlackBoxPoly bb = n == "mandelbrot"       ? BlackBoxPoly::mandelbrot(k)
                              : n == "mandelbrot-map" ? BlackBoxPoly::mandelbrot_map(k)
                                                      : BlackBoxPoly::iterated_square(k);
      CHECK(bb.degree() == dense.degree());
      for (int t = 0; t < 50; ++t) {
        // the expansion cancels badly at |x| > 1; stay in the unit disc and
        // evaluate it in long double
        const Complex x = std::polar(std::sqrt((rng() % 1000) / 1000.0), 0.01 * (rng() % 629));
        const Evaluation e = bb.eval(x);
        std::complex<long double> lv = 0, ld = 0;
        const std::complex<long double> lx(x);
        for (int i = dense.degree(); i >= 0; --i) {
          ld = ld * lx + lv;
          lv = lv * lx + std::complex<long double>(dense[i]);
        }
        const Complex v(lv), dv(ld);
        CHECK(std::abs(e.value - v) <= 1e-9 * std::max<Real>(1, std::abs(v)));
        CHECK(std::abs(e.derivative - dv) <= 1e-9 * std::max<Real>(1, std::abs(dv)));
      }
    }
  }
}

TEST_CASE("random roots honor disc and separation") {
  std::mt19937_64 rng(5);
  const auto r = oracle::random_roots_in_disc(rng, 30, Complex(1, -1), 0.5, 0.05);
  REQUIRE(r.size() == 30);
  for (Complex z : r) CHECK(std::abs(z - Complex(1, -1)) < 0.5);
  CHECK(oracle::min_separation(r) >= 0.05);
  CHECK_THROWS_AS(oracle::random_roots_in_disc(rng, 1000, 0, 0.1, 0.05), Error);
}

TEST_CASE("matching and separation helpers") {
  CHECK(oracle::min_separation({0, 3, Complex(0, 1)}) == doctest::Approx(1));
  CHECK(oracle::match_distance({1, 2}, {2.1, 0.95}) == doctest::Approx(0.1));
  CHECK(std::isinf(oracle::match_distance({1}, {1, 2})));
  CHECK(oracle::match_distance({}, {}) == 0);
}

TEST_CASE("corpora pass their self-check and round-trip") {
  for (const char* kind : {"disc", "annulus-free", "segment", "split"}) {
    oracle::CorpusParams cp;
    cp.kind = kind;
    cp.degree = 12;
    cp.separation = 0.02;
    cp.gap_inner = 0.5;
    cp.gap_outer = 2;
    cp.outer_max = 3;
    cp.inner_count = 4;
    const auto c = oracle::make_corpus(cp, 5, 99, true);
    REQUIRE(c.entries.size() == 5);
    for (const auto& e : c.entries) {
      REQUIRE(e.poly);
      CHECK(e.roots.size() == 12);
      const Poly& p = *e.poly;
      Real n1 = 0;
      for (int i = 0; i <= p.degree(); ++i) n1 += std::abs(p[i]);
      for (Complex x : e.roots) CHECK(std::abs(p(x)) <= 1e-8 * n1 * std::pow(1 + std::abs(x), 12));
      const std::string kindname = kind;
      if (kindname == "annulus-free" || kindname == "split")
        for (Complex x : e.roots) CHECK((std::abs(x) < 0.5 || std::abs(x) > 2));
      if (kindname == "segment")
        for (int j = 0; j < 4; ++j) CHECK(e.roots[j].imag() == 0);
      const BlackBoxPoly bb = oracle::as_blackbox(e);
      CHECK(std::abs(bb.eval(0.3).value - p(0.3)) <= 1e-10 * std::max<Real>(1, std::abs(p(0.3))));
    }
    const auto back = oracle::corpus_from_json(oracle::to_json(c));
    CHECK(back.seed == c.seed);
    CHECK(back.params.kind == c.params.kind);
    REQUIRE(back.entries.size() == c.entries.size());
    for (std::size_t i = 0; i < c.entries.size(); ++i)
      CHECK(back.entries[i].roots == c.entries[i].roots);
    // same seed, same corpus
    CHECK(oracle::make_corpus(cp, 5, 99, false).entries[3].roots == c.entries[3].roots);
  }
  oracle::CorpusParams bad;
  bad.kind = "fractal";
  bad.degree = 3;
  CHECK_THROWS_AS(oracle::make_corpus(bad, 1, 1), Error);
  CHECK_THROWS_AS(oracle::corpus_from_json("{not json"), Error);
}

TEST_CASE("polishing and reference roots") {
  std::mt19937_64 rng(6);
  const auto roots = oracle::random_roots_in_disc(rng, 10, 0, 1, 0.1);
  const Poly p = oracle::build_from_roots(roots);
  std::vector<Complex> start;
  for (Complex r : roots) start.push_back(r + testutil::rand_complex(rng, 1e-4));
  CHECK(oracle::match_distance(oracle::polish_roots(p, start), roots) <= 1e-13);
  CHECK(oracle::match_distance(oracle::reference_roots(p), roots) <= 1e-10);
}

}  // TEST_SUITE
