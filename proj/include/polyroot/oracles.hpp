#pragma once

// Reference implementations for tests and the bench harness. Nothing here
// calls the solvers; arithmetic is done afresh in long double (double-double
// for root polishing).

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"

namespace polyroot::oracle {

using LComplex = std::complex<long double>;

// Monic product of (x - r), taken in decreasing order of |r|.
Poly build_from_roots(std::vector<Complex> roots);

// Sum of (x_j - c)^h over the roots in the open disc, h = 0..count-1.
std::vector<Complex> brute_power_sums(const std::vector<Complex>& roots, const Disc& disc,
                                      int count);

// Sum over the roots in the disc of y^h / (1 - y^q), y = (x_j - c)/r, times
// r^h: what q-point discretization of the contour integral returns when
// every root is inside. Roots outside contribute -y^(h-q)/(1 - y^-q).
std::vector<Complex> discretized_power_sums(const std::vector<Complex>& roots,
                                            const Disc& disc, int q);

// Schoolbook division p = q v + r.
std::pair<Poly, Poly> long_division(const Poly& p, const Poly& v);

// Dense coefficients of the recurrence families
//   mandelbrot:      p_0 = 1, p_1 = x, p_{i+1} = x p_i^2 + 1
//   mandelbrot-map:  p_0 = 0, p_{i+1} = p_i^2 + x
//   iterated-square: p_0 = x, p_{i+1} = p_i^2 + 2
Poly expand_family(const std::string& name, int k);

// Durand-Kerner in long double with many restarts. For spot checks where a
// polynomial has no constructed roots; never the ground truth of a test.
std::vector<Complex> reference_roots(const Poly& p, int max_iter = 5000);

// Newton steps in double-double on the given coefficients, starting from
// the given roots. Rounding a product to double coefficients moves clustered
// roots; this returns the roots of the polynomial actually stored.
std::vector<Complex> polish_roots(const Poly& p, std::vector<Complex> roots,
                                  int iterations = 8);

// Minimum over pairs of |x_i - x_j|.
Real min_separation(const std::vector<Complex>& roots);

// Greedy matching of two root lists; returns the largest matched distance,
// or infinity when the sizes differ.
Real match_distance(std::vector<Complex> got, std::vector<Complex> want);

struct CorpusParams {
  std::string kind;        // "disc", "annulus-free", "segment", "split"
  int degree = 0;
  Real separation = 0;     // minimum pairwise distance, 0 for none
  Complex center{0};
  Real radius = 1;
  Real gap_inner = 0;      // annulus-free: no roots with gap_inner <= |x| <= gap_outer
  Real gap_outer = 0;
  Real outer_max = 0;      // largest modulus of outer roots
  int inner_count = 0;     // split: roots of f; segment: real roots
  Real lo = -1, hi = 1;    // segment
};

struct CorpusEntry {
  std::vector<Complex> roots;
  std::optional<Poly> poly;  // dense expansion when requested
};

struct Corpus {
  CorpusParams params;
  std::uint64_t seed = 0;
  std::vector<CorpusEntry> entries;
};

// Roots uniform in D(center, radius) with pairwise distance >= separation.
std::vector<Complex> random_roots_in_disc(std::mt19937_64& rng, int n, Complex center,
                                          Real radius, Real separation = 0);

// count polynomials of the given kind. Dense expansions are attached when
// dense is set; the self-check |p(x)| <= 1e-8 |p|_1 (1 + |x|)^d at each stored
// root is enforced on them and failure throws.
Corpus make_corpus(const CorpusParams& params, int count, std::uint64_t seed,
                   bool dense = true);

std::string to_json(const Corpus& c);
Corpus corpus_from_json(const std::string& text);

// The black box for an entry: the factored product of its roots.
BlackBoxPoly as_blackbox(const CorpusEntry& e);

}  // namespace polyroot::oracle
