#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"

namespace polyroot {

// Bracket on r1 = max |x_j|.
struct RadiusBracket {
  Real lower = 0;
  Real upper = 0;
  Real coefficient_upper = 0;  // 2 r~ with r~ = max_j |p_{d-j}/p_d|^(1/j)
  Real euclidean_upper = 0;    // sqrt(1 + sum_{i<d} |p_i/p_d|^2)
};

RadiusBracket r1_coefficient_bounds(const Poly& p);

// Upper bound on r1 for any input. Dense input uses the coefficient bounds;
// otherwise discs D(0, 2^i) are counted until they hold all d roots and the
// radius is then tightened with Turan's bound.
Real r1_upper(const BlackBoxPoly& p);

// Turan's bound from power sums. sums[g-1] = s_{gK}, d = number of roots.
// Returns [r*, r* 5^(1/K)] which contains r1 when all d sums are supplied.
struct TuranBracket {
  Real r_star = 0;
  Real lower = 0;
  Real upper = 0;
};
TuranBracket turan_r1(std::span<const Complex> sums, int d, int K);

// rho_1 = d |p(c)/p'(c)|: some root lies in D(c, rho_1). Zero when p(c)
// vanishes; empty when p'(c) does.
std::optional<Real> cauchy_inclusion_radius(const BlackBoxPoly& p, Complex c);

struct DandelinResult {
  Poly poly;
  int iterations = 0;
  bool over_cap = false;
};

// Graeffe root squaring: p_{i+1}(x) = (-1)^d p_i(sqrt x) p_i(-sqrt x),
// normalized monic after each step.
DandelinResult dandelin_squaring(const Poly& p, int iterations);
int dandelin_cap(int d);

// Newton-polygon annuli. Radii within a factor `width` of each other are
// grouped; each annulus carries the number of roots attributed to it. The
// estimates are sharpened by `refine` root-squaring steps first (negative
// picks a default from the degree).
std::vector<Annulus> annuli_cover(const Poly& p, Real width = 2, int refine = -1);

}  // namespace polyroot
