#pragma once

#include <cstdint>
#include <utility>

#include "polyroot/blackbox.hpp"
#include "polyroot/report.hpp"

namespace polyroot {

// J(z) = (z + 1/z) / 2. Maps the unit circle two-to-one onto [-1, 1].
Complex zhukovsky(Complex z);

// The two preimages x +- sqrt(x^2 - 1); their product is 1.
std::pair<Complex, Complex> zhukovsky_inverse(Complex x);

// s(z) = z^d p(J(z)), degree 2d, from p sampled at Chebyshev points
// cos(2 pi h / N) and one inverse transform.
Poly lift_to_circle(const Poly& p);

// The same s as a black box over p. s'(z) by the chain rule.
BlackBoxPoly lift_to_circle_blackbox(const BlackBoxPoly& p);

struct CircleFactor {
  Poly g;          // monic, roots of s on the unit circle
  int w = 0;       // deg g / 2
  Real count = 0;  // raw band count before rounding
  int q = 0;
};

// Factor of s whose roots lie on the unit circle, from band power sums
// between radii 1/thetabar and thetabar.
CircleFactor circle_factor(const BlackBoxPoly& s, Real thetabar = 1.25,
                           std::uint64_t seed = kDefaultSeed);

// f of degree w with g(z) = 2^w z^w f(J(z)), from g at the 2K-th roots of
// unity and interpolation at the Chebyshev points cos(pi h / K).
Poly segment_polynomial(const Poly& g, int w);

struct SegmentConfig {
  Real epsilon = 1e-12;
  Real thetabar = 1.25;
  bool transition = true;  // false: solve g itself and map back
  std::uint64_t seed = kDefaultSeed;
};

// Real roots of p in [lo, hi], assuming p has no roots close to the segment
// that are not on it.
RootReport solve_segment(const BlackBoxPoly& p, Real lo, Real hi,
                         const SegmentConfig& cfg = {});

}  // namespace polyroot
