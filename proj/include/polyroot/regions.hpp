#pragma once

#include <cmath>

#include "polyroot/scalar.hpp"

namespace polyroot {

struct Disc {
  Complex center{0};
  Real radius = 1;

  bool contains(Complex z) const { return std::abs(z - center) < radius; }
  Disc dilated(Real f) const { return {center, radius * f}; }
};

// Axis-aligned square with the given center and half-width.
struct Square {
  Complex center{0};
  Real half_width = 1;

  // smallest disc containing the square
  Disc superscribing() const {
    return {center, half_width * std::sqrt(Real(2))};
  }
  bool contains(Complex z) const {
    return std::abs(z.real() - center.real()) <= half_width &&
           std::abs(z.imag() - center.imag()) <= half_width;
  }
};

struct Annulus {
  Complex center{0};
  Real inner = 0;
  Real outer = 1;
  int count = 0;

  bool contains(Complex z) const {
    const Real r = std::abs(z - center);
    return r >= inner && r <= outer;
  }
};

struct Segment {
  Real lo = -1;
  Real hi = 1;
};

}  // namespace polyroot
