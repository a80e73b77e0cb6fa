#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "polyroot/poly.hpp"

namespace testutil {

using polyroot::Complex;
using polyroot::Poly;
using polyroot::Real;

inline bool near(Complex a, Complex b, Real tol) { return std::abs(a - b) <= tol; }

inline Complex rand_complex(std::mt19937_64& rng, Real scale = 1) {
  std::uniform_real_distribution<Real> u(-scale, scale);
  return {u(rng), u(rng)};
}

inline Poly rand_poly(std::mt19937_64& rng, int d) {
  std::vector<Complex> c(d + 1);
  for (auto& x : c) x = rand_complex(rng);
  if (std::abs(c.back()) < 0.1) c.back() = 1;
  return Poly(c);
}

// Direct power sum of the coefficients, no Horner.
inline Complex eval_naive(const Poly& p, Complex x) {
  Complex s{0};
  for (int i = 0; i <= p.degree(); ++i) s += p[i] * std::pow(x, i);
  return s;
}

inline Real max_coeff_diff(const Poly& a, const Poly& b) {
  Real m = 0;
  for (int i = 0; i <= std::max(a.degree(), b.degree()); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace testutil
