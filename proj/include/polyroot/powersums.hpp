#pragma once

#include <optional>
#include <span>
#include <vector>

#include "polyroot/blackbox.hpp"
#include "polyroot/regions.hpp"

namespace polyroot {

// values[h] approximates sum over roots x_j in the disc of (x_j - c)^h,
// h = 0..q-1, from q samples of p'/p on the boundary circle.
struct PowerSumEstimate {
  std::vector<Complex> values;
  int q = 0;
  Disc disc;
  std::optional<Real> theta_hint;   // assumed isolation of the disc
  std::vector<Real> error_bound;    // per h, only when theta_hint is set
};

// q is rounded up to a power of two. With rotate, the sample points are
// turned by a seeded random angle and re-drawn if one lands on a root.
PowerSumEstimate power_sums_disc(const BlackBoxPoly& p, const Disc& disc, int q,
                                 bool rotate = false,
                                 std::uint64_t seed = kDefaultSeed,
                                 std::optional<Real> theta = std::nullopt);

// (d_f eta^(q+h) + (d - d_f) eta^(q-h)) / (1 - eta^q), eta = 1/theta, for
// the unit disc; multiply by rho^h for D(c, rho).
Real power_sum_error_bound(int d, int d_f, int q, int h, Real theta);

// Power sums of the roots in the band between the circles of radii
// radius/thetabar and radius*thetabar around center.
PowerSumEstimate power_sums_circle(const BlackBoxPoly& p, Complex center,
                                   Real radius, int q, Real thetabar = 1.25,
                                   bool rotate = false,
                                   std::uint64_t seed = kDefaultSeed);

// s_1..s_k from the coefficients by Newton's identities. k may exceed d.
// With a radius hint R the roots are first scaled into D(0, 1/2).
std::vector<Complex> coeffs_to_power_sums(const Poly& p, int k,
                                          std::optional<Real> radius_hint = std::nullopt);

// Monic degree-d_f polynomial from s_1..s_{d_f} (s[0] = s_1).
Poly power_sums_to_coeffs_newton(std::span<const Complex> s, int d_f);

// Monic degree-d_f polynomial from s_1..s_{2k} by doubling the power series
// exp(-sum s_j x^j / j). The leading k coefficients below x^d_f come from the
// series; any remaining ones use Newton's identities and need d_f sums.
Poly power_sums_to_coeffs_schonhage(std::span<const Complex> s, int k, int d_f);

}  // namespace polyroot
