#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>

namespace polyroot {

// Working precision. Everything numeric goes through these two aliases, so a
// wider type can be dropped in here without touching the algorithms.
using Real = double;
using Complex = std::complex<Real>;

inline constexpr Real kEps = std::numeric_limits<Real>::epsilon();
inline constexpr Real kPi = std::numbers::pi_v<Real>;
inline constexpr Real kInf = std::numeric_limits<Real>::infinity();

inline constexpr std::uint64_t kDefaultSeed = 0x5eed2024ULL;

inline bool is_finite(Complex z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

inline std::size_t next_pow2(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// exp(2*pi*i*k/n)
inline Complex unit_root(std::size_t n, long long k) {
  const Real a = 2 * kPi * static_cast<Real>(k) / static_cast<Real>(n);
  return {std::cos(a), std::sin(a)};
}

}  // namespace polyroot
