#include "polyroot/dft.hpp"

#include <utility>

#include "polyroot/error.hpp"

namespace polyroot {

void dft_inplace(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  require(is_pow2(n), "dft: length must be a power of two");
  if (n == 1) return;

  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Twiddles are taken straight from cos/sin for each length rather than by
  // repeated multiplication, which keeps the error at O(eps log n).
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    std::vector<Complex> tw(half);
    for (std::size_t k = 0; k < half; ++k) {
      tw[k] = unit_root(len, inverse ? -static_cast<long long>(k)
                                     : static_cast<long long>(k));
    }
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + half] * tw[k];
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
  if (inverse) {
    const Real s = Real(1) / static_cast<Real>(n);
    for (auto& x : a) x *= s;
  }
}

std::vector<Complex> dft(std::span<const Complex> values, bool inverse) {
  std::vector<Complex> a(values.begin(), values.end());
  dft_inplace(a, inverse);
  return a;
}

}  // namespace polyroot
