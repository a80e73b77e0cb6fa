#pragma once

#include <span>
#include <vector>

#include "polyroot/scalar.hpp"

namespace polyroot {

// Radix-2 transform, length must be a power of two.
//   forward: out[g] = sum_h in[h] * w^(g h),  w = exp(2 pi i / n)
//   inverse: out[h] = (1/n) sum_g in[g] * w^(-g h)
std::vector<Complex> dft(std::span<const Complex> values, bool inverse = false);

void dft_inplace(std::vector<Complex>& a, bool inverse);

}  // namespace polyroot
