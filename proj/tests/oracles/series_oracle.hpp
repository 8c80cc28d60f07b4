#pragma once
// L(s, chi) from the Dirichlet series itself: partial sums over whole periods,
// extrapolated in the block count by repeated Richardson elimination.

#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace oracle {

// values: chi(0..q-1), non-principal. Partial sums over K periods behave like
// L + c_1 K^{-s} + c_2 K^{-s-1} + ..., so the elimination uses those exponents.
inline std::complex<double> period_block_l(const std::vector<std::complex<double>>& values, double s,
                                           std::uint64_t base_blocks = 64, int levels = 7) {
  const std::uint64_t q = values.size();
  std::vector<std::complex<double>> partial(levels);
  std::complex<double> acc{};
  std::uint64_t done = 0;
  for (int k = 0; k < levels; ++k) {
    const std::uint64_t blocks = base_blocks << k;
    for (std::uint64_t b = done; b < blocks; ++b) {
      // sum the block from its small terms up for a little extra accuracy
      std::complex<double> block{};
      for (std::uint64_t a = q; a >= 1; --a) {
        if (values[a % q] == 0.0) continue;
        block += values[a % q] * std::pow(static_cast<double>(b * q + a), -s);
      }
      acc += block;
    }
    done = blocks;
    partial[k] = acc;
  }
  // Richardson: blocks double per level
  for (int j = 0; j + 1 < levels; ++j) {
    const double f = std::pow(2.0, s + j);
    for (int k = levels - 1; k > j; --k) partial[k] = (f * partial[k] - partial[k - 1]) / (f - 1);
  }
  return partial[levels - 1];
}

}  // namespace oracle
