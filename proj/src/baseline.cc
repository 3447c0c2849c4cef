#include "bipoly/baseline.h"

#include <string>

#include "bipoly/error.h"
#include "bipoly/field.h"

namespace bipoly {

std::size_t GaspRecoveryThreshold(const GaspParams& g) {
  const std::size_t K = g.K, L = g.L, mt = g.m * g.T;
  if (K == 0 || L == 0 || mt == 0) {
    throw Error(Errc::kUnsupportedRegime, "K, L and mT must all be positive");
  }
  if (L > K) {
    throw Error(Errc::kUnsupportedRegime,
                "threshold is only defined for L <= K (L=" + std::to_string(L) +
                    ", K=" + std::to_string(K) + ")");
  }
  if (mt == 1 && 1 < L) return K * L + K + L;
  if (1 < mt && mt < L) return K * L + K + L + mt * mt + mt - 3;
  if (L <= mt && mt < K) return (K + mt) * (L + 1) - 1;
  if (K <= mt) return 2 * K * L + 2 * mt - 1;
  throw Error(Errc::kUnsupportedRegime, "no threshold case matches");
}

std::size_t GaspMaxM(std::size_t budget) {
  if (budget < 2) {
    throw Error(Errc::kBudgetTooSmall,
                "budget " + std::to_string(budget) + " cannot hold one A and one B partition");
  }
  return budget / 2;
}

std::uint64_t GaspUploadCostBits(const GaspParams& g, std::size_t n, std::size_t r, std::size_t s,
                                 std::size_t c, std::uint64_t q) {
  if (r % g.K != 0 || c % g.L != 0) {
    throw Error(Errc::kIndivisibleDimensions, "r must be divisible by K and c by L");
  }
  return std::uint64_t{n} * g.m * (r * s / g.K + s * c / g.L) * PrimeField(q).element_bits();
}

}  // namespace bipoly
