#pragma once

#include <cstddef>
#include <cstdint>

namespace bipoly {

// Multi-message extension of GASP codes: each worker holds m coded
// partitions of both A and B, so a coalition of T sees mT evaluations.
struct GaspParams {
  std::size_t K = 1;
  std::size_t L = 1;
  std::size_t T = 1;
  std::size_t m = 1;
};

// Recovery threshold with mT in place of T. Only the regimes with L <= K are
// defined; anything else throws Errc::kUnsupportedRegime.
std::size_t GaspRecoveryThreshold(const GaspParams& g);

// floor(budget / 2): every sub-task needs its own A and B partition.
std::size_t GaspMaxM(std::size_t budget);

// N m (rs/K + sc/L) ceil(log2 q)
std::uint64_t GaspUploadCostBits(const GaspParams& g, std::size_t n, std::size_t r, std::size_t s,
                                 std::size_t c, std::uint64_t q);

}  // namespace bipoly
