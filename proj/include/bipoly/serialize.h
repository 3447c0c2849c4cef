#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "bipoly/params.h"
#include "bipoly/scheme.h"

namespace bipoly {

// Flat little-endian layout shared by share and result files:
//
//   u64 magic, u64 version, u64 q, K, L, T, m, N, r, s, c
//   record body (u64 words)
//
// Share body:  worker_id, x, y, A(x) (r/K x s), then m blocks (s x c/L).
// Result body: worker_id, order, x, y, product (r/K x c/L).
// All matrices are row-major. Masks never appear in either layout.
inline constexpr std::uint64_t kShareMagic = 0x0045524148535042ULL;   // "BPSHARE\0"
inline constexpr std::uint64_t kResultMagic = 0x00544c5345525042ULL;  // "BPRESLT\0"
inline constexpr std::uint64_t kWireVersion = 1;

struct WireHeader {
  SchemeParams params;
  std::uint64_t r = 0;
  std::uint64_t s = 0;
  std::uint64_t c = 0;

  friend bool operator==(const WireHeader& a, const WireHeader& b) {
    return a.params.K == b.params.K && a.params.L == b.params.L && a.params.T == b.params.T &&
           a.params.m == b.params.m && a.params.N == b.params.N && a.params.q == b.params.q &&
           a.r == b.r && a.s == b.s && a.c == b.c;
  }
};

std::vector<std::uint8_t> SerializeShare(const WireHeader& header, const WorkerShare& share);
std::vector<std::uint8_t> SerializeResult(const WireHeader& header, const PartialResult& result);

// Both throw Errc::kFormat on a bad magic, version, truncation or
// non-canonical element.
WorkerShare DeserializeShare(std::span<const std::uint8_t> bytes, WireHeader* header);
PartialResult DeserializeResult(std::span<const std::uint8_t> bytes, WireHeader* header);

void WriteBytes(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> ReadBytes(const std::filesystem::path& path);

}  // namespace bipoly
