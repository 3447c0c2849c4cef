#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bipoly/matrix.h"
#include "bipoly/params.h"
#include "bipoly/scheme.h"

namespace bipoly {

// What a coalition of at most T workers sees after pooling its shares.
struct CollusionView {
  std::vector<std::size_t> subset;  // worker ids
  std::vector<EvalPoint> points;
  std::vector<FieldMatrix> shares_a;               // one per colluder
  std::vector<std::vector<FieldMatrix>> shares_b;  // m per colluder
};

// Throws Errc::kInvalidParams if the subset is larger than T or names an
// unknown worker.
CollusionView MakeCollusionView(std::span<const WorkerShare> shares,
                                std::span<const std::size_t> subset, const SchemeParams& p);

// Coefficients with which the masks enter the colluders' observations.
//   ma: T x T,   ma(i, t)            = x_i^(K+t)
//   mb: mT x mT, mb((i,o), (t,j))    = fall(j, o) x_i^(K+t) y_i^(j-o)   (0 if j < o)
// Indices are 0-based; row (i,o) is i*m + o, column (t,j) is t*m + j.
struct MaskCoefficientMatrices {
  FieldMatrix ma;
  FieldMatrix mb;
};

// Requires exactly T pairwise distinct points; throws Errc::kDuplicatePoints.
MaskCoefficientMatrices MaskMatrices(std::span<const EvalPoint> points, const SchemeParams& p);

struct PrivacyVerdict {
  bool pass = false;
  std::size_t rank_a = 0;
  std::size_t rank_b = 0;
  // On failure: which matrix lost rank ("MA" or "MB") and the matrix itself.
  std::string witness_name;
  std::optional<FieldMatrix> witness;
};

// Pass iff MA has rank T and MB has rank mT, i.e. the uniform masks act as a
// one-time pad on everything the coalition observes. Degenerate (repeated)
// points are accepted here and simply fail.
PrivacyVerdict PerfectPrivacyCheck(std::span<const EvalPoint> points, const SchemeParams& p);

struct MaskOverride {
  bool zero_r = false;  // force every R_t to 0
  bool zero_s = false;  // force every S_{t,j} to 0
};

// Largest number of (secret, mask) assignments the enumerator will visit.
inline constexpr std::size_t kMaxEnumeration = std::size_t{1} << 22;

// Exact mutual information, in bits, between the secrets (A, B) and the view
// of the coalition at `points`, for scalar 1x1 partitions with secrets and
// masks uniform over F_q. Every assignment is enumerated, so the result is
// exact up to the final log2. Requires K == 1, L <= 2, q <= 7 and a state
// space of at most kMaxEnumeration; otherwise Errc::kTooLargeToEnumerate.
double ExhaustiveMutualInformation(const SchemeParams& p, std::span<const EvalPoint> points,
                                   MaskOverride override_masks = {});

bool IsEnumerable(const SchemeParams& p);

}  // namespace bipoly
