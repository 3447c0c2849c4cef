#pragma once

#include <cstddef>
#include <random>
#include <span>
#include <vector>

#include "bipoly/matrix.h"
#include "bipoly/params.h"
#include "bipoly/polynomial.h"

namespace bipoly {

// What the master uploads to one worker: A(x_i) and the first m
// y-derivatives of B at (x_i, y_i).
struct WorkerShare {
  std::size_t worker_id = 0;  // 1-based
  EvalPoint point;
  FieldMatrix share_a;
  std::vector<FieldMatrix> shares_b;
};

// One finished sub-task: share_a * shares_b[order].
struct PartialResult {
  std::size_t worker_id = 0;
  std::size_t order = 0;
  EvalPoint point;
  FieldMatrix product;
};

using ResponseSet = std::vector<PartialResult>;

struct Partitions {
  std::vector<FieldMatrix> a;  // K row blocks, each r/K x s
  std::vector<FieldMatrix> b;  // L column blocks, each s x c/L
};

// Random masks R_1..R_T and S_{t,j}. Kept for instrumentation only; the
// serialization layer never writes them.
struct Masks {
  std::vector<FieldMatrix> r;
  std::vector<std::vector<FieldMatrix>> s;  // T rows of m
};

struct Encoding {
  std::vector<WorkerShare> shares;
  Masks masks;
};

struct DecodedProduct {
  std::vector<std::vector<FieldMatrix>> blocks;  // K x L, block (k,l) = A_k B_l
  FieldMatrix assembled;
};

Partitions Partition(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p);
FieldMatrix AssembleRows(std::span<const FieldMatrix> blocks);
FieldMatrix AssembleCols(std::span<const FieldMatrix> blocks);

// N distinct points drawn uniformly by rejection. When T >= 1 the x
// coordinates are additionally nonzero and pairwise distinct, which the
// privacy argument needs. Throws Errc::kFieldTooSmall when that is impossible.
std::vector<EvalPoint> SamplePoints(const SchemeParams& p, std::mt19937_64& rng);

Masks SampleMasks(const SchemeParams& p, std::size_t a_rows, std::size_t inner,
                  std::size_t b_cols, std::mt19937_64& rng);

Encoding Encode(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p,
                std::mt19937_64& rng);
// Same, with caller-supplied points and masks (tests, degenerate demos).
Encoding EncodeWith(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p,
                    std::span<const EvalPoint> points, Masks masks);

PartialResult WorkerCompute(const WorkerShare& share, std::size_t order, const PrimeField& field);

// (K+T)L + m(K+T-1)
std::size_t RecoveryThreshold(const SchemeParams& p);

// Closed-form failure-probability numerator d, so that decoding fails with
// probability at most d/q. Exact integer arithmetic; throws
// Errc::kNonIntegerBound if the expression is not integral. The expression
// goes negative (-1) for K = L = 1, T = 0; it is returned as is, and
// SupportDegreeSum gives the enumerated degree total.
std::int64_t FailureBoundD(const SchemeParams& p);

// N (rs/K + m sc/L) ceil(log2 q)
u64 UploadCostBits(const SchemeParams& p, std::size_t r, std::size_t s, std::size_t c);

// Budget counted in equal-size matrix partitions per worker: one for A(x_i),
// the rest for B shares, capped at L.
std::size_t MaxMForBudget(std::size_t budget, const SchemeParams& p);

// Throws Errc::kOrderViolation unless every worker's orders form a prefix
// 0..j, without duplicates and below m.
void CheckPrefixProperty(const ResponseSet& responses, std::size_t m);

// Sorts by (worker_id, order).
ResponseSet CanonicalOrder(ResponseSet responses);

FieldMatrix BuildInterpolationMatrix(const ResponseSet& responses, const MonomialSupport& support,
                                     const PrimeField& field, std::size_t m);

// Interpolates A(x)B(x,y) from the first R_th responses in (worker_id, order)
// order and reads off the blocks A_k B_l. Throws kNotEnoughResponses,
// kOrderViolation or kDecodeSingular.
DecodedProduct Decode(const ResponseSet& responses, const SchemeParams& p);

// Draws `count` results so that every worker contributes a prefix of its
// sub-tasks: repeatedly pick a uniformly random worker that still has work
// and take its next result. `all` must hold complete prefixes per worker.
ResponseSet RandomPrefixSubset(const ResponseSet& all, std::size_t count, std::mt19937_64& rng);

}  // namespace bipoly
