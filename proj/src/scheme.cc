#include "bipoly/scheme.h"

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <tuple>
#include <utility>

#include "bipoly/error.h"

namespace bipoly {

namespace {

FieldElement UniformElement(const PrimeField& field, std::mt19937_64& rng, u64 lo = 0) {
  std::uniform_int_distribution<u64> dist(lo, field.order() - 1);
  return FieldElement{dist(rng)};
}

}  // namespace

Partitions Partition(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::kDimensionMismatch, "A has " + std::to_string(a.cols()) +
                                              " columns but B has " + std::to_string(b.rows()) +
                                              " rows");
  }
  if (a.rows() % p.K != 0) {
    throw Error(Errc::kIndivisibleDimensions, "K=" + std::to_string(p.K) +
                                                  " does not divide r=" + std::to_string(a.rows()));
  }
  if (b.cols() % p.L != 0) {
    throw Error(Errc::kIndivisibleDimensions, "L=" + std::to_string(p.L) +
                                                  " does not divide c=" + std::to_string(b.cols()));
  }
  Partitions out;
  const std::size_t height = a.rows() / p.K;
  const std::size_t width = b.cols() / p.L;
  for (std::size_t k = 0; k < p.K; ++k) out.a.push_back(a.block(k * height, 0, height, a.cols()));
  for (std::size_t l = 0; l < p.L; ++l) out.b.push_back(b.block(0, l * width, b.rows(), width));
  return out;
}

FieldMatrix AssembleRows(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t height = blocks.front().rows();
  FieldMatrix out(height * blocks.size(), blocks.front().cols());
  for (std::size_t i = 0; i < blocks.size(); ++i) out.set_block(i * height, 0, blocks[i]);
  return out;
}

FieldMatrix AssembleCols(std::span<const FieldMatrix> blocks) {
  if (blocks.empty()) return {};
  const std::size_t width = blocks.front().cols();
  FieldMatrix out(blocks.front().rows(), width * blocks.size());
  for (std::size_t i = 0; i < blocks.size(); ++i) out.set_block(0, i * width, blocks[i]);
  return out;
}

std::vector<EvalPoint> SamplePoints(const SchemeParams& p, std::mt19937_64& rng) {
  const PrimeField field = p.field();
  const bool private_mode = p.T >= 1;
  if (p.q < p.N || (private_mode && p.q - 1 < p.N)) {
    throw Error(Errc::kFieldTooSmall, "q=" + std::to_string(p.q) + " cannot host N=" +
                                          std::to_string(p.N) + " distinct evaluation points");
  }
  std::vector<EvalPoint> points;
  points.reserve(p.N);
  std::set<EvalPoint> seen_points;
  std::set<u64> seen_x;
  while (points.size() < p.N) {
    EvalPoint pt{UniformElement(field, rng, private_mode ? 1 : 0), UniformElement(field, rng)};
    if (private_mode) {
      if (!seen_x.insert(pt.x.value).second) continue;
    } else if (!seen_points.insert(pt).second) {
      continue;
    }
    points.push_back(pt);
  }
  return points;
}

Masks SampleMasks(const SchemeParams& p, std::size_t a_rows, std::size_t inner,
                  std::size_t b_cols, std::mt19937_64& rng) {
  const PrimeField field = p.field();
  Masks masks;
  for (std::size_t t = 0; t < p.T; ++t) {
    masks.r.push_back(FieldMatrix::Random(a_rows, inner, field, rng));
  }
  for (std::size_t t = 0; t < p.T; ++t) {
    std::vector<FieldMatrix> row;
    for (std::size_t j = 0; j < p.m; ++j) row.push_back(FieldMatrix::Random(inner, b_cols, field, rng));
    masks.s.push_back(std::move(row));
  }
  return masks;
}

Encoding Encode(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p,
                std::mt19937_64& rng) {
  p.Validate();
  if (a.rows() % p.K != 0 || b.cols() % p.L != 0) Partition(a, b, p);  // raises the right error
  const auto points = SamplePoints(p, rng);
  Masks masks = SampleMasks(p, a.rows() / p.K, a.cols(), b.cols() / p.L, rng);
  return EncodeWith(a, b, p, points, std::move(masks));
}

Encoding EncodeWith(const FieldMatrix& a, const FieldMatrix& b, const SchemeParams& p,
                    std::span<const EvalPoint> points, Masks masks) {
  p.Validate();
  if (points.size() != p.N) {
    throw Error(Errc::kInvalidParams, "need exactly N=" + std::to_string(p.N) + " points");
  }
  const PrimeField field = p.field();
  const Partitions parts = Partition(a, b, p);
  Encoding enc;
  enc.shares.reserve(p.N);
  for (std::size_t i = 0; i < p.N; ++i) {
    WorkerShare share;
    share.worker_id = i + 1;
    share.point = points[i];
    share.share_a = EvalA(parts.a, masks.r, points[i].x, field);
    for (std::size_t order = 0; order < p.m; ++order) {
      share.shares_b.push_back(EvalDerivB(p, parts.b, masks.s, points[i], order));
    }
    enc.shares.push_back(std::move(share));
  }
  enc.masks = std::move(masks);
  return enc;
}

PartialResult WorkerCompute(const WorkerShare& share, std::size_t order, const PrimeField& field) {
  if (order >= share.shares_b.size()) {
    throw Error(Errc::kInvalidOrder, "worker " + std::to_string(share.worker_id) + " holds " +
                                         std::to_string(share.shares_b.size()) +
                                         " B shares, order " + std::to_string(order) +
                                         " requested");
  }
  return PartialResult{share.worker_id, order, share.point,
                       MatMul(share.share_a, share.shares_b[order], field)};
}

std::size_t RecoveryThreshold(const SchemeParams& p) {
  return (p.K + p.T) * p.L + p.m * (p.K + p.T - 1);
}

std::int64_t FailureBoundD(const SchemeParams& p) {
  using i128 = __int128;
  const i128 K = p.K, L = p.L, T = p.T, m = p.m;
  const i128 n = K + T;
  // Twice each half-term, so divisibility by 2 can be checked exactly.
  const i128 first = m * (3 * n * n + m * n - 8 * K - 6 * T - m + 3);
  const i128 second = n * L * (K + L + T - 2);
  if (first % 2 != 0 || second % 2 != 0) {
    throw Error(Errc::kNonIntegerBound, "failure bound is not an integer for these parameters");
  }
  return static_cast<std::int64_t>(first / 2 + second / 2);
}

u64 UploadCostBits(const SchemeParams& p, std::size_t r, std::size_t s, std::size_t c) {
  if (r % p.K != 0 || c % p.L != 0) {
    throw Error(Errc::kIndivisibleDimensions, "r must be divisible by K and c by L");
  }
  const u64 elements = r * s / p.K + p.m * s * c / p.L;
  return p.N * elements * PrimeField(p.q).element_bits();
}

std::size_t MaxMForBudget(std::size_t budget, const SchemeParams& p) {
  if (budget < 2) {
    throw Error(Errc::kBudgetTooSmall,
                "budget " + std::to_string(budget) + " cannot hold one A and one B partition");
  }
  return std::min(budget - 1, p.L);
}

void CheckPrefixProperty(const ResponseSet& responses, std::size_t m) {
  std::map<std::size_t, std::set<std::size_t>> orders;
  for (const auto& res : responses) {
    if (res.order >= m) {
      throw Error(Errc::kOrderViolation, "worker " + std::to_string(res.worker_id) +
                                             " reported order " + std::to_string(res.order) +
                                             " but m=" + std::to_string(m));
    }
    if (!orders[res.worker_id].insert(res.order).second) {
      throw Error(Errc::kOrderViolation, "worker " + std::to_string(res.worker_id) +
                                             " reported order " + std::to_string(res.order) +
                                             " twice");
    }
  }
  for (const auto& [worker, seen] : orders) {
    // A set of size n is a prefix exactly when its largest element is n-1.
    if (*seen.rbegin() + 1 != seen.size()) {
      throw Error(Errc::kOrderViolation, "worker " + std::to_string(worker) +
                                             " skipped a sub-task before order " +
                                             std::to_string(*seen.rbegin()));
    }
  }
}

ResponseSet CanonicalOrder(ResponseSet responses) {
  std::sort(responses.begin(), responses.end(), [](const auto& lhs, const auto& rhs) {
    return std::tie(lhs.worker_id, lhs.order) < std::tie(rhs.worker_id, rhs.order);
  });
  return responses;
}

FieldMatrix BuildInterpolationMatrix(const ResponseSet& responses, const MonomialSupport& support,
                                     const PrimeField& field, std::size_t m) {
  CheckPrefixProperty(responses, m);
  const ResponseSet sorted = CanonicalOrder(responses);
  FieldMatrix out(sorted.size(), support.size());
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto row = DerivativeRow(support, sorted[i].point, sorted[i].order, field);
    std::copy(row.begin(), row.end(), out.row(i).begin());
  }
  return out;
}

DecodedProduct Decode(const ResponseSet& responses, const SchemeParams& p) {
  p.Validate();
  const PrimeField field = p.field();
  const std::size_t threshold = RecoveryThreshold(p);
  CheckPrefixProperty(responses, p.m);
  if (responses.size() < threshold) {
    throw Error(Errc::kNotEnoughResponses, "have " + std::to_string(responses.size()) +
                                               " responses, need " + std::to_string(threshold));
  }
  ResponseSet chosen = CanonicalOrder(responses);
  chosen.resize(threshold);

  const std::size_t rows = chosen.front().product.rows();
  const std::size_t cols = chosen.front().product.cols();
  FieldMatrix rhs(threshold, rows * cols);
  for (std::size_t i = 0; i < threshold; ++i) {
    const FieldMatrix& prod = chosen[i].product;
    if (prod.rows() != rows || prod.cols() != cols) {
      throw Error(Errc::kDimensionMismatch, "responses carry products of different shapes");
    }
    std::copy(prod.data().begin(), prod.data().end(), rhs.row(i).begin());
  }

  const MonomialSupport support = BuildSupport(p);
  const FieldMatrix interp = BuildInterpolationMatrix(chosen, support, field, p.m);
  auto coeffs = SolveLinear(interp, rhs, field);
  if (!coeffs) {
    throw Error(Errc::kDecodeSingular, "interpolation matrix is singular for these points");
  }

  // Only A_k B_l lands on x^k y^l with k < K, so these coefficients are
  // exactly the wanted blocks.
  DecodedProduct out;
  out.blocks.resize(p.K);
  std::vector<FieldMatrix> block_rows;
  for (std::size_t k = 0; k < p.K; ++k) {
    for (std::size_t l = 0; l < p.L; ++l) {
      const std::size_t idx = support.index_of({k, l});
      std::vector<FieldElement> entries(coeffs->row(idx).begin(), coeffs->row(idx).end());
      out.blocks[k].emplace_back(rows, cols, std::move(entries));
    }
    block_rows.push_back(AssembleCols(out.blocks[k]));
  }
  out.assembled = AssembleRows(block_rows);
  return out;
}

ResponseSet RandomPrefixSubset(const ResponseSet& all, std::size_t count, std::mt19937_64& rng) {
  if (count > all.size()) {
    throw Error(Errc::kNotEnoughResponses, "cannot pick " + std::to_string(count) + " of " +
                                               std::to_string(all.size()) + " results");
  }
  std::map<std::size_t, std::vector<const PartialResult*>> by_worker;
  const ResponseSet sorted = CanonicalOrder(all);
  for (const auto& res : sorted) by_worker[res.worker_id].push_back(&res);

  std::vector<std::pair<std::vector<const PartialResult*>*, std::size_t>> open;
  for (auto& [id, list] : by_worker) open.push_back({&list, 0});

  ResponseSet out;
  out.reserve(count);
  while (out.size() < count) {
    std::uniform_int_distribution<std::size_t> pick(0, open.size() - 1);
    const std::size_t i = pick(rng);
    auto& [list, next] = open[i];
    out.push_back(*(*list)[next]);
    if (++next == list->size()) {
      open[i] = open.back();
      open.pop_back();
    }
  }
  return out;
}

}  // namespace bipoly
