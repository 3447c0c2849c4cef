#include "bipoly/matrix.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "bipoly/error.h"
#include "gtest/gtest.h"

namespace bipoly {
namespace {

TEST(MatMul, HandExample) {
  const PrimeField f7(7);
  const auto a = FieldMatrix::FromValues(2, 2, {1, 2, 3, 4}, f7);
  const auto b = FieldMatrix::FromValues(2, 2, {5, 6, 0, 1}, f7);
  // [[5, 8], [15, 22]] mod 7
  EXPECT_EQ(MatMul(a, b, f7), FieldMatrix::FromValues(2, 2, {5, 1, 1, 1}, f7));
}

TEST(MatMul, IdentityAndZero) {
  const PrimeField f(101);
  std::mt19937_64 rng(1);
  const auto b = FieldMatrix::Random(4, 3, f, rng);
  EXPECT_EQ(MatMul(FieldMatrix::Identity(4), b, f), b);
  EXPECT_EQ(MatMul(FieldMatrix(2, 4), b, f), FieldMatrix(2, 3));
}

TEST(MatMul, DimensionMismatch) {
  const PrimeField f(101);
  try {
    MatMul(FieldMatrix(2, 3), FieldMatrix(2, 3), f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::kDimensionMismatch);
  }
}

TEST(MatMul, AssociativeAndDistributive) {
  const PrimeField f(2147483647);
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = FieldMatrix::Random(3, 4, f, rng);
    const auto b = FieldMatrix::Random(4, 5, f, rng);
    const auto b2 = FieldMatrix::Random(4, 5, f, rng);
    const auto c = FieldMatrix::Random(5, 2, f, rng);
    EXPECT_EQ(MatMul(MatMul(a, b, f), c, f), MatMul(a, MatMul(b, c, f), f));
    EXPECT_EQ(MatMul(a, Add(b, b2, f), f), Add(MatMul(a, b, f), MatMul(a, b2, f), f));
  }
}

TEST(SolveLinear, IdentityReturnsRhs) {
  const PrimeField f(101);
  std::mt19937_64 rng(3);
  const auto rhs = FieldMatrix::Random(4, 2, f, rng);
  EXPECT_EQ(SolveLinear(FieldMatrix::Identity(4), rhs, f), rhs);
}

TEST(SolveLinear, EqualRowsAreSingular) {
  const PrimeField f(101);
  const auto m = FieldMatrix::FromValues(3, 3, {1, 2, 3, 1, 2, 3, 4, 5, 7}, f);
  EXPECT_FALSE(SolveLinear(m, FieldMatrix(3, 1), f).has_value());
  EXPECT_EQ(Rank(m, f), 2u);
}

TEST(SolveLinear, RoundTripOnRandomInvertible) {
  const PrimeField f(101);
  std::mt19937_64 rng(4);
  int solved = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = FieldMatrix::Random(5, 5, f, rng);
    const auto x = FieldMatrix::Random(5, 3, f, rng);
    if (Rank(m, f) < 5) {
      EXPECT_FALSE(SolveLinear(m, MatMul(m, x, f), f).has_value());
      continue;
    }
    EXPECT_EQ(SolveLinear(m, MatMul(m, x, f), f), x);
    ++solved;
  }
  EXPECT_GT(solved, 150);
}

TEST(SolveLinear, RejectsNonSquare) {
  const PrimeField f(101);
  EXPECT_THROW(SolveLinear(FieldMatrix(2, 3), FieldMatrix(2, 1), f), Error);
  EXPECT_THROW(SolveLinear(FieldMatrix(2, 2), FieldMatrix(3, 1), f), Error);
}

TEST(Rank, InvariantUnderRowPermutation) {
  const PrimeField f(103);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    // Low-rank product so that rank deficiency actually occurs.
    const std::size_t inner = 1 + trial % 5;
    const auto m = MatMul(FieldMatrix::Random(6, inner, f, rng),
                          FieldMatrix::Random(inner, 6, f, rng), f);
    std::vector<std::size_t> perm(6);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    FieldMatrix permuted(6, 6);
    for (std::size_t r = 0; r < 6; ++r) permuted.set_block(r, 0, m.block(perm[r], 0, 1, 6));
    EXPECT_EQ(Rank(m, f), Rank(permuted, f));
    EXPECT_LE(Rank(m, f), inner);
  }
}

TEST(FieldMatrix, BlockRoundTrip) {
  const PrimeField f(101);
  std::mt19937_64 rng(6);
  const auto m = FieldMatrix::Random(4, 6, f, rng);
  FieldMatrix rebuilt(4, 6);
  rebuilt.set_block(0, 0, m.block(0, 0, 2, 6));
  rebuilt.set_block(2, 0, m.block(2, 0, 2, 6));
  EXPECT_EQ(rebuilt, m);
  EXPECT_THROW(m.block(3, 0, 2, 6), Error);
  EXPECT_THROW(FieldMatrix(2, 2, std::vector<FieldElement>(3)), Error);
}

}  // namespace
}  // namespace bipoly
