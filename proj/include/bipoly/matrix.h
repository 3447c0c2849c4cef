#pragma once

#include <cstddef>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "bipoly/field.h"

namespace bipoly {

// Dense row-major matrix over F_q. The matrix does not carry its field; every
// arithmetic routine takes the PrimeField explicitly.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  // Entries must already be canonical for the field they will be used with.
  FieldMatrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> data);

  static FieldMatrix Identity(std::size_t n);
  static FieldMatrix FromValues(std::size_t rows, std::size_t cols, const std::vector<u64>& values,
                                const PrimeField& field);
  static FieldMatrix Random(std::size_t rows, std::size_t cols, const PrimeField& field,
                            std::mt19937_64& rng);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return data_.empty(); }

  FieldElement& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const FieldElement> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> data() const noexcept { return data_; }

  // Copy of rows [row0, row0+nrows) x cols [col0, col0+ncols).
  FieldMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows, std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const FieldMatrix& src);

  friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

FieldMatrix Add(const FieldMatrix& a, const FieldMatrix& b, const PrimeField& field);
FieldMatrix Scale(const FieldMatrix& a, FieldElement s, const PrimeField& field);
// acc += s * a, in place.
void AddScaled(FieldMatrix& acc, const FieldMatrix& a, FieldElement s, const PrimeField& field);

// Throws Errc::kDimensionMismatch when a.cols() != b.rows().
FieldMatrix MatMul(const FieldMatrix& a, const FieldMatrix& b, const PrimeField& field);

// Solves M X = rhs for square M by Gauss-Jordan elimination. Returns nullopt
// when M is singular; that is an expected outcome, not an error.
std::optional<FieldMatrix> SolveLinear(const FieldMatrix& m, const FieldMatrix& rhs,
                                       const PrimeField& field);

std::size_t Rank(const FieldMatrix& m, const PrimeField& field);

}  // namespace bipoly
