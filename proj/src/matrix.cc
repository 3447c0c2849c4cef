#include "bipoly/matrix.h"

#include <algorithm>
#include <string>
#include <utility>

#include "bipoly/error.h"

namespace bipoly {

namespace {

std::string Dims(const FieldMatrix& m) {
  return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

void RequireSameShape(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(Errc::kDimensionMismatch, "shapes " + Dims(a) + " and " + Dims(b) + " differ");
  }
}

// Reduces m in place to reduced row echelon form, applying the same row
// operations to rhs (which may have zero columns). Returns the pivot columns.
std::vector<std::size_t> Eliminate(FieldMatrix& m, FieldMatrix& rhs, const PrimeField& field) {
  std::vector<std::size_t> pivots;
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < m.rows(); ++col) {
    std::size_t found = pivot_row;
    while (found < m.rows() && m(found, col).value == 0) ++found;
    if (found == m.rows()) continue;
    if (found != pivot_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(found, c), m(pivot_row, c));
      for (std::size_t c = 0; c < rhs.cols(); ++c) std::swap(rhs(found, c), rhs(pivot_row, c));
    }
    const FieldElement inv = field.inv(m(pivot_row, col));
    for (std::size_t c = 0; c < m.cols(); ++c) m(pivot_row, c) = field.mul(m(pivot_row, c), inv);
    for (std::size_t c = 0; c < rhs.cols(); ++c) {
      rhs(pivot_row, c) = field.mul(rhs(pivot_row, c), inv);
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == pivot_row) continue;
      const FieldElement factor = m(r, col);
      if (factor.value == 0) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m(r, c) = field.sub(m(r, c), field.mul(factor, m(pivot_row, c)));
      }
      for (std::size_t c = 0; c < rhs.cols(); ++c) {
        rhs(r, c) = field.sub(rhs(r, c), field.mul(factor, rhs(pivot_row, c)));
      }
    }
    pivots.push_back(col);
    ++pivot_row;
  }
  return pivots;
}

}  // namespace

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::vector<FieldElement> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols) {
    throw Error(Errc::kDimensionMismatch,
                "data length " + std::to_string(data_.size()) + " does not match " +
                    std::to_string(rows) + "x" + std::to_string(cols));
  }
}

FieldMatrix FieldMatrix::Identity(std::size_t n) {
  FieldMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = FieldElement{1};
  return m;
}

FieldMatrix FieldMatrix::FromValues(std::size_t rows, std::size_t cols,
                                    const std::vector<u64>& values, const PrimeField& field) {
  std::vector<FieldElement> data;
  data.reserve(values.size());
  for (u64 v : values) data.push_back(field.from_uint(v));
  return FieldMatrix(rows, cols, std::move(data));
}

FieldMatrix FieldMatrix::Random(std::size_t rows, std::size_t cols, const PrimeField& field,
                                std::mt19937_64& rng) {
  std::uniform_int_distribution<u64> dist(0, field.order() - 1);
  FieldMatrix m(rows, cols);
  for (auto& e : m.data_) e = FieldElement{dist(rng)};
  return m;
}

FieldMatrix FieldMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                               std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_) {
    throw Error(Errc::kDimensionMismatch, "block out of range for " + Dims(*this));
  }
  FieldMatrix out(nrows, ncols);
  for (std::size_t r = 0; r < nrows; ++r) {
    for (std::size_t c = 0; c < ncols; ++c) out(r, c) = (*this)(row0 + r, col0 + c);
  }
  return out;
}

void FieldMatrix::set_block(std::size_t row0, std::size_t col0, const FieldMatrix& src) {
  if (row0 + src.rows() > rows_ || col0 + src.cols() > cols_) {
    throw Error(Errc::kDimensionMismatch, "block " + Dims(src) + " does not fit " + Dims(*this));
  }
  for (std::size_t r = 0; r < src.rows(); ++r) {
    for (std::size_t c = 0; c < src.cols(); ++c) (*this)(row0 + r, col0 + c) = src(r, c);
  }
}

FieldMatrix Add(const FieldMatrix& a, const FieldMatrix& b, const PrimeField& field) {
  RequireSameShape(a, b);
  FieldMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = field.add(a(r, c), b(r, c));
  }
  return out;
}

FieldMatrix Scale(const FieldMatrix& a, FieldElement s, const PrimeField& field) {
  FieldMatrix out = a;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = field.mul(a(r, c), s);
  }
  return out;
}

void AddScaled(FieldMatrix& acc, const FieldMatrix& a, FieldElement s, const PrimeField& field) {
  RequireSameShape(acc, a);
  if (s.value == 0) return;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      acc(r, c) = field.add(acc(r, c), field.mul(a(r, c), s));
    }
  }
}

FieldMatrix MatMul(const FieldMatrix& a, const FieldMatrix& b, const PrimeField& field) {
  if (a.cols() != b.rows()) {
    throw Error(Errc::kDimensionMismatch, "cannot multiply " + Dims(a) + " by " + Dims(b));
  }
  const u64 q = field.order();
  FieldMatrix out(a.rows(), b.cols());
  std::vector<u128> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const u64 aik = a(i, k).value;
      if (aik == 0) continue;
      const auto brow = b.row(k);
      // Each product is below 2^124, so reduce before accumulating.
      for (std::size_t j = 0; j < b.cols(); ++j) {
        acc[j] += (static_cast<u128>(aik) * brow[j].value) % q;
      }
    }
    for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = FieldElement{static_cast<u64>(acc[j] % q)};
  }
  return out;
}

std::optional<FieldMatrix> SolveLinear(const FieldMatrix& m, const FieldMatrix& rhs,
                                       const PrimeField& field) {
  if (m.rows() != m.cols()) {
    throw Error(Errc::kDimensionMismatch, "coefficient matrix " + Dims(m) + " is not square");
  }
  if (rhs.rows() != m.rows()) {
    throw Error(Errc::kDimensionMismatch,
                "right-hand side " + Dims(rhs) + " does not match " + Dims(m));
  }
  FieldMatrix work = m;
  FieldMatrix x = rhs;
  const auto pivots = Eliminate(work, x, field);
  if (pivots.size() < m.rows()) return std::nullopt;
  return x;
}

std::size_t Rank(const FieldMatrix& m, const PrimeField& field) {
  FieldMatrix work = m;
  FieldMatrix none(m.rows(), 0);
  return Eliminate(work, none, field).size();
}

}  // namespace bipoly
