#include "bipoly/polynomial.h"

#include <algorithm>
#include <string>

#include "bipoly/error.h"

namespace bipoly {

namespace {

[[noreturn]] void Invalid(const std::string& what) { throw Error(Errc::kInvalidParams, what); }

void RequireShape(const FieldMatrix& m, std::size_t rows, std::size_t cols, const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    throw Error(Errc::kDimensionMismatch,
                std::string(what) + " has shape " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", expected " + std::to_string(rows) + "x" +
                    std::to_string(cols));
  }
}

// acc <- acc * s + coeff * term
void HornerStep(FieldMatrix& acc, FieldElement s, const FieldMatrix& term, FieldElement coeff,
                const PrimeField& field) {
  acc = Scale(acc, s, field);
  AddScaled(acc, term, coeff, field);
}

}  // namespace

void SchemeParams::Validate() const {
  if (K == 0 || L == 0) Invalid("K and L must be positive");
  if (m == 0) Invalid("m must be positive");
  if (N == 0) Invalid("N must be positive");
  if (m > L) {
    Invalid("m <= L violated (m=" + std::to_string(m) + ", L=" + std::to_string(L) + ")");
  }
  if (q < 2 || !IsPrime(q) || q >= PrimeField::kMaxOrder) {
    Invalid("q=" + std::to_string(q) + " must be a prime below 2^62");
  }
  if (q <= max_x_degree()) {
    Invalid("q > 2K+2T-2 violated (q=" + std::to_string(q) +
            ", 2K+2T-2=" + std::to_string(max_x_degree()) + ")");
  }
  if (q <= max_y_degree()) {
    Invalid("q > L-1 violated (q=" + std::to_string(q) + ", L-1=" + std::to_string(L - 1) + ")");
  }
  if (q < N) {
    Invalid("q >= N violated (q=" + std::to_string(q) + ", N=" + std::to_string(N) + ")");
  }
}

std::size_t MonomialSupport::index_of(Monomial mono) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), mono);
  if (it == entries_.end() || *it != mono) return entries_.size();
  return static_cast<std::size_t>(it - entries_.begin());
}

MonomialSupport BuildSupport(const SchemeParams& p) {
  const std::size_t width = p.K + p.T;
  std::vector<Monomial> entries;
  entries.reserve(width * p.L + p.m * (width - 1));
  for (std::size_t dx = 0; dx < width; ++dx) {
    for (std::size_t dy = 0; dy < p.L; ++dy) entries.push_back({dx, dy});
  }
  for (std::size_t dx = width; dx <= 2 * width - 2; ++dx) {
    for (std::size_t dy = 0; dy < p.m; ++dy) entries.push_back({dx, dy});
  }
  std::sort(entries.begin(), entries.end());
  return MonomialSupport(std::move(entries));
}

FieldMatrix EvalA(std::span<const FieldMatrix> parts_a, std::span<const FieldMatrix> masks_r,
                  FieldElement x, const PrimeField& field) {
  if (parts_a.empty()) throw Error(Errc::kDimensionMismatch, "A needs at least one partition");
  const std::size_t rows = parts_a.front().rows();
  const std::size_t cols = parts_a.front().cols();
  for (const auto& a : parts_a) RequireShape(a, rows, cols, "A partition");
  for (const auto& r : masks_r) RequireShape(r, rows, cols, "mask R");

  // Coefficients in increasing degree: A_1..A_K, R_1..R_T.
  FieldMatrix acc(rows, cols);
  for (std::size_t i = masks_r.size(); i-- > 0;) HornerStep(acc, x, masks_r[i], field.one(), field);
  for (std::size_t i = parts_a.size(); i-- > 0;) HornerStep(acc, x, parts_a[i], field.one(), field);
  return acc;
}

FieldMatrix EvalDerivB(const SchemeParams& p, std::span<const FieldMatrix> parts_b,
                       std::span<const std::vector<FieldMatrix>> masks_s, EvalPoint point,
                       std::size_t order) {
  const PrimeField field = p.field();
  if (order >= p.m) {
    throw Error(Errc::kInvalidOrder, "derivative order " + std::to_string(order) +
                                         " must be below m=" + std::to_string(p.m));
  }
  if (parts_b.size() != p.L) {
    throw Error(Errc::kDimensionMismatch, "expected " + std::to_string(p.L) + " B partitions");
  }
  if (masks_s.size() != p.T) {
    throw Error(Errc::kDimensionMismatch, "expected " + std::to_string(p.T) + " rows of S masks");
  }
  const std::size_t rows = parts_b.front().rows();
  const std::size_t cols = parts_b.front().cols();
  for (const auto& b : parts_b) RequireShape(b, rows, cols, "B partition");
  for (const auto& mask_row : masks_s) {
    if (mask_row.size() != p.m) {
      throw Error(Errc::kDimensionMismatch, "each S mask row needs m entries");
    }
    for (const auto& s : mask_row) RequireShape(s, rows, cols, "mask S");
  }

  // d^o/dy^o of y^i is fall(i, o) y^(i-o); Horner over i >= o.
  FieldMatrix data(rows, cols);
  for (std::size_t i = p.L; i-- > order;) {
    HornerStep(data, point.y, parts_b[i], field.falling_factorial(i, order), field);
  }

  // sum_t x^(K+t) C_t, with C_t the differentiated y-polynomial of row t.
  FieldMatrix masked(rows, cols);
  for (std::size_t t = p.T; t-- > 0;) {
    FieldMatrix row_poly(rows, cols);
    for (std::size_t j = p.m; j-- > order;) {
      HornerStep(row_poly, point.y, masks_s[t][j], field.falling_factorial(j, order), field);
    }
    HornerStep(masked, point.x, row_poly, field.one(), field);
  }
  AddScaled(data, masked, field.pow(point.x, p.K), field);
  return data;
}

std::vector<FieldElement> DerivativeRow(const MonomialSupport& support, EvalPoint point,
                                        std::size_t order, const PrimeField& field) {
  std::vector<FieldElement> row;
  row.reserve(support.size());
  for (const Monomial& mono : support.entries()) {
    if (mono.dy < order) {
      row.push_back(field.zero());
      continue;
    }
    FieldElement v = field.falling_factorial(mono.dy, order);
    v = field.mul(v, field.pow(point.x, mono.dx));
    v = field.mul(v, field.pow(point.y, mono.dy - order));
    row.push_back(v);
  }
  return row;
}

u64 Xi(u64 a, u64 b) { return a * (a + 1) / 2 * (b + 1) + b * (b + 1) / 2 * (a + 1); }

u64 SupportDegreeSum(const MonomialSupport& support) {
  u64 total = 0;
  for (const Monomial& mono : support.entries()) total += mono.dx + mono.dy;
  return total;
}

}  // namespace bipoly
