#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "bipoly/matrix.h"
#include "bipoly/params.h"

namespace bipoly {

struct Monomial {
  std::size_t dx = 0;
  std::size_t dy = 0;

  friend constexpr auto operator<=>(const Monomial&, const Monomial&) = default;
};

// Monomials of A(x)B(x,y): the rectangle [0, K+T-1] x [0, L-1] plus the
// columns [K+T, 2K+2T-2] x [0, m-1], sorted lexicographically by (dx, dy).
class MonomialSupport {
 public:
  explicit MonomialSupport(std::vector<Monomial> entries) : entries_(std::move(entries)) {}

  std::span<const Monomial> entries() const noexcept { return entries_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const Monomial& operator[](std::size_t i) const { return entries_[i]; }

  // Column of monomial x^dx y^dy, or size() if absent.
  std::size_t index_of(Monomial mono) const;

 private:
  std::vector<Monomial> entries_;
};

MonomialSupport BuildSupport(const SchemeParams& p);

// Masked encoding polynomial A(x) = sum_k A_k x^(k-1) + sum_t R_t x^(K+t-1),
// evaluated by Horner's rule.
FieldMatrix EvalA(std::span<const FieldMatrix> parts_a, std::span<const FieldMatrix> masks_r,
                  FieldElement x, const PrimeField& field);

// The order-th formal y-derivative of
//   B(x,y) = sum_l B_l y^(l-1) + sum_t sum_j S_{t,j} x^(K+t-1) y^(j-1)
// evaluated at point. masks_s is a T x m grid (row t holds S_{t,1..m}).
FieldMatrix EvalDerivB(const SchemeParams& p, std::span<const FieldMatrix> parts_b,
                       std::span<const std::vector<FieldMatrix>> masks_s, EvalPoint point,
                       std::size_t order);

// Row of the interpolation matrix: the order-th y-derivative of every support
// monomial at point. Entry is fall(dy, order) x^dx y^(dy-order), or 0.
std::vector<FieldElement> DerivativeRow(const MonomialSupport& support, EvalPoint point,
                                        std::size_t order, const PrimeField& field);

// Sum of total degrees over the full rectangle [0,a] x [0,b].
u64 Xi(u64 a, u64 b);

// Sum of dx + dy over the support, by direct enumeration.
u64 SupportDegreeSum(const MonomialSupport& support);

}  // namespace bipoly
