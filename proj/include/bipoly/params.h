#pragma once

#include <cstddef>
#include <cstdint>

#include "bipoly/field.h"

namespace bipoly {

// Code parameters. K row blocks of A, L column blocks of B, collusion
// tolerance T, at most m sub-tasks per worker, N workers, field F_q.
struct SchemeParams {
  std::size_t K = 1;
  std::size_t L = 1;
  std::size_t T = 0;
  std::size_t m = 1;
  std::size_t N = 1;
  u64 q = 2;

  // Throws Errc::kInvalidParams naming the violated constraint:
  //   K, L, m, N >= 1; m <= L; q prime; q > 2K+2T-2; q > L-1; q >= N.
  void Validate() const;

  PrimeField field() const { return PrimeField(q); }

  // Largest x-degree (2K+2T-2) and y-degree (L-1) in A(x)B(x,y).
  std::size_t max_x_degree() const { return 2 * (K + T) - 2; }
  std::size_t max_y_degree() const { return L - 1; }
};

// One worker's evaluation point.
struct EvalPoint {
  FieldElement x;
  FieldElement y;

  friend constexpr auto operator<=>(const EvalPoint&, const EvalPoint&) = default;
};

}  // namespace bipoly
