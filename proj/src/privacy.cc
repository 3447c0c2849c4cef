#include "bipoly/privacy.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "bipoly/error.h"
#include "bipoly/polynomial.h"

namespace bipoly {

namespace {

MaskCoefficientMatrices BuildMaskMatrices(std::span<const EvalPoint> points,
                                          const SchemeParams& p) {
  const PrimeField field = p.field();
  const std::size_t n = points.size();
  MaskCoefficientMatrices out{FieldMatrix(n, p.T), FieldMatrix(n * p.m, p.T * p.m)};
  for (std::size_t i = 0; i < n; ++i) {
    const EvalPoint pt = points[i];
    for (std::size_t t = 0; t < p.T; ++t) {
      const FieldElement x_pow = field.pow(pt.x, p.K + t);
      out.ma(i, t) = x_pow;
      for (std::size_t o = 0; o < p.m; ++o) {
        for (std::size_t j = o; j < p.m; ++j) {
          out.mb(i * p.m + o, t * p.m + j) = field.mul(
              field.mul(field.falling_factorial(j, o), x_pow), field.pow(pt.y, j - o));
        }
      }
    }
  }
  return out;
}

// Counter over base-q digits, used to walk every assignment of a set of
// scalar variables.
class Odometer {
 public:
  Odometer(std::size_t digits, u64 base) : digits_(digits, 0), base_(base) {}
  const std::vector<u64>& digits() const { return digits_; }
  // Returns false after wrapping past the last assignment.
  bool next() {
    for (auto& d : digits_) {
      if (++d < base_) return true;
      d = 0;
    }
    return false;
  }

 private:
  std::vector<u64> digits_;
  u64 base_;
};

FieldMatrix Scalar(u64 v) { return FieldMatrix(1, 1, {FieldElement{v}}); }

// Observation of the coalition for scalar secrets/masks, flattened into one
// base-q index: for every point, A(x_i) then the m derivatives of B.
u64 ViewIndex(const SchemeParams& p, std::span<const EvalPoint> points,
              std::span<const FieldMatrix> parts_a, std::span<const FieldMatrix> parts_b,
              std::span<const FieldMatrix> masks_r,
              std::span<const std::vector<FieldMatrix>> masks_s) {
  const PrimeField field = p.field();
  u64 index = 0;
  for (const EvalPoint& pt : points) {
    index = index * p.q + EvalA(parts_a, masks_r, pt.x, field)(0, 0).value;
    for (std::size_t o = 0; o < p.m; ++o) {
      index = index * p.q + EvalDerivB(p, parts_b, masks_s, pt, o)(0, 0).value;
    }
  }
  return index;
}

u64 IntPow(u64 base, std::size_t exp) {
  u64 out = 1;
  for (std::size_t i = 0; i < exp; ++i) out *= base;
  return out;
}

std::size_t MaskVariables(const SchemeParams& p, MaskOverride o) {
  return (o.zero_r ? 0 : p.T) + (o.zero_s ? 0 : p.T * p.m);
}

bool WithinLimits(const SchemeParams& p, MaskOverride o) {
  if (p.K != 1 || p.L > 2 || p.q > 7 || p.T > 2 || p.m > p.L) return false;
  const u64 states = IntPow(p.q, p.K + p.L + MaskVariables(p, o));
  return states <= kMaxEnumeration;
}

}  // namespace

CollusionView MakeCollusionView(std::span<const WorkerShare> shares,
                                std::span<const std::size_t> subset, const SchemeParams& p) {
  if (subset.size() > p.T) {
    throw Error(Errc::kInvalidParams, "coalition of " + std::to_string(subset.size()) +
                                          " exceeds the collusion tolerance T=" +
                                          std::to_string(p.T));
  }
  CollusionView view;
  for (std::size_t id : subset) {
    auto it = std::find_if(shares.begin(), shares.end(),
                           [id](const WorkerShare& s) { return s.worker_id == id; });
    if (it == shares.end()) {
      throw Error(Errc::kInvalidParams, "unknown worker " + std::to_string(id));
    }
    view.subset.push_back(id);
    view.points.push_back(it->point);
    view.shares_a.push_back(it->share_a);
    view.shares_b.push_back(it->shares_b);
  }
  return view;
}

MaskCoefficientMatrices MaskMatrices(std::span<const EvalPoint> points, const SchemeParams& p) {
  if (points.size() != p.T) {
    throw Error(Errc::kInvalidParams, "mask matrices need exactly T=" + std::to_string(p.T) +
                                          " points, got " + std::to_string(points.size()));
  }
  std::set<EvalPoint> seen(points.begin(), points.end());
  if (seen.size() != points.size()) {
    throw Error(Errc::kDuplicatePoints, "coalition points are not pairwise distinct");
  }
  return BuildMaskMatrices(points, p);
}

PrivacyVerdict PerfectPrivacyCheck(std::span<const EvalPoint> points, const SchemeParams& p) {
  if (points.size() != p.T) {
    throw Error(Errc::kInvalidParams, "privacy check needs exactly T=" + std::to_string(p.T) +
                                          " points, got " + std::to_string(points.size()));
  }
  const PrimeField field = p.field();
  auto mats = BuildMaskMatrices(points, p);
  PrivacyVerdict verdict;
  verdict.rank_a = Rank(mats.ma, field);
  verdict.rank_b = Rank(mats.mb, field);
  if (verdict.rank_a < p.T) {
    verdict.witness_name = "MA";
    verdict.witness = std::move(mats.ma);
  } else if (verdict.rank_b < p.T * p.m) {
    verdict.witness_name = "MB";
    verdict.witness = std::move(mats.mb);
  } else {
    verdict.pass = true;
  }
  return verdict;
}

bool IsEnumerable(const SchemeParams& p) { return WithinLimits(p, {}); }

double ExhaustiveMutualInformation(const SchemeParams& p, std::span<const EvalPoint> points,
                                   MaskOverride override_masks) {
  p.Validate();
  if (!WithinLimits(p, override_masks)) {
    throw Error(Errc::kTooLargeToEnumerate,
                "exhaustive check needs K=1, L<=2, T<=2, q<=7 and at most 2^22 states");
  }
  const u64 q = p.q;
  const std::size_t view_digits = points.size() * (1 + p.m);
  const u64 view_space = IntPow(q, view_digits);
  const std::size_t mask_vars = MaskVariables(p, override_masks);

  // The encoder is linear in (secrets, masks), so each view is the sum of a
  // secret-only and a mask-only view computed by the real encoder. Sums are
  // taken digit-wise mod q.
  auto views_for = [&](std::size_t vars, auto&& assign) {
    std::vector<std::vector<u64>> out;
    Odometer od(vars, q);
    do {
      std::vector<FieldMatrix> a(p.K, Scalar(0)), b(p.L, Scalar(0)), r(p.T, Scalar(0));
      std::vector<std::vector<FieldMatrix>> s(p.T, std::vector<FieldMatrix>(p.m, Scalar(0)));
      assign(od.digits(), a, b, r, s);
      u64 index = ViewIndex(p, points, a, b, r, s);
      std::vector<u64> digits(view_digits);
      for (std::size_t d = view_digits; d-- > 0;) {
        digits[d] = index % q;
        index /= q;
      }
      out.push_back(std::move(digits));
    } while (od.next());
    return out;
  };

  const auto secret_views =
      views_for(p.K + p.L, [&](const std::vector<u64>& v, auto& a, auto& b, auto&, auto&) {
        for (std::size_t k = 0; k < p.K; ++k) a[k] = Scalar(v[k]);
        for (std::size_t l = 0; l < p.L; ++l) b[l] = Scalar(v[p.K + l]);
      });
  const auto mask_views =
      views_for(mask_vars, [&](const std::vector<u64>& v, auto&, auto&, auto& r, auto& s) {
        std::size_t next = 0;
        if (!override_masks.zero_r) {
          for (std::size_t t = 0; t < p.T; ++t) r[t] = Scalar(v[next++]);
        }
        if (!override_masks.zero_s) {
          for (std::size_t t = 0; t < p.T; ++t) {
            for (std::size_t j = 0; j < p.m; ++j) s[t][j] = Scalar(v[next++]);
          }
        }
      });

  auto combined = [&](const std::vector<u64>& sv, const std::vector<u64>& mv) {
    u64 index = 0;
    for (std::size_t d = 0; d < view_digits; ++d) index = index * q + (sv[d] + mv[d]) % q;
    return index;
  };

  std::vector<u64> view_counts(view_space, 0);
  for (const auto& sv : secret_views) {
    for (const auto& mv : mask_views) ++view_counts[combined(sv, mv)];
  }

  // I(S;V) = sum p(s,v) log2(p(s,v) / (p(s) p(v))), with the ratio kept as
  // exact integers so that independence yields exactly zero.
  const u64 total = static_cast<u64>(secret_views.size()) * mask_views.size();
  const u64 per_secret = mask_views.size();
  double mi = 0.0;
  std::vector<u64> joint;
  for (const auto& sv : secret_views) {
    joint.clear();
    for (const auto& mv : mask_views) joint.push_back(combined(sv, mv));
    std::sort(joint.begin(), joint.end());
    for (std::size_t i = 0; i < joint.size();) {
      std::size_t j = i;
      while (j < joint.size() && joint[j] == joint[i]) ++j;
      const u64 c_sv = j - i;
      const u64 num = c_sv * total;
      const u64 den = per_secret * view_counts[joint[i]];
      if (num != den) {
        mi += static_cast<double>(c_sv) / static_cast<double>(total) *
              std::log2(static_cast<double>(num) / static_cast<double>(den));
      }
      i = j;
    }
  }
  return mi;
}

}  // namespace bipoly
