#pragma once

// Bounding curves of F anchored at an evaluated point (k0, F(k0)).
//
// Because 1/k^2 <= F'(k) <= 1/k^2 + C2, integrating from k0 gives
//   lower curve  F_L(k) = F(k0) + 1/k0 - 1/k
//   upper curve  F_U(k) = C2 k - 1/k + F(k0) - C2 k0 + 1/k0
// and the root of F lies between the k-axis crossings of the two curves.

#include <algorithm>
#include <cmath>
#include <string>

#include "weibull_bd/error.hpp"
#include "weibull_bd/model.hpp"

namespace weibull_bd {

struct Anchor {
  double k0;
  double f0;
};

/// Closed interval [lo, hi] known to contain the root of F.
struct Bracket {
  double lo;
  double hi;

  double width() const noexcept { return hi - lo; }
  double midpoint() const noexcept { return lo + 0.5 * (hi - lo); }
  bool contains(double k) const noexcept { return lo <= k && k <= hi; }

  friend bool operator==(const Bracket&, const Bracket&) = default;
};

inline Anchor make_anchor(const Sample& sample, double k0) { return {k0, estimating_fn(sample, k0)}; }

/// Crossing of F_L with the k axis: 1 / (f0 + 1/k0).
inline double lower_curve_root(const Anchor& anchor) {
  const double denom = anchor.f0 + 1.0 / anchor.k0;
  if (!(anchor.k0 > 0.0) || !(denom > 0.0)) {
    throw Error(ErrorCode::DegenerateAnchor, "anchor violates F(k0) > -1/k0");
  }
  return 1.0 / denom;
}

/// Positive root of C2 k^2 + B k - 1 = 0 with B = f0 - C2 k0 + 1/k0.
inline double upper_curve_root(const Anchor& anchor, double c2) {
  if (!(c2 > 0.0)) throw Error(ErrorCode::DegenerateAnchor, "upper curve needs C2 > 0");
  if (!(anchor.k0 > 0.0)) throw Error(ErrorCode::DegenerateAnchor, "anchor k0 must be positive");
  const double b = anchor.f0 - c2 * anchor.k0 + 1.0 / anchor.k0;
  const double disc = std::sqrt(b * b + 4.0 * c2);
  // Pick the cancellation-free form depending on the sign of B.
  if (b < 0.0) return (-b + disc) / (2.0 * c2);
  return 2.0 / (b + disc);
}

inline Bracket bracket_from_anchor(const Anchor& anchor, double c2) {
  if (anchor.f0 == 0.0) return {anchor.k0, anchor.k0};
  const double k_lower = lower_curve_root(anchor);
  const double k_upper = upper_curve_root(anchor, c2);
  return {std::min(k_lower, k_upper), std::max(k_lower, k_upper)};
}

inline bool overlaps(const Bracket& a, const Bracket& b) noexcept {
  return std::max(a.lo, b.lo) <= std::min(a.hi, b.hi);
}

inline Bracket intersect(const Bracket& a, const Bracket& b) {
  const Bracket out{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  if (out.lo > out.hi) {
    throw Error(ErrorCode::EmptyIntersection, "brackets [" + std::to_string(a.lo) + ", " + std::to_string(a.hi) +
                                                  "] and [" + std::to_string(b.lo) + ", " + std::to_string(b.hi) +
                                                  "] do not overlap");
  }
  return out;
}

/// Starting point k0 = 1/C1. The upper band F(k) <= C1 - 1/k puts the root at
/// or to the right of it, so F(k0) <= 0.
inline Anchor initial_anchor(const Sample& sample) {
  if (!(sample.c1() > 0.0)) throw Error(ErrorCode::DegenerateSample, "C1 must be positive");
  return make_anchor(sample, 1.0 / sample.c1());
}

}  // namespace weibull_bd
