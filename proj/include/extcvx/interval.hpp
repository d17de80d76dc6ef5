#pragma once

#include <algorithm>
#include <limits>
#include <string>

namespace extcvx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Closed interval [lo, hi] of the real line; lo may be -inf and hi may be
/// +inf (meaning the interval is unbounded on that side). Empty iff lo > hi.
struct Interval {
  double lo = kInf;
  double hi = -kInf;

  static constexpr Interval empty() { return {kInf, -kInf}; }
  static constexpr Interval all() { return {-kInf, kInf}; }
  static constexpr Interval point(double x) { return {x, x}; }

  constexpr bool is_empty() const { return lo > hi; }
  constexpr bool is_all() const { return lo == -kInf && hi == kInf; }
  constexpr bool contains(double x) const { return lo <= x && x <= hi; }
  constexpr bool contains(const Interval& o) const {
    return o.is_empty() || (lo <= o.lo && o.hi <= hi);
  }

  friend constexpr bool operator==(const Interval& a, const Interval& b) {
    if (a.is_empty() || b.is_empty()) return a.is_empty() && b.is_empty();
    return a.lo == b.lo && a.hi == b.hi;
  }
};

inline Interval intersect(const Interval& a, const Interval& b) {
  Interval r{std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
  return r.is_empty() ? Interval::empty() : r;
}

/// Minkowski sum; empty if either operand is empty.
inline Interval minkowski(const Interval& a, const Interval& b) {
  if (a.is_empty() || b.is_empty()) return Interval::empty();
  return {a.lo + b.lo, a.hi + b.hi};
}

std::string to_string(const Interval& d);

}  // namespace extcvx
