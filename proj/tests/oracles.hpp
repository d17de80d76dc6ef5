#pragma once

// Brute-force reference computations. They use only point evaluation,
// polyhedron membership and intersection, never the closed forms under test.

#include <algorithm>
#include <cmath>
#include <optional>
#include <vector>

#include "extcvx/geometry.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"

namespace oracle {

using namespace extcvx;

/// Finite samples (x, g(x)) of g on a uniform grid; +inf points are dropped,
/// and `bottom` is set when some sample is -inf.
struct Samples {
  std::vector<double> x;
  std::vector<double> v;
  bool bottom = false;
};

inline Samples sample(const UpFunction& g, double lo, double hi, long n) {
  Samples s;
  s.x.reserve(n + 1);
  s.v.reserve(n + 1);
  for (long i = 0; i <= n; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n);
    const UpReal val = g(x);
    if (val.is_bottom()) s.bottom = true;
    if (!val.is_finite()) continue;
    s.x.push_back(x);
    s.v.push_back(val.value());
  }
  return s;
}

/// sup over the samples of a*x - r - g(x), classified as +inf when the
/// maximizer is the last (first) sample of an unbounded grid and the
/// objective is still increasing (decreasing) there. -inf when no sample is
/// finite.
inline double grid_conjugate(const Samples& s, double a, double r, bool open_left, bool open_right) {
  if (s.bottom) return kInf;
  if (s.x.empty()) return -kInf;
  const std::size_t n = s.x.size();
  double best = -kInf;
  std::size_t arg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double val = a * s.x[i] - s.v[i];
    if (val > best) best = val, arg = i;
  }
  constexpr double kRise = 1e-7;
  if (open_right && arg == n - 1 && n > 1 && (a * s.x[n - 1] - s.v[n - 1]) - (a * s.x[n - 2] - s.v[n - 2]) > kRise) return kInf;
  if (open_left && arg == 0 && n > 1 && (a * s.x[0] - s.v[0]) - (a * s.x[1] - s.v[1]) > kRise) return kInf;
  return best - r;
}

/// Lower convex hull of sample points (monotone chain), evaluated by linear
/// interpolation. Optional recession slopes extend the hull by a ray on
/// each side; without them it is +inf outside the sampled range. With
/// both slopes and slope_left > slope_right the hull is -inf.
class LowerHull {
 public:
  explicit LowerHull(const Samples& s, std::optional<double> slope_left = std::nullopt,
                     std::optional<double> slope_right = std::nullopt)
      : sl_(slope_left), sr_(slope_right) {
    if (sl_ && sr_ && *sl_ > *sr_) {
      bottom_ = true;
      return;
    }
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      while (h_.size() >= 2) {
        const auto& p = h_[h_.size() - 2];
        const auto& q = h_.back();
        const double cross = (q.first - p.first) * (s.v[i] - p.second) - (q.second - p.second) * (s.x[i] - p.first);
        if (cross > 0.0) break;
        h_.pop_back();
      }
      h_.push_back({s.x[i], s.v[i]});
    }
    auto slope = [](const auto& p, const auto& q) { return (q.second - p.second) / (q.first - p.first); };
    if (sr_)
      while (h_.size() >= 2 && slope(h_[h_.size() - 2], h_.back()) >= *sr_) h_.pop_back();
    if (sl_)
      while (h_.size() >= 2 && slope(h_[0], h_[1]) <= *sl_) h_.erase(h_.begin());
  }

  double operator()(double x) const {
    if (bottom_) return -kInf;
    if (h_.empty()) return kInf;
    if (x < h_.front().first) return sl_ ? h_.front().second + *sl_ * (x - h_.front().first) : kInf;
    if (x > h_.back().first) return sr_ ? h_.back().second + *sr_ * (x - h_.back().first) : kInf;
    auto it = std::lower_bound(h_.begin(), h_.end(), x, [](const auto& p, double v) { return p.first < v; });
    if (it == h_.begin()) return it->second;
    const auto& q = *it;
    const auto& p = *(it - 1);
    return p.second + (q.second - p.second) * (x - p.first) / (q.first - p.first);
  }

 private:
  std::optional<double> sl_, sr_;
  bool bottom_ = false;
  std::vector<std::pair<double, double>> h_;
};

/// The quotient (g(x0 + t x) -inf g(x0)) / t at t = 2^-20, after checking
/// that the quotients at t = 2^-k, k = 0..20, are nonincreasing as t
/// shrinks (up to the rounding of the two evaluations). Returns NaN when
/// they are not.
inline double finite_difference(const UpFunction& g, double x0, double x) {
  const UpReal g0 = g(x0);
  double prev = kInf, q = kInf;
  for (int k = 0; k <= 20; ++k) {
    const double t = std::ldexp(1.0, -k);
    const UpReal g1 = g(x0 + t * x);
    const UpReal d = idif(g1, g0);
    q = d.is_finite() ? d.value() / t : d.raw();
    double slack = 1e-9 * (1.0 + std::abs(prev));
    if (d.is_finite()) slack += 1e-13 * (1.0 + std::abs(g0.raw()) + std::abs(g1.raw())) / t;
    if (q > prev + slack) return std::nan("");
    prev = q;
  }
  return q;
}

/// {z : B + z is contained in A}, built as the intersection of A - b over the
/// points b of B, and empty when a ray of B does not recede in A.
inline ConvexPoly2 containment_difference(const ConvexPoly2& a, const ConvexPoly2& b) {
  if (b.is_empty()) return ConvexPoly2::whole();
  if (a.is_empty()) return ConvexPoly2::empty();
  for (const auto& d : b.rays())
    if (!a.recedes(d, 1e-9)) return ConvexPoly2::empty();
  ConvexPoly2 out = ConvexPoly2::whole();
  for (const auto& p : b.points()) out = intersect(out, a.translate(-p));
  return out;
}

/// Membership test for the containment definition at a single z.
inline bool contained_after_shift(const ConvexPoly2& a, const ConvexPoly2& b, const Vec2& z) {
  if (b.is_empty()) return true;
  if (a.is_empty()) return false;
  for (const auto& d : b.rays())
    if (!a.recedes(d, 1e-9)) return false;
  for (const auto& p : b.points())
    if (!a.contains(p + z, 1e-9)) return false;
  return true;
}

/// The conaffine value {z : xi_r(x) <= -z*.z} without the library helper.
inline ConvexPoly2 conaffine_set(const DualElem& xi, double r, const Vec2& zstar, double x) {
  const UpReal v = affine_eval({xi, r}, x);
  if (v.is_bottom()) return ConvexPoly2::whole();
  if (v.is_top()) return ConvexPoly2::empty();
  if (zstar.norm() == 0.0) return v.value() <= 0.0 ? ConvexPoly2::whole() : ConvexPoly2::empty();
  return ConvexPoly2::from_h({{zstar, -v.value()}});
}

/// Intersection over `xs` of S(x) minus g(x), with g(x) read from the graph
/// slice plus the cone.
inline ConvexPoly2 definitional_conjugate(const SetValuedFn& g, const DualElem& xi, double r, const Vec2& zstar,
                                          const std::vector<double>& xs) {
  ConvexPoly2 out = ConvexPoly2::whole();
  const ConvexPoly2 cone = g.cone().poly();
  for (double x : xs) {
    const ConvexPoly2 gx = minkowski(slice(g.hull(), x), cone);
    out = intersect(out, containment_difference(conaffine_set(xi, r, zstar, x), gx));
    if (out.is_empty()) break;
  }
  return out;
}

}  // namespace oracle
