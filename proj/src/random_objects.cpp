#include "extcvx/random_objects.hpp"

#include <algorithm>
#include <cmath>

namespace extcvx {

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

double eighths(std::mt19937_64& rng, double bound) {
  const int n = static_cast<int>(std::floor(bound * 8.0));
  return uniform_int(rng, -n, n) / 8.0;
}

std::vector<double> distinct_sorted_eighths(std::mt19937_64& rng, int k, double span) {
  std::vector<double> xs;
  while (static_cast<int>(xs.size()) < k) {
    double x = eighths(rng, span);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  std::sort(xs.begin(), xs.end());
  return xs;
}

UpFunction build_pl(std::mt19937_64& rng, const PLOptions& o, bool sorted_slopes) {
  const int k = uniform_int(rng, 1, o.max_breaks);
  const std::vector<double> xs = distinct_sorted_eighths(rng, k, o.span);
  std::vector<double> slopes(k + 1);
  for (auto& s : slopes) s = eighths(rng, o.max_slope);
  if (sorted_slopes) std::sort(slopes.begin(), slopes.end());
  std::vector<Breakpoint> breaks;
  double v = eighths(rng, 8.0);
  for (int i = 0; i < k; ++i) {
    if (i > 0) v += slopes[i] * (xs[i] - xs[i - 1]);
    breaks.push_back({xs[i], v});
  }
  std::optional<double> sl, sr;
  if (coin(rng, o.tail_prob)) sl = slopes.front();
  if (coin(rng, o.tail_prob)) sr = slopes.back();
  return UpFunction::pl(std::move(breaks), sl, sr);
}

}  // namespace

double random_dyadic(std::mt19937_64& rng, int max_num) {
  return std::ldexp(static_cast<double>(uniform_int(rng, -max_num, max_num)), -uniform_int(rng, 0, 6));
}

double random_ext_raw(std::mt19937_64& rng) {
  const int c = uniform_int(rng, 0, 7);
  if (c == 0) return kInf;
  if (c == 1) return -kInf;
  return coin(rng, 0.5) ? random_dyadic(rng) : uniform(rng, -1000.0, 1000.0);
}

UpFunction random_convex_pl(std::mt19937_64& rng, const PLOptions& o) { return build_pl(rng, o, true); }

UpFunction random_pl(std::mt19937_64& rng, const PLOptions& o) { return build_pl(rng, o, false); }

UpFunction random_closed_convex(std::mt19937_64& rng, const PLOptions& o) {
  const int c = uniform_int(rng, 0, 9);
  if (c == 0) return UpFunction::const_top();
  if (c == 1) return UpFunction::const_bottom();
  if (c <= 4) {
    double a = eighths(rng, o.span), b = eighths(rng, o.span);
    if (a > b) std::swap(a, b);
    if (coin(rng, 0.3)) a = -kInf;
    if (coin(rng, 0.3)) b = kInf;
    return UpFunction::split(Interval{a, b});
  }
  return random_convex_pl(rng, o);
}

DualElem random_dual(std::mt19937_64& rng, double hat_prob) {
  if (coin(rng, hat_prob)) {
    const int c = uniform_int(rng, 0, 3);
    if (c == 0) return DualElem::hat(0.0);
    return DualElem::hat(coin(rng, 0.5) ? eighths(rng, 3.0) : uniform(rng, -3.0, 3.0));
  }
  return DualElem::proper(coin(rng, 0.5) ? eighths(rng, 5.0) : uniform(rng, -5.0, 5.0));
}

std::vector<Cone2> standard_cones() {
  return {Cone2::generated({Vec2(1.0, 0.0), Vec2(0.0, 1.0)}), Cone2::generated({Vec2(0.0, 1.0)}), Cone2()};
}

UpSet random_upset(std::mt19937_64& rng, const Cone2& cone) {
  const int c = uniform_int(rng, 0, 19);
  if (c == 0) return UpSet::empty(cone);
  if (c == 1) return UpSet::whole(cone);
  std::vector<Vec2> pts;
  const int k = uniform_int(rng, 1, 4);
  for (int i = 0; i < k; ++i) pts.push_back(Vec2(eighths(rng, 5.0), eighths(rng, 5.0)));
  std::vector<Vec2> rays;
  if (coin(rng, 0.25)) {
    // an extra recession direction inside the dual halfplane of some z*
    const Vec2 zs = random_dual_direction(rng, cone);
    const double ang = uniform(rng, 0.0, 2.0 * M_PI);
    Vec2 d(std::cos(ang), std::sin(ang));
    if (zs.norm() > 0.0 && d.dot(zs) > 0.0) d = -d;
    rays.push_back(d);
  }
  return UpSet::make(ConvexPoly2::from_v(pts, rays), cone);
}

SetValuedFn random_svfn(std::mt19937_64& rng, const Cone2& cone, bool bounded) {
  std::vector<Vec3> pts;
  const int k = uniform_int(rng, 4, 7);
  for (int i = 0; i < k; ++i) pts.push_back(Vec3(eighths(rng, 3.0), eighths(rng, 3.0), eighths(rng, 3.0)));
  std::vector<Vec3> rays;
  if (!bounded && coin(rng, 0.5)) rays.push_back(Vec3(coin(rng, 0.5) ? 1.0 : -1.0, eighths(rng, 1.0), eighths(rng, 1.0)));
  return SetValuedFn({Polyhedron3::from_v(pts, rays)}, cone);
}

Vec2 random_dual_direction(std::mt19937_64& rng, const Cone2& cone) {
  const Cone2 dual = dual_cone(cone);
  if (dual.poly().is_whole()) {
    const double ang = uniform(rng, 0.0, 2.0 * M_PI);
    return Vec2(std::cos(ang), std::sin(ang));
  }
  Vec2 z = Vec2::Zero();
  for (const auto& g : dual.generators()) z += uniform(rng, 0.0, 1.0) * g;
  return z;
}

}  // namespace extcvx
