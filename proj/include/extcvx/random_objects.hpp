#pragma once

#include <random>

#include "extcvx/extreal.hpp"
#include "extcvx/geometry.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"

namespace extcvx {

/// Finite dyadic value n / 2^k with |n| <= max_num and 0 <= k <= 6.
double random_dyadic(std::mt19937_64& rng, int max_num = 4096);

/// Extended real that is Top or Bottom with probability 1/8 each; finite
/// values are dyadic or uniform on [-1000, 1000] with equal probability.
double random_ext_raw(std::mt19937_64& rng);
template <class Space>
ExtReal<Space> random_ext(std::mt19937_64& rng) {
  return ExtReal<Space>(random_ext_raw(rng));
}

struct PLOptions {
  int max_breaks = 6;
  /// Breakpoints are multiples of 1/8 in [-span, span].
  double span = 10.0;
  /// Slopes are multiples of 1/8 in [-max_slope, max_slope].
  double max_slope = 4.0;
  /// Probability that each tail is present.
  double tail_prob = 0.75;
};

/// Convex piecewise-linear function with dyadic breakpoints, values and
/// slopes.
UpFunction random_convex_pl(std::mt19937_64& rng, const PLOptions& o = {});
/// Piecewise-linear function with unsorted segment slopes.
UpFunction random_pl(std::mt19937_64& rng, const PLOptions& o = {});
/// Closed convex function: PL, split on a random closed interval, or one of
/// the two constants.
UpFunction random_closed_convex(std::mt19937_64& rng, const PLOptions& o = {});

DualElem random_dual(std::mt19937_64& rng, double hat_prob = 0.3);

/// The cones used by the set-valued suites: the nonnegative quadrant, the
/// ray through (0, 1) and {0}.
std::vector<Cone2> standard_cones();

/// Random element of the +C lattice: the cone closure of 1-4 random points
/// and an occasional extra ray; empty or the whole plane with probability
/// 1/20 each.
UpSet random_upset(std::mt19937_64& rng, const Cone2& cone);

/// Random set-valued function whose graph is the convex hull of 4-7 random
/// points of [-3, 3]^3 closed under {0} x C. With `bounded` false, an
/// x-direction ray is added with probability 1/2.
SetValuedFn random_svfn(std::mt19937_64& rng, const Cone2& cone, bool bounded = true);

/// Uniform element of the dual cone (a combination of its generators), or
/// zero when the dual cone is {0}.
Vec2 random_dual_direction(std::mt19937_64& rng, const Cone2& cone);

}  // namespace extcvx
