#pragma once

#include <optional>
#include <random>
#include <string>
#include <type_traits>
#include <variant>
#include <vector>

#include "extcvx/extreal.hpp"
#include "extcvx/interval.hpp"

namespace extcvx {

struct Breakpoint {
  double x = 0.0;
  double v = 0.0;
};

/// Piecewise-linear data: linear interpolation between breakpoints and
/// linear extrapolation with the given end slopes. A missing end slope means
/// the domain stops at the corresponding end breakpoint.
struct PLData {
  std::vector<Breakpoint> breaks;
  std::optional<double> slope_left;
  std::optional<double> slope_right;

  Interval domain() const;
  /// Slopes of the finite segments, breaks.size() - 1 entries.
  std::vector<double> segment_slopes() const;
};

struct SplitData {
  Interval dom;
};
struct ConstTopData {};
struct ConstBottomData {};

/// An extended-real function of one real variable into the image space
/// `Space`.
///
/// For UpSpace the PL variant is +inf off its domain and the split variant is
/// -inf on `dom` and +inf elsewhere. For DownSpace the roles of the two
/// infinities are exchanged: PL is -inf off its domain, split is +inf on
/// `dom` and -inf elsewhere. In both cases `dom(f)` is the set where f is
/// not the "off" value, i.e. {f < +inf} for UpSpace and {f > -inf} for
/// DownSpace.
template <class Space>
class ScalarFunction {
 public:
  using Value = ExtReal<Space>;
  using Variant = std::variant<PLData, SplitData, ConstTopData, ConstBottomData>;

  ScalarFunction() : data_(ConstTopData{}) {}

  /// Validates the data (strictly increasing finite x, finite values and
  /// slopes) and removes redundant collinear breakpoints. Throws
  /// std::invalid_argument on bad data.
  static ScalarFunction pl(std::vector<Breakpoint> breaks, std::optional<double> slope_left,
                           std::optional<double> slope_right);
  /// Split function on a closed interval, canonicalized to a constant when
  /// the interval is empty or the whole line.
  static ScalarFunction split(Interval dom);
  static ScalarFunction const_top() { return ScalarFunction(ConstTopData{}); }
  static ScalarFunction const_bottom() { return ScalarFunction(ConstBottomData{}); }

  const Variant& data() const { return data_; }
  bool is_pl() const { return std::holds_alternative<PLData>(data_); }
  bool is_split() const { return std::holds_alternative<SplitData>(data_); }
  bool is_top() const { return std::holds_alternative<ConstTopData>(data_); }
  bool is_bottom() const { return std::holds_alternative<ConstBottomData>(data_); }
  const PLData& as_pl() const { return std::get<PLData>(data_); }
  const SplitData& as_split() const { return std::get<SplitData>(data_); }

  Value operator()(double x) const;

 private:
  explicit ScalarFunction(Variant d) : data_(std::move(d)) {}
  Variant data_;
};

using UpFunction = ScalarFunction<UpSpace>;
using DownFunction = ScalarFunction<DownSpace>;

extern template class ScalarFunction<UpSpace>;
extern template class ScalarFunction<DownSpace>;

UpReal eval(const UpFunction& f, double x);
DownReal eval(const DownFunction& f, double x);

/// {x : f(x) < +inf} for UpFunction, {x : f(x) > -inf} for DownFunction.
Interval dom(const UpFunction& f);
Interval dom(const DownFunction& f);

/// (x, r) in epi f, i.e. f(x) <= r. `r` must be finite.
bool epi_contains(const UpFunction& f, double x, double r);
/// (x, r) in hypo h, i.e. r <= h(x). `r` must be finite.
bool hypo_contains(const DownFunction& h, double x, double r);

/// Structural convexity test: nondecreasing slopes for PL data; the split
/// and constant variants are always convex.
bool is_convex(const UpFunction& f);
/// Structural concavity test (nonincreasing slopes).
bool is_concave(const DownFunction& h);
/// Definitional check on `samples` random triples (x1, x2, t) using
/// inf-addition; false as soon as one triple violates the inequality.
bool is_convex_sampled(const UpFunction& f, std::mt19937_64& rng, int samples);

/// Closed convex hull.
UpFunction closure_hull(const UpFunction& f);

/// Pointwise multiplication by -1.
DownFunction negate_fn(const UpFunction& f);
UpFunction negate_fn(const DownFunction& h);

/// f restricted to the interval `d` (+inf off `d`).
UpFunction restrict(const UpFunction& f, const Interval& d);

/// Structural comparison with tolerance: same variant, domains and tail
/// slopes within `tol`, values agreeing at every breakpoint of either side.
bool approx_equal(const UpFunction& f, const UpFunction& g, double tol);

std::string describe(const UpFunction& f);

// ---------------------------------------------------------------------------
// Inf-dual

enum class DualKind { Proper, Hat };

/// Element of the inf-dual: a proper linear functional x -> a*x or its
/// improper inf-extension hat(a). The raw slope is kept; equality and
/// hashing use the canonical form, where a hat slope is replaced by its sign.
struct DualElem {
  DualKind kind = DualKind::Proper;
  double slope = 0.0;

  static DualElem proper(double a) { return {DualKind::Proper, a}; }
  static DualElem hat(double a) { return {DualKind::Hat, a}; }

  bool is_hat() const { return kind == DualKind::Hat; }
  DualElem canonical() const;
  friend bool operator==(const DualElem& a, const DualElem& b);
};

/// The affine element xi_r.
struct AffineDual {
  DualElem xi;
  double r = 0.0;

  /// For hats, (a, r) scaled by 1/|a| so the slope is -1, 0 or +1.
  AffineDual canonical() const;
};

/// a*x - r for proper xi; for hats -inf where a*x - r <= 0 and +inf elsewhere.
UpReal affine_eval(const AffineDual& d, double x);
inline UpReal dual_eval(const DualElem& xi, double x) { return affine_eval({xi, 0.0}, x); }

DualElem dual_add(const DualElem& xi, const DualElem& eta);
/// t * xi for t >= 0.
DualElem dual_scale(double t, const DualElem& xi);

/// sup over r1 + r2 = r of xi_{r1}(x1) (+sup) xi_{r2}(x2), evaluated in
/// closed form.
DownReal affine_split_sup(const DualElem& xi, double r, double x1, double x2);
/// sup over r1 + r2 = r of xi_{r1}(x1) (-inf) xi_{-r2}(x2), in closed form.
UpReal affine_split_sup_diff(const DualElem& xi, double r, double x1, double x2);

std::string to_string(const DualElem& xi);
/// Parses "proper:<a>" or "hat:<a>"; throws std::invalid_argument.
DualElem parse_dual(const std::string& s);

}  // namespace extcvx
