#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>

namespace extcvx {

/// Tag for the image space (R-bar, inf-addition, scaling, <=). +inf dominates.
struct UpSpace {};
/// Tag for the image space (R-bar, sup-addition, scaling, <=). -inf dominates.
struct DownSpace {};

enum class Kind : std::uint8_t { Bottom, Finite, Top };

/// An element of the extended reals living in one of the two image spaces.
///
/// The two instantiations `UpReal` and `DownReal` share the order but carry
/// different additions, so they are distinct types. Crossing between them is
/// only possible through negation or the explicit `reinterpret_*` helpers.
/// Internally the value is a double where +/-infinity encode Top/Bottom; NaN
/// is never stored.
template <class Space>
class ExtReal {
 public:
  constexpr ExtReal() = default;

  /// Accepts any non-NaN double; +/-infinity become Top/Bottom.
  explicit ExtReal(double v) : v_(v) {
    if (v != v) throw std::invalid_argument("extended real: NaN is not admitted");
  }

  static constexpr ExtReal top() { return ExtReal(Raw{}, std::numeric_limits<double>::infinity()); }
  static constexpr ExtReal bottom() { return ExtReal(Raw{}, -std::numeric_limits<double>::infinity()); }

  constexpr Kind kind() const {
    if (v_ == std::numeric_limits<double>::infinity()) return Kind::Top;
    if (v_ == -std::numeric_limits<double>::infinity()) return Kind::Bottom;
    return Kind::Finite;
  }
  constexpr bool is_top() const { return kind() == Kind::Top; }
  constexpr bool is_bottom() const { return kind() == Kind::Bottom; }
  constexpr bool is_finite() const { return kind() == Kind::Finite; }

  /// The finite value; throws for Top/Bottom.
  double value() const {
    if (!is_finite()) throw std::domain_error("extended real: value() on an infinite element");
    return v_;
  }
  /// The value as a double with +/-infinity for Top/Bottom.
  constexpr double raw() const { return v_; }

  friend constexpr bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend constexpr std::strong_ordering operator<=>(ExtReal a, ExtReal b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (b.v_ < a.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  struct Raw {};
  constexpr ExtReal(Raw, double v) : v_(v) {}
  double v_ = 0.0;
};

using UpReal = ExtReal<UpSpace>;
using DownReal = ExtReal<DownSpace>;

// Additions. Both agree with + on finite pairs.
UpReal isum(UpReal a, UpReal b);
DownReal ssum(DownReal a, DownReal b);

/// Inf-difference: the least t with a <= b (+inf-add) t.
UpReal idif(UpReal a, UpReal b);
/// Sup-difference: the greatest t with b (+sup-add) t <= a.
DownReal sdif(DownReal a, DownReal b);

/// Multiplication by -1; an order-reversing bijection between the two spaces.
DownReal negate_up(UpReal a);
UpReal negate_down(DownReal a);

/// Same underlying extended real, viewed in the other image space. Only
/// meant for stating identities that mix the two structures.
inline DownReal reinterpret_down(UpReal a) { return DownReal(a.raw()); }
inline UpReal reinterpret_up(DownReal a) { return UpReal(a.raw()); }

/// t * a for t >= 0, with 0 * (+/-inf) = 0. Throws std::invalid_argument for t < 0.
UpReal scale(double t, UpReal a);
DownReal scale(double t, DownReal a);

// Lattice operations on finite collections. inf of the empty set is Top,
// sup of the empty set is Bottom.
UpReal inf_up(std::span<const UpReal> m);
UpReal sup_up(std::span<const UpReal> m);
DownReal inf_down(std::span<const DownReal> m);
DownReal sup_down(std::span<const DownReal> m);

std::string to_string(double v);
template <class Space>
std::string to_string(ExtReal<Space> a) {
  if (a.is_top()) return "inf";
  if (a.is_bottom()) return "-inf";
  return to_string(a.raw());
}

}  // namespace extcvx
