#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "extcvx/scalar_fn.hpp"

namespace extcvx {

/// Directional derivative g'(x0, x) of a convex function. Throws
/// std::invalid_argument when g is not convex.
UpReal dirderiv(const UpFunction& g, double x0, double x);
/// Directional derivative h'(x0, x) of a concave function, built on
/// sup-differences. Throws std::invalid_argument when h is not concave.
DownReal dirderiv(const DownFunction& h, double x0, double x);

/// (1/t) * (g(x0 + t*x) -inf g(x0)) for t > 0.
UpReal difference_quotient(const UpFunction& g, double x0, double x, double t);

struct SubdiffDescription {
  Interval proper_part = Interval::empty();
  /// Canonical hat slopes (subset of {-1, 0, +1}), ascending.
  std::vector<double> improper_part;
  /// The constant -inf functional (hat(0)) is always an extended subgradient.
  bool contains_bottom = true;

  bool contains(const DualElem& xi) const;
};

SubdiffDescription subdiff_extended(const UpFunction& g, double x0);

/// Definitional test xi(x - x0) <= g(x) -inf g(x0) for all x, evaluated in
/// closed form from the breakpoints, domain ends and tail slopes.
bool is_subgradient(const UpFunction& g, double x0, const DualElem& xi);

/// The minorant test xi(x) <= g'(x0, x) for all x. For a convex g this is
/// equivalent to `is_subgradient`.
bool is_dirderiv_minorant(const UpFunction& g, double x0, const DualElem& xi);

/// sup { a*x : x in d }; -inf for empty d.
double support(const Interval& d, double a);

/// g*(xi, r) = sup_x xi_r(x) -inf g(x).
DownReal conjugate(const UpFunction& g, const DualElem& xi, double r);

/// The proper part of the conjugate as a function of the dual slope:
/// `base(a)` = g*(a, 0), stored as a convex function of a whose values are
/// read in the sup-addition image space (a constant +inf base means g* is
/// identically +inf on proper elements, a constant -inf base means g is
/// identically +inf). `dom_g` drives the hat branch.
struct ConjugateCurve {
  UpFunction base;
  Interval dom_g;

  DownReal value(const DualElem& xi, double r) const;
};

ConjugateCurve conjugate_curve(const UpFunction& g);

/// Legendre transform of a convex PL function (or of the constants), as a
/// function of the dual slope.
UpFunction legendre(const UpFunction& g);

/// Truth values of the three Young-Fenchel forms at x.
std::array<bool, 3> young_fenchel_check(const UpFunction& g, const DualElem& xi, double r, double x);

/// Infimal convolution of two convex functions. Throws std::invalid_argument
/// for non-convex input.
UpFunction infconv(const UpFunction& f, const UpFunction& g);

struct InfconvConjugateReport {
  DownReal lhs;
  DownReal rhs;
  bool equal = false;
};

/// Compares (f box g)*(xi, r) with the sup-convolution of f* and g* in r.
InfconvConjugateReport infconv_conjugate_check(const UpFunction& f, const UpFunction& g, const DualElem& xi,
                                               double r, double tol = 1e-9);

UpFunction biconjugate(const UpFunction& g);

struct SubdiffConjugateReport {
  bool in_domain = false;
  bool only_bottom = false;
  bool proper_agree = true;
  bool improper_agree = true;
  std::vector<std::string> mismatches;

  bool ok() const { return proper_agree && improper_agree && (in_domain || only_bottom); }
};

/// Compares subdiff_extended(g, x0) with the set described by the conjugate
/// inequality g*(xi, xi(x0)) +inf g(x0) <= xi(0), probing proper slopes on a
/// grid built from the slopes of g and all three canonical hats.
SubdiffConjugateReport subdiff_conjugate_check(const UpFunction& g, double x0);

/// Evaluates the six equivalent affine-minorant conditions for (xi, r):
/// (a) pointwise minorant, (b) sup of xi_r -inf g <= 0, (c) sup of
/// xi_r +sup (-g) <= 0, (d) inf of g -inf xi_r >= 0, (e) inf of
/// g +sup (-xi_r) >= 0 and, for hats only, (f) dom g inside dom xi_r.
/// Suprema and infima run over a candidate set that contains every point
/// where a violation can first appear.
///
/// At a point where g and xi_r are the same infinity the residual
/// g(x) -inf xi_r(x) is -inf, so (d) and (e) fail there although (a) holds;
/// `coincident_infinity` records such a point and `agree` then only ties (a)
/// to (b), (c), (f) and (d) to (e).
struct AffineMinorantReport {
  std::array<bool, 5> conditions{};
  std::optional<bool> domain_condition;
  DownReal sup_b;
  UpReal inf_d;
  bool coincident_infinity = false;

  bool agree() const;
};
AffineMinorantReport affine_minorant_check(const UpFunction& g, const DualElem& xi, double r);

/// For an improper closed convex g that is not identically -inf, a hat
/// minorant with nonzero slope: returns (a, r) with hat(a)_r <= g.
std::optional<AffineDual> nonzero_hat_minorant(const UpFunction& g);

}  // namespace extcvx
