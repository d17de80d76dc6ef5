#pragma once

#include <string>
#include <vector>

#include "extcvx/calculus.hpp"
#include "extcvx/extreal.hpp"
#include "extcvx/geometry.hpp"
#include "extcvx/scalar_fn.hpp"

namespace extcvx {

/// Closed convex subset of R^2 stable under +C (UpSpace) or -C (DownSpace).
/// The empty set and the whole plane are ordinary values.
template <class Space>
class ConeSet {
 public:
  /// p + C (resp. p - C).
  static ConeSet make(const ConvexPoly2& p, const Cone2& c);
  static ConeSet empty(const Cone2& c) { return ConeSet(ConvexPoly2::empty(), c); }
  static ConeSet whole(const Cone2& c) { return ConeSet(ConvexPoly2::whole(), c); }

  const ConvexPoly2& poly() const { return poly_; }
  const Cone2& cone() const { return cone_; }
  bool is_empty() const { return poly_.is_empty(); }
  bool is_whole() const { return poly_.is_whole(); }
  bool contains(const Vec2& z, double tol = kGeomTol) const { return poly_.contains(z, tol); }

  /// The recession cone of the polygon contains C (resp. -C).
  bool invariant_holds(double tol = kGeomTol) const;
  bool same_set(const ConeSet& o, double tol = 1e-7) const { return poly_.same_set(o.poly_, tol); }

 private:
  ConeSet(ConvexPoly2 p, Cone2 c) : poly_(std::move(p)), cone_(std::move(c)) {}
  ConvexPoly2 poly_;
  Cone2 cone_;
};

using UpSet = ConeSet<UpSpace>;
using DownSet = ConeSet<DownSpace>;

extern template class ConeSet<UpSpace>;
extern template class ConeSet<DownSpace>;

/// C for UpSpace, -C for DownSpace, as a polygon.
template <class Space>
ConvexPoly2 cone_part(const Cone2& c);

/// Closed Minkowski sum. Throws std::invalid_argument for different cones.
template <class Space>
ConeSet<Space> oplus(const ConeSet<Space>& a, const ConeSet<Space>& b);
/// t * A for t >= 0; 0 * A is cl C (resp. -cl C) for every A.
template <class Space>
ConeSet<Space> scale_set(double t, const ConeSet<Space>& a);

/// Lattice infimum and supremum. In the +C lattice (ordered by reverse
/// inclusion) the infimum is the closed convex hull of the union and the
/// supremum the intersection; in the -C lattice the roles are swapped.
template <class Space>
ConeSet<Space> inf_family(const std::vector<ConeSet<Space>>& f, const Cone2& c);
template <class Space>
ConeSet<Space> sup_family(const std::vector<ConeSet<Space>>& f, const Cone2& c);

/// {z : B + z inside A}, computed by shifting the halfplanes of A by the
/// support function of B.
UpSet set_idif(const UpSet& a, const UpSet& b);
DownSet set_sdif(const DownSet& a, const DownSet& b);

/// inf over D of -z*.z (+inf for D empty).
UpReal support_up(const UpSet& d, const Vec2& zstar);
/// sup over D of -z*.z (-inf for D empty).
DownReal support_down(const DownSet& d, const Vec2& zstar);

/// {z : z*.z <= c} as an UpSet.
UpSet halfplane(const Vec2& zstar, double c, const Cone2& cone);

/// Facet normals of A together with the generators of the dual cone.
std::vector<Vec2> default_zstar_family(const UpSet& a);

struct SetDiffReport {
  UpSet direct;
  UpSet via_support;
  double hausdorff = 0.0;
  bool equal = false;
  /// sigma_{A-B}(z*) >= sigma_A(z*) -inf sigma_B(z*) on the family, with
  /// equality where A is the single halfplane {z : sigma_A(z*) <= -z*.z}.
  bool scalar_ok = true;
  std::vector<std::string> witnesses;

  bool ok() const { return equal && scalar_ok; }
};

/// Compares set_idif with the intersection over z* of
/// {z : sigma_A(z*) -inf sigma_B(z*) <= -z*.z}. An empty family means
/// `default_zstar_family(a)`.
SetDiffReport setdiff_support_check(const UpSet& a, const UpSet& b, std::vector<Vec2> zstars = {});

/// Slice {z : (x, z) in P}.
ConvexPoly2 slice(const Polyhedron3& p, double x);

/// Set-valued function R -> (+C lattice) whose graph is the union of closed
/// convex polyhedra in R^3 with coordinates (x, z1, z2). The value at x is
/// the closed convex hull of the slices. Each piece is closed under
/// {0} x C on construction.
class SetValuedFn {
 public:
  SetValuedFn(std::vector<Polyhedron3> pieces, Cone2 cone);

  const std::vector<Polyhedron3>& pieces() const { return pieces_; }
  const Cone2& cone() const { return cone_; }
  /// Closed convex hull of the graph.
  const Polyhedron3& hull() const { return hull_; }
  bool convex_graph() const { return pieces_.size() <= 1; }

  UpSet operator()(double x) const;
  /// Projection of the hull onto the x axis.
  Interval domain() const;
  /// The graph recedes along {0} x C.
  bool invariant_holds() const;

 private:
  std::vector<Polyhedron3> pieces_;
  Cone2 cone_;
  Polyhedron3 hull_;
};

/// (xi, r, z*) with z* in the dual cone.
struct DualTriple {
  DualElem xi;
  double r = 0.0;
  Vec2 zstar = Vec2::Zero();
};

/// Throws std::invalid_argument unless z* lies in the dual cone of `c`.
void require_dual(const Vec2& zstar, const Cone2& c);

/// x -> inf over g(x) of -z*.z, computed on the hull of the graph.
UpFunction scalarize(const SetValuedFn& g, const Vec2& zstar);

/// {z : xi_r(x) <= -z*.z}.
UpSet conaffine_eval(const DualTriple& d, double x, const Cone2& cone);
/// The conaffine function as a set-valued function with a halfspace graph.
SetValuedFn conaffine_fn(const DualTriple& d, const Cone2& cone);

/// g*(xi, r, z*) = {z : (scalarize(g, z*))*(xi, r) <= -z*.z}.
UpSet sv_conjugate(const SetValuedFn& g, const DualTriple& d);

/// The z* directions used by the biconjugate: normalized z-parts of the
/// graph facet normals lying in the dual cone, plus its generators.
std::vector<Vec2> biconjugate_zstar_family(const SetValuedFn& g);

/// Intersection over the finite dual family of
/// {z : xi_r(x) -inf (scalarize(g, z*))*(xi, r) <= -z*.z}.
UpSet sv_biconjugate(const SetValuedFn& g, double x);

struct Properness {
  bool proper = false;
  bool c_proper = false;
  bool improper = true;
};
Properness properness(const SetValuedFn& g);

}  // namespace extcvx
