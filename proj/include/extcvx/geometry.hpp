#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace extcvx {

inline constexpr double kGeomTol = 1e-9;

template <int D>
using Vec = Eigen::Matrix<double, D, 1>;
using Vec2 = Vec<2>;
using Vec3 = Vec<3>;

/// The closed halfspace {z : n.z <= c}.
template <int D>
struct Halfspace {
  Vec<D> n;
  double c = 0.0;
};

/// Closed convex polyhedron in R^D (D = 2 or 3) held in both
/// representations.
///
/// The H-representation is irredundant: facets plus, for lower-dimensional
/// sets, pairs of opposite halfspaces encoding the affine hull. Normals are
/// unit vectors. The V-representation lists the points of the minimal faces
/// taken in the orthogonal complement of the lineality space, extreme ray
/// directions (unit length) and +/- a basis of the lineality space. In 2-D
/// the points are ordered counterclockwise.
template <int D>
class Polyhedron {
 public:
  static Polyhedron empty();
  static Polyhedron whole();
  static Polyhedron from_h(std::vector<Halfspace<D>> hs);
  static Polyhedron from_v(std::vector<Vec<D>> points, std::vector<Vec<D>> rays);

  bool is_empty() const { return empty_; }
  bool is_whole() const { return !empty_ && h_.empty(); }
  const std::vector<Halfspace<D>>& h() const { return h_; }
  const std::vector<Vec<D>>& points() const { return points_; }
  const std::vector<Vec<D>>& rays() const { return rays_; }

  bool contains(const Vec<D>& z, double tol = kGeomTol) const;
  /// d in the recession cone.
  bool recedes(const Vec<D>& d, double tol = kGeomTol) const;
  /// Mutual containment within `tol`.
  bool same_set(const Polyhedron& o, double tol = 1e-7) const;
  /// sup { n.z : z in P }: -inf for the empty set, +inf when unbounded.
  double support(const Vec<D>& n) const;

  Polyhedron translate(const Vec<D>& t) const;
  Polyhedron scale(double t) const;

 private:
  bool empty_ = true;
  std::vector<Halfspace<D>> h_;
  std::vector<Vec<D>> points_;
  std::vector<Vec<D>> rays_;
};

using ConvexPoly2 = Polyhedron<2>;
using Polyhedron3 = Polyhedron<3>;

extern template class Polyhedron<2>;
extern template class Polyhedron<3>;

template <int D>
Polyhedron<D> intersect(const Polyhedron<D>& a, const Polyhedron<D>& b);
/// Minkowski sum; empty if either operand is.
template <int D>
Polyhedron<D> minkowski(const Polyhedron<D>& a, const Polyhedron<D>& b);
/// Closed convex hull of a union; empty members are ignored.
template <int D>
Polyhedron<D> hull_union(const std::vector<Polyhedron<D>>& parts);
/// Symmetric Hausdorff distance between the point lists; +inf if exactly one
/// side is empty.
template <int D>
double vertex_hausdorff(const Polyhedron<D>& a, const Polyhedron<D>& b);

/// Convex cone in R^2 containing 0, stored as the polyhedral cone generated
/// by its rays. Covers {0}, rays, pointed sectors, lines, halfplanes and R^2.
class Cone2 {
 public:
  Cone2() : poly_(ConvexPoly2::from_v({Vec2::Zero()}, {})) {}
  static Cone2 generated(const std::vector<Vec2>& gens);
  static Cone2 from_poly(const ConvexPoly2& p);

  const ConvexPoly2& poly() const { return poly_; }
  const std::vector<Vec2>& generators() const { return poly_.rays(); }
  bool contains(const Vec2& z, double tol = kGeomTol) const { return poly_.contains(z, tol); }
  bool is_zero() const { return poly_.rays().empty(); }

 private:
  ConvexPoly2 poly_;
};

/// The negative dual cone {z* : z*.c <= 0 for all c in C}.
Cone2 dual_cone(const Cone2& c);
/// -C.
Cone2 negate(const Cone2& c);

std::string to_string(const ConvexPoly2& p);

}  // namespace extcvx
