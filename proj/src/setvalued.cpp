#include "extcvx/setvalued.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace extcvx {

namespace {

bool same_cone(const Cone2& a, const Cone2& b) { return a.poly().same_set(b.poly(), 1e-9); }

template <class Space>
void require_same_cone(const ConeSet<Space>& a, const ConeSet<Space>& b) {
  if (!same_cone(a.cone(), b.cone())) throw std::invalid_argument("set operation: operands use different cones");
}

void push_unique(std::vector<Vec2>& v, const Vec2& z) {
  for (const auto& w : v)
    if ((w - z).norm() <= 1e-9) return;
  v.push_back(z);
}

bool in_dual(const Vec2& zstar, const Cone2& c) {
  Vec2 u = zstar.norm() > 0.0 ? Vec2(zstar.normalized()) : zstar;
  for (const auto& g : c.generators())
    if (u.dot(g) > 1e-9) return false;
  return true;
}

bool ext_close(UpReal a, UpReal b, double tol) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  return std::abs(a.value() - b.value()) <= tol * (1.0 + std::abs(b.value()));
}

Polyhedron3 cone_rays3(const Cone2& c) {
  std::vector<Vec3> rays;
  for (const auto& g : c.generators()) rays.push_back(Vec3(0.0, g.x(), g.y()));
  return Polyhedron3::from_v({Vec3::Zero()}, rays);
}

}  // namespace

template <class Space>
ConvexPoly2 cone_part(const Cone2& c) {
  if constexpr (std::is_same_v<Space, UpSpace>) return c.poly();
  else return negate(c).poly();
}

template ConvexPoly2 cone_part<UpSpace>(const Cone2&);
template ConvexPoly2 cone_part<DownSpace>(const Cone2&);

template <class Space>
ConeSet<Space> ConeSet<Space>::make(const ConvexPoly2& p, const Cone2& c) {
  if (p.is_empty() || p.is_whole()) return ConeSet(p, c);
  return ConeSet(minkowski(p, cone_part<Space>(c)), c);
}

template <class Space>
bool ConeSet<Space>::invariant_holds(double tol) const {
  const ConvexPoly2 part = cone_part<Space>(cone_);
  for (const auto& g : part.rays())
    if (!poly_.recedes(g, tol)) return false;
  return true;
}

template class ConeSet<UpSpace>;
template class ConeSet<DownSpace>;

template <class Space>
ConeSet<Space> oplus(const ConeSet<Space>& a, const ConeSet<Space>& b) {
  require_same_cone(a, b);
  return ConeSet<Space>::make(minkowski(a.poly(), b.poly()), a.cone());
}

template <class Space>
ConeSet<Space> scale_set(double t, const ConeSet<Space>& a) {
  if (!(t >= 0.0)) throw std::invalid_argument("scale_set: factor must be non-negative");
  if (t == 0.0) return ConeSet<Space>::make(cone_part<Space>(a.cone()), a.cone());
  if (a.is_empty() || a.is_whole()) return a;
  return ConeSet<Space>::make(a.poly().scale(t), a.cone());
}

template <class Space>
static ConeSet<Space> hull_of(const std::vector<ConeSet<Space>>& f, const Cone2& c) {
  std::vector<ConvexPoly2> parts;
  for (const auto& a : f) {
    if (!same_cone(a.cone(), c)) throw std::invalid_argument("set family: members use different cones");
    parts.push_back(a.poly());
  }
  return ConeSet<Space>::make(hull_union(parts), c);
}

template <class Space>
static ConeSet<Space> meet_of(const std::vector<ConeSet<Space>>& f, const Cone2& c) {
  ConvexPoly2 p = ConvexPoly2::whole();
  for (const auto& a : f) {
    if (!same_cone(a.cone(), c)) throw std::invalid_argument("set family: members use different cones");
    p = p.is_whole() ? a.poly() : intersect(p, a.poly());
  }
  return ConeSet<Space>::make(p, c);
}

template <class Space>
ConeSet<Space> inf_family(const std::vector<ConeSet<Space>>& f, const Cone2& c) {
  if constexpr (std::is_same_v<Space, UpSpace>) return hull_of(f, c);
  else return meet_of(f, c);
}

template <class Space>
ConeSet<Space> sup_family(const std::vector<ConeSet<Space>>& f, const Cone2& c) {
  if constexpr (std::is_same_v<Space, UpSpace>) return meet_of(f, c);
  else return hull_of(f, c);
}

template UpSet oplus(const UpSet&, const UpSet&);
template DownSet oplus(const DownSet&, const DownSet&);
template UpSet scale_set(double, const UpSet&);
template DownSet scale_set(double, const DownSet&);
template UpSet inf_family(const std::vector<UpSet>&, const Cone2&);
template DownSet inf_family(const std::vector<DownSet>&, const Cone2&);
template UpSet sup_family(const std::vector<UpSet>&, const Cone2&);
template DownSet sup_family(const std::vector<DownSet>&, const Cone2&);

template <class Space>
static ConeSet<Space> shift_difference(const ConeSet<Space>& a, const ConeSet<Space>& b) {
  require_same_cone(a, b);
  if (b.is_empty()) return ConeSet<Space>::whole(a.cone());
  if (a.is_empty()) return ConeSet<Space>::empty(a.cone());
  std::vector<Halfspace<2>> hs;
  for (const auto& h : a.poly().h()) {
    double s = b.poly().support(h.n);
    if (s == kInf) return ConeSet<Space>::empty(a.cone());
    hs.push_back({h.n, h.c - s});
  }
  return ConeSet<Space>::make(ConvexPoly2::from_h(std::move(hs)), a.cone());
}

UpSet set_idif(const UpSet& a, const UpSet& b) { return shift_difference(a, b); }
DownSet set_sdif(const DownSet& a, const DownSet& b) { return shift_difference(a, b); }

UpReal support_up(const UpSet& d, const Vec2& zstar) { return UpReal(-d.poly().support(zstar)); }
DownReal support_down(const DownSet& d, const Vec2& zstar) { return DownReal(d.poly().support(-zstar)); }

UpSet halfplane(const Vec2& zstar, double c, const Cone2& cone) {
  if (zstar.norm() == 0.0) return c >= 0.0 ? UpSet::whole(cone) : UpSet::empty(cone);
  return UpSet::make(ConvexPoly2::from_h({{zstar, c}}), cone);
}

std::vector<Vec2> default_zstar_family(const UpSet& a) {
  std::vector<Vec2> out;
  for (const auto& h : a.poly().h()) push_unique(out, h.n);
  const Cone2 dual = dual_cone(a.cone());
  for (const auto& g : dual.generators()) push_unique(out, g);
  return out;
}

SetDiffReport setdiff_support_check(const UpSet& a, const UpSet& b, std::vector<Vec2> zstars) {
  if (zstars.empty()) zstars = default_zstar_family(a);
  SetDiffReport rep{set_idif(a, b), UpSet::whole(a.cone()), 0.0, false, true, {}};
  ConvexPoly2 acc = ConvexPoly2::whole();
  for (const auto& zs : zstars) {
    if (zs.norm() == 0.0) continue;
    UpReal v = idif(support_up(a, zs), support_up(b, zs));
    if (v.is_bottom()) continue;
    if (v.is_top()) {
      acc = ConvexPoly2::empty();
      break;
    }
    acc = intersect(acc, ConvexPoly2::from_h({{zs, -v.value()}}));
    if (acc.is_empty()) break;
  }
  rep.via_support = UpSet::make(acc, a.cone());
  rep.hausdorff = vertex_hausdorff(rep.direct.poly(), rep.via_support.poly());
  rep.equal = rep.direct.same_set(rep.via_support) && rep.hausdorff <= 1e-7;
  if (!rep.equal) rep.witnesses.push_back("direct " + to_string(rep.direct.poly()) + " vs support " +
                                          to_string(rep.via_support.poly()));

  for (const auto& zs : zstars) {
    if (zs.norm() == 0.0) continue;
    UpReal sa = support_up(a, zs);
    UpReal rhs = idif(sa, support_up(b, zs));
    UpReal lhs = support_up(rep.direct, zs);
    bool ge = lhs >= rhs || ext_close(lhs, rhs, 1e-9);
    bool eq_branch = sa.is_finite() && a.same_set(halfplane(zs, -sa.value(), a.cone()));
    if (!ge || (eq_branch && !ext_close(lhs, rhs, 1e-9))) {
      rep.scalar_ok = false;
      std::ostringstream os;
      os << "z*=(" << to_string(zs.x()) << "," << to_string(zs.y()) << "): sigma(A-B)=" << to_string(lhs)
         << " bound=" << to_string(rhs);
      rep.witnesses.push_back(os.str());
    }
  }
  return rep;
}

ConvexPoly2 slice(const Polyhedron3& p, double x) {
  if (p.is_empty()) return ConvexPoly2::empty();
  std::vector<Halfspace<2>> hs;
  for (const auto& h : p.h()) hs.push_back({Vec2(h.n(1), h.n(2)), h.c - h.n(0) * x});
  return ConvexPoly2::from_h(std::move(hs));
}

SetValuedFn::SetValuedFn(std::vector<Polyhedron3> pieces, Cone2 cone) : cone_(std::move(cone)) {
  const Polyhedron3 rays = cone_rays3(cone_);
  for (auto& p : pieces)
    if (!p.is_empty()) pieces_.push_back(minkowski(p, rays));
  hull_ = pieces_.size() == 1 ? pieces_.front() : hull_union(pieces_);
}

UpSet SetValuedFn::operator()(double x) const {
  std::vector<UpSet> slices;
  for (const auto& p : pieces_) slices.push_back(UpSet::make(slice(p, x), cone_));
  return inf_family(slices, cone_);
}

Interval SetValuedFn::domain() const {
  if (hull_.is_empty()) return Interval::empty();
  return Interval{-hull_.support(Vec3(-1.0, 0.0, 0.0)), hull_.support(Vec3(1.0, 0.0, 0.0))};
}

bool SetValuedFn::invariant_holds() const {
  for (const auto& p : pieces_)
    for (const auto& g : cone_.generators())
      if (!p.recedes(Vec3(0.0, g.x(), g.y()))) return false;
  return true;
}

void require_dual(const Vec2& zstar, const Cone2& c) {
  if (!zstar.allFinite()) throw std::invalid_argument("z* must be finite");
  if (!in_dual(zstar, c)) throw std::invalid_argument("z* is not in the dual cone");
}

UpFunction scalarize(const SetValuedFn& g, const Vec2& zstar) {
  require_dual(zstar, g.cone());
  const Polyhedron3& gr = g.hull();
  if (gr.is_empty()) return UpFunction::const_top();
  std::vector<Vec2> pts, rays{Vec2(0.0, 1.0)};
  for (const auto& p : gr.points()) pts.push_back(Vec2(p(0), -zstar.dot(Vec2(p(1), p(2)))));
  for (const auto& d : gr.rays()) rays.push_back(Vec2(d(0), -zstar.dot(Vec2(d(1), d(2)))));
  const ConvexPoly2 e = ConvexPoly2::from_v(pts, rays);
  // domain ends taken from the graph itself, so they match g.domain() exactly
  const Interval d = g.domain();
  const double lo = d.lo, hi = d.hi;
  if (e.recedes(Vec2(0.0, -1.0))) return UpFunction::split(Interval{lo, hi});

  std::vector<Vec2> verts = e.points();
  for (auto& v : verts) {
    if (std::isfinite(lo) && std::abs(v.x() - lo) <= 1e-9 * (1.0 + std::abs(lo))) v.x() = lo;
    if (std::isfinite(hi) && std::abs(v.x() - hi) <= 1e-9 * (1.0 + std::abs(hi))) v.x() = hi;
  }
  std::sort(verts.begin(), verts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  std::vector<Breakpoint> breaks;
  for (const auto& v : verts) {
    if (!breaks.empty() && std::abs(v.x() - breaks.back().x) <= 1e-12 * (1.0 + std::abs(v.x()))) continue;
    breaks.push_back({v.x(), v.y()});
  }
  std::optional<double> sl, sr;
  if (hi == kInf) {
    double best = kInf;
    for (const auto& d : e.rays())
      if (d.x() > 1e-12) best = std::min(best, d.y() / d.x());
    sr = best;
  }
  if (lo == -kInf) {
    double best = -kInf;
    for (const auto& d : e.rays())
      if (d.x() < -1e-12) best = std::max(best, d.y() / d.x());
    sl = best;
  }
  return UpFunction::pl(std::move(breaks), sl, sr);
}

UpSet conaffine_eval(const DualTriple& d, double x, const Cone2& cone) {
  UpReal v = affine_eval({d.xi, d.r}, x);
  if (v.is_top()) return UpSet::empty(cone);
  if (v.is_bottom()) return UpSet::whole(cone);
  return halfplane(d.zstar, -v.value(), cone);
}

SetValuedFn conaffine_fn(const DualTriple& d, const Cone2& cone) {
  require_dual(d.zstar, cone);
  Vec3 n(d.xi.slope, 0.0, 0.0);
  if (!d.xi.is_hat()) n = Vec3(d.xi.slope, d.zstar.x(), d.zstar.y());
  return SetValuedFn({Polyhedron3::from_h({{n, d.r}})}, cone);
}

namespace {

UpSet conjugate_from_value(DownReal c, const Vec2& zstar, const Cone2& cone) {
  if (c.is_top()) return UpSet::empty(cone);
  if (c.is_bottom()) return UpSet::whole(cone);
  return halfplane(zstar, -c.value(), cone);
}

std::vector<AffineDual> dual_family(const UpFunction& phi) {
  std::vector<AffineDual> out{{DualElem::proper(0.0), 0.0}, {DualElem::hat(0.0), -1.0}};
  if (phi.is_pl()) {
    const PLData& d = phi.as_pl();
    for (double s : d.segment_slopes()) out.push_back({DualElem::proper(s), 0.0});
    if (d.slope_left) out.push_back({DualElem::proper(*d.slope_left), 0.0});
    if (d.slope_right) out.push_back({DualElem::proper(*d.slope_right), 0.0});
  }
  const Interval dm = dom(phi);
  if (!dm.is_empty()) {
    if (dm.hi < kInf) out.push_back({DualElem::hat(1.0), dm.hi});
    if (dm.lo > -kInf) out.push_back({DualElem::hat(-1.0), -dm.lo});
  }
  return out;
}

}  // namespace

UpSet sv_conjugate(const SetValuedFn& g, const DualTriple& d) {
  require_dual(d.zstar, g.cone());
  const DownReal c = conjugate(scalarize(g, d.zstar), d.xi, d.r);
  return conjugate_from_value(c, d.zstar, g.cone());
}

std::vector<Vec2> biconjugate_zstar_family(const SetValuedFn& g) {
  std::vector<Vec2> out;
  for (const auto& h : g.hull().h()) {
    Vec2 nz(h.n(1), h.n(2));
    if (nz.norm() <= 1e-9) continue;
    nz.normalize();
    if (in_dual(nz, g.cone())) push_unique(out, nz);
  }
  const Cone2 dual = dual_cone(g.cone());
  for (const auto& gen : dual.generators()) push_unique(out, gen);
  if (out.empty()) out.push_back(Vec2::Zero());
  return out;
}

UpSet sv_biconjugate(const SetValuedFn& g, double x) {
  ConvexPoly2 acc = ConvexPoly2::whole();
  for (const auto& zs : biconjugate_zstar_family(g)) {
    const UpFunction phi = scalarize(g, zs);
    for (const auto& ad : dual_family(phi)) {
      const DownReal c = conjugate(phi, ad.xi, ad.r);
      const UpReal w = idif(affine_eval(ad, x), reinterpret_up(c));
      if (w.is_bottom()) continue;
      if (w.is_top() || (zs.norm() == 0.0 && w.value() > 0.0)) return UpSet::empty(g.cone());
      if (zs.norm() == 0.0) continue;
      acc = intersect(acc, ConvexPoly2::from_h({{zs, -w.value()}}));
      if (acc.is_empty()) return UpSet::empty(g.cone());
    }
  }
  return UpSet::make(acc, g.cone());
}

Properness properness(const SetValuedFn& g) {
  Properness out;
  bool nonempty = !g.pieces().empty();
  bool never_whole = true;
  for (const auto& p : g.pieces()) {
    bool cut = false;
    for (const auto& h : p.h())
      if (Vec2(h.n(1), h.n(2)).norm() > 1e-9) cut = true;
    if (!cut) never_whole = false;
  }
  out.proper = nonempty && never_whole;
  out.improper = !out.proper;

  const Cone2 dual = dual_cone(g.cone());
  std::vector<Vec2> cands = biconjugate_zstar_family(g);
  const auto& gens = dual.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if ((gens[i] + gens[j]).norm() > 1e-9) push_unique(cands, Vec2((gens[i] + gens[j]).normalized()));
  for (const auto& zs : cands) {
    if (zs.norm() == 0.0 || in_dual(-zs, g.cone())) continue;
    if (scalarize(g, zs).is_pl()) {
      out.c_proper = true;
      break;
    }
  }
  out.c_proper = out.c_proper && nonempty;
  return out;
}

}  // namespace extcvx
