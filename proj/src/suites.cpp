#include "extcvx/suites.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

#include "extcvx/calculus.hpp"
#include "extcvx/extreal.hpp"
#include "extcvx/random_objects.hpp"
#include "extcvx/residuation.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"

namespace extcvx {

namespace {

class Recorder {
 public:
  Recorder(SuiteResult& r, std::size_t max_failures) : r_(r), max_(max_failures) {}

  void check(bool ok, const std::function<std::string()>& msg) {
    ++r_.checks;
    if (ok) return;
    if (r_.failures.size() < max_) r_.failures.push_back(msg());
    else if (r_.failures.size() == max_) r_.failures.push_back("(further failures omitted)");
  }

 private:
  SuiteResult& r_;
  std::size_t max_;
};

template <class Space>
bool close(ExtReal<Space> a, ExtReal<Space> b, double tol) {
  if (!a.is_finite() || !b.is_finite()) return a == b;
  return std::abs(a.raw() - b.raw()) <= tol * (1.0 + std::max(std::abs(a.raw()), std::abs(b.raw())));
}

template <class Space>
bool leq_tol(ExtReal<Space> a, ExtReal<Space> b, double tol) {
  return a <= b || close(a, b, tol);
}

std::string str3(const std::string& law, double a, double b, double c) {
  return law + " at (" + to_string(a) + ", " + to_string(b) + ", " + to_string(c) + ")";
}

std::vector<UpReal> random_set(std::mt19937_64& rng) {
  std::vector<UpReal> m(std::uniform_int_distribution<int>(0, 3)(rng));
  for (auto& v : m) v = random_ext<UpSpace>(rng);
  return m;
}

std::vector<DownReal> as_down(const std::vector<UpReal>& m) {
  std::vector<DownReal> out;
  for (auto v : m) out.push_back(reinterpret_down(v));
  return out;
}

void extreal_suite(Recorder& rec, long iters, std::mt19937_64& rng, double tol) {
  const DownReal dzero(0.0);
  const UpReal uzero(0.0);
  for (long i = 0; i < iters; ++i) {
    const UpReal a = random_ext<UpSpace>(rng), b = random_ext<UpSpace>(rng), t = random_ext<UpSpace>(rng);
    const DownReal da = reinterpret_down(a), db = reinterpret_down(b), dt = reinterpret_down(t);
    const bool near = a.is_finite() && b.is_finite() && t.is_finite() &&
                      std::abs(a.raw() - b.raw() - t.raw()) <= tol * (1.0 + std::abs(a.raw()) + std::abs(b.raw()) + std::abs(t.raw()));

    rec.check((a <= isum(b, t)) == (idif(a, b) <= t) || near,
              [&] { return str3("inf residuation", a.raw(), b.raw(), t.raw()); });
    rec.check((ssum(db, dt) <= da) == (dt <= sdif(da, db)) || near,
              [&] { return str3("sup residuation", a.raw(), b.raw(), t.raw()); });

    const bool ab = a <= b;
    rec.check(ab == (idif(a, b) <= uzero) && ab == (dzero <= sdif(db, da)),
              [&] { return str3("order via differences", a.raw(), b.raw(), 0.0); });

    rec.check(negate_up(isum(a, b)) == ssum(negate_up(a), negate_up(b)),
              [&] { return str3("negation duality", a.raw(), b.raw(), 0.0); });

    rec.check(idif(a, b) == reinterpret_up(ssum(da, negate_up(b))),
              [&] { return str3("inf difference as sup sum", a.raw(), b.raw(), 0.0); });
    rec.check(sdif(da, db) == reinterpret_down(isum(a, negate_down(db))),
              [&] { return str3("sup difference as inf sum", a.raw(), b.raw(), 0.0); });
    rec.check(sdif(db, da) == negate_up(idif(a, b)),
              [&] { return str3("sup difference as negated inf difference", a.raw(), b.raw(), 0.0); });
    rec.check(idif(b, a) == idif(reinterpret_up(negate_up(a)), reinterpret_up(negate_up(b))),
              [&] { return str3("inf difference of negatives", a.raw(), b.raw(), 0.0); });
    rec.check(sdif(db, da) == sdif(reinterpret_down(negate_down(da)), reinterpret_down(negate_down(db))),
              [&] { return str3("sup difference of negatives", a.raw(), b.raw(), 0.0); });

    const UpReal aa = idif(a, a);
    const DownReal daa = sdif(da, da);
    rec.check(a.is_finite() ? (aa == uzero && daa == dzero) : (aa.is_bottom() && daa.is_top()),
              [&] { return str3("self difference", a.raw(), 0.0, 0.0); });

    const UpReal lo = std::min(a, b), hi = std::max(a, b);
    rec.check(idif(lo, t) <= idif(hi, t) && idif(t, hi) <= idif(t, lo) &&
                  sdif(reinterpret_down(lo), dt) <= sdif(reinterpret_down(hi), dt) &&
                  sdif(dt, reinterpret_down(hi)) <= sdif(dt, reinterpret_down(lo)),
              [&] { return str3("monotonicity of differences", a.raw(), b.raw(), t.raw()); });

    const UpReal r = random_ext<UpSpace>(rng), s = random_ext<UpSpace>(rng);
    const DownReal dr = reinterpret_down(r), ds = reinterpret_down(s);
    rec.check(leq_tol(idif(isum(a, r), isum(b, s)), isum(idif(a, b), idif(r, s)), tol) &&
                  leq_tol(idif(isum(a, r), isum(r, b)), idif(a, b), tol),
              [&] { return str3("subadditivity of inf differences", a.raw(), b.raw(), r.raw()) + " s=" + to_string(s); });
    rec.check(leq_tol(ssum(sdif(da, db), sdif(dr, ds)), sdif(ssum(da, dr), ssum(db, ds)), tol) &&
                  leq_tol(sdif(da, db), sdif(ssum(da, dr), ssum(dr, db)), tol),
              [&] { return str3("superadditivity of sup differences", a.raw(), b.raw(), r.raw()) + " s=" + to_string(s); });

    const std::vector<UpReal> m = random_set(rng), n = random_set(rng);
    {
      std::vector<UpReal> sums;
      std::vector<DownReal> dsums;
      for (auto x : m)
        for (auto y : n) {
          sums.push_back(isum(x, y));
          dsums.push_back(ssum(reinterpret_down(x), reinterpret_down(y)));
        }
      const auto dm = as_down(m), dn = as_down(n);
      rec.check(inf_up(sums) == isum(inf_up(m), inf_up(n)) && sup_up(sums) <= isum(sup_up(m), sup_up(n)) &&
                    ssum(inf_down(dm), inf_down(dn)) <= inf_down(dsums) &&
                    sup_down(dsums) == ssum(sup_down(dm), sup_down(dn)),
                [&] { return std::string("inf/sup of Minkowski sums"); });

      UpReal sup_dif = UpReal::bottom();
      DownReal inf_dif = DownReal::top();
      for (auto x : m) {
        sup_dif = std::max(sup_dif, idif(a, x));
        inf_dif = std::min(inf_dif, sdif(da, reinterpret_down(x)));
      }
      rec.check(idif(a, inf_up(m)) == sup_dif && sdif(da, sup_down(dm)) == inf_dif,
                [&] { return str3("difference against inf/sup of a set", a.raw(), 0.0, 0.0); });
    }

    const double tf = std::uniform_int_distribution<int>(0, 4)(rng) == 0 ? 0.0 : std::uniform_real_distribution<double>(0.0, 10.0)(rng);
    rec.check(close(scale(tf, idif(a, b)), idif(scale(tf, a), scale(tf, b)), tol) &&
                  close(scale(tf, sdif(da, db)), sdif(scale(tf, da), scale(tf, db)), tol),
              [&] { return str3("scaling of differences", tf, a.raw(), b.raw()); });
  }
}

void residuation_suite(Recorder& rec, long iters, std::mt19937_64& rng) {
  for (bool inf_add : {true, false}) {
    const auto g = three_point_groupoid(inf_add);
    const auto ri = check_equivalence(g, Mode::Inf), rs = check_equivalence(g, Mode::Sup);
    bool all_inf = true, all_sup = true, none_inf = true;
    for (int k = 0; k < 4; ++k) {
      all_inf = all_inf && ri.reports[k].holds;
      none_inf = none_inf && !ri.reports[k].holds;
      all_sup = all_sup && rs.reports[k].holds;
    }
    if (inf_add) rec.check(all_inf, [] { return std::string("inf-addition model must be inf-residuated"); });
    else rec.check(none_inf && all_sup, [] { return std::string("sup-addition model must fail inf and pass sup conditions"); });
    const auto cl = check_conlinear(three_point_conlinear(inf_add));
    rec.check(cl.conlinear, [&] { return std::string("three-point model is not conlinear"); });
  }
  for (long i = 0; i < iters; ++i) {
    const auto g = random_lattice_groupoid(rng, 6);
    for (Mode mode : {Mode::Inf, Mode::Sup}) {
      const auto rep = check_equivalence(g, mode);
      rec.check(rep.agree, [&] {
        std::ostringstream os;
        os << "conditions disagree (" << to_string(mode) << ") on a groupoid of size " << g.size() << ":";
        for (const auto& r : rep.reports) os << " " << to_string(r.condition) << "=" << r.holds;
        return os.str();
      });
      bool all = true;
      for (int u = 0; u < g.size(); ++u)
        for (int v = 0; v < g.size(); ++v) all = all && residual(g, u, v, mode).has_value();
      rec.check(all == rep.reports[1].holds, [&] { return "residual existence vs condition B (" + to_string(mode) + ")"; });
    }
  }
}

void scalar_fn_suite(Recorder& rec, long iters, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 1);
  for (long i = 0; i < iters; ++i) {
    const UpFunction f = pick(rng) ? random_pl(rng) : random_closed_convex(rng);
    rec.check(is_convex(f) == is_convex_sampled(f, rng, 1000), [&] { return "structural vs sampled convexity: " + describe(f); });
    rec.check(approx_equal(negate_fn(negate_fn(f)), f, 0.0), [&] { return "double negation: " + describe(f); });
    const double x = random_dyadic(rng, 1024), r = random_dyadic(rng, 1024);
    rec.check(epi_contains(f, x, r) == hypo_contains(negate_fn(f), x, -r), [&] { return "epigraph/hypograph duality: " + describe(f); });
    const UpFunction h = closure_hull(f);
    rec.check(is_convex(h) && approx_equal(closure_hull(h), h, 1e-9), [&] { return "closure hull idempotence: " + describe(f); });

    DualElem xi = random_dual(rng, 0.5);
    xi.slope = random_dyadic(rng, 64);
    const double x1 = random_dyadic(rng, 1024), x2 = random_dyadic(rng, 1024), rr = random_dyadic(rng, 1024);
    rec.check(reinterpret_up(affine_split_sup(xi, rr, x1, x2)) == affine_eval({xi, rr}, x1 + x2),
              [&] { return "split-sup representation: " + to_string(xi) + str3("", rr, x1, x2); });
    rec.check(affine_split_sup_diff(xi, rr, x1, x2) == affine_eval({xi, rr}, x1 - x2),
              [&] { return "split-sup difference representation: " + to_string(xi) + str3("", rr, x1, x2); });

    if (xi.is_hat() && xi.slope != 0.0 && x1 != 0.0) {
      const UpReal whole = dual_eval(xi, x1 + (-x1));
      const UpReal split = isum(dual_eval(xi, x1), dual_eval(xi, -x1));
      rec.check(whole != split, [&] { return "hat additivity witness missing: " + to_string(xi); });
      const double tt = 1.0 + std::abs(random_dyadic(rng, 64));
      rec.check(dual_eval(xi, tt * x1) == scale(tt, dual_eval(xi, x1)), [&] { return "hat homogeneity: " + to_string(xi); });
    }
  }
}

void calculus_suite(Recorder& rec, long iters, std::mt19937_64& rng, double tol) {
  std::uniform_real_distribution<double> ux(-12.0, 12.0);
  const double offsets[] = {-3.0, 0.0, 3.0};
  for (long i = 0; i < iters; ++i) {
    const UpFunction g = random_closed_convex(rng);
    const UpFunction f = random_closed_convex(rng);
    const DualElem xi = random_dual(rng);
    const double r = offsets[i % 3];
    const double x = ux(rng);

    const auto yf = young_fenchel_check(g, xi, r, x);
    rec.check(yf[0] && yf[1] && yf[2], [&] { return "Young-Fenchel: " + describe(g) + " " + to_string(xi); });

    const auto am = affine_minorant_check(g, xi, r);
    rec.check(am.agree(), [&] { return "affine minorant conditions disagree: " + describe(g) + " " + to_string(xi) + " r=" + to_string(r); });

    rec.check(approx_equal(biconjugate(g), g, 1e-9), [&] { return "biconjugate: " + describe(g); });

    const auto ic = infconv_conjugate_check(f, g, xi, r, tol);
    rec.check(ic.equal, [&] { return "infconv conjugate: " + describe(f) + " | " + describe(g) + " " + to_string(xi); });

    const double x0 = std::round(ux(rng) * 8.0) / 8.0;
    rec.check(subdiff_conjugate_check(g, x0).ok(), [&] { return "subdifferential vs conjugate: " + describe(g) + " x0=" + to_string(x0); });

    std::vector<DualElem> probes{xi, DualElem::hat(-1.0), DualElem::hat(0.0), DualElem::hat(1.0)};
    if (g.is_pl()) {
      for (double s : g.as_pl().segment_slopes()) probes.push_back(DualElem::proper(s));
    }
    for (const auto& p : probes)
      rec.check(is_subgradient(g, x0, p) == is_dirderiv_minorant(g, x0, p),
                [&] { return "subgradient vs derivative minorant: " + describe(g) + " x0=" + to_string(x0) + " " + to_string(p); });

    for (double d : {-1.0, 1.0, x}) {
      const UpReal gd = dirderiv(g, x0, d);
      const double s = 0.5 + std::abs(ux(rng));
      rec.check(dirderiv(g, x0, s * d) == scale(s, gd) || close(dirderiv(g, x0, s * d), scale(s, gd), tol),
                [&] { return "derivative homogeneity: " + describe(g); });
      rec.check(gd == negate_down(dirderiv(negate_fn(g), x0, d)), [&] { return "derivative negation: " + describe(g); });
      if (g(x0).is_finite()) {
        const double t1 = std::ldexp(1.0, -std::uniform_int_distribution<int>(1, 20)(rng));
        rec.check(leq_tol(difference_quotient(g, x0, d, t1), difference_quotient(g, x0, d, 2.0 * t1), tol),
                  [&] { return "difference quotient monotonicity: " + describe(g); });
      }
    }
    const double y1 = ux(rng), y2 = ux(rng);
    rec.check(leq_tol(dirderiv(g, x0, y1 + y2), isum(dirderiv(g, x0, y1), dirderiv(g, x0, y2)), tol),
              [&] { return "derivative subadditivity: " + describe(g); });

    if (g.is_split() && (g.as_split().dom.lo == -kInf) != (g.as_split().dom.hi == kInf)) {
      const auto m = nonzero_hat_minorant(g);
      rec.check(m && m->xi.slope != 0.0 && affine_minorant_check(g, m->xi, m->r).conditions[0],
                [&] { return "nonzero hat minorant: " + describe(g); });
    }
  }
}

bool subset_of(const ConvexPoly2& p, const ConvexPoly2& q) {
  if (p.is_empty()) return true;
  if (q.is_empty()) return false;
  for (const auto& v : p.points())
    if (!q.contains(v, 1e-7)) return false;
  for (const auto& d : p.rays())
    if (!q.recedes(d, 1e-7)) return false;
  return true;
}

void setvalued_suite(Recorder& rec, long iters, std::mt19937_64& rng) {
  const auto cones = standard_cones();
  std::uniform_real_distribution<double> ux(-3.5, 3.5);
  for (long i = 0; i < iters; ++i) {
    const Cone2& c = cones[i % cones.size()];
    const UpSet a = random_upset(rng, c), a2 = random_upset(rng, c), b = random_upset(rng, c);

    const auto sd = setdiff_support_check(a, b);
    rec.check(sd.ok(), [&] { return "set difference: " + (sd.witnesses.empty() ? std::string() : sd.witnesses.front()); });

    const UpSet lhs = oplus(inf_family<UpSpace>({a, a2}, c), b);
    const UpSet rhs = inf_family<UpSpace>({oplus(a, b), oplus(a2, b)}, c);
    rec.check(lhs.same_set(rhs), [&] { return "inf distributes over the sum"; });
    const UpSet slhs = oplus(sup_family<UpSpace>({a, a2}, c), b);
    const UpSet srhs = sup_family<UpSpace>({oplus(a, b), oplus(a2, b)}, c);
    rec.check(subset_of(slhs.poly(), srhs.poly()), [&] { return "sup inclusion in the +C lattice"; });

    const DownSet d1 = DownSet::make(a.poly(), c), d2 = DownSet::make(a2.poly(), c), e = DownSet::make(b.poly(), c);
    const DownSet dl = oplus(sup_family<DownSpace>({d1, d2}, c), e);
    const DownSet dr = sup_family<DownSpace>({oplus(d1, e), oplus(d2, e)}, c);
    rec.check(dl.same_set(dr), [&] { return "sup distributes over the sum in the -C lattice"; });

    const double t = 0.25 + std::abs(ux(rng));
    const std::vector<UpSet> outs{lhs, rhs, slhs, srhs, sd.direct, scale_set(t, a), scale_set(0.0, a), set_idif(a, b)};
    bool inv = true;
    for (const auto& o : outs) inv = inv && o.invariant_holds();
    inv = inv && dl.invariant_holds() && dr.invariant_holds() && set_sdif(d1, e).invariant_holds();
    rec.check(inv, [&] { return "cone invariant violated by a set operation"; });
    rec.check(scale_set(t, oplus(a, b)).same_set(oplus(scale_set(t, a), scale_set(t, b))), [&] { return "scaling distributes"; });

    const SetValuedFn g = random_svfn(rng, c);
    const Vec2 zs = random_dual_direction(rng, c);
    const double slope = ux(rng), r = ux(rng);
    rec.check(sv_conjugate(g, {DualElem::hat(slope), r, zs}).same_set(sv_conjugate(g, {DualElem::proper(slope), r, Vec2::Zero()})),
              [&] { return "hat conjugate vs z*=0 conjugate"; });
    const double x = ux(rng);
    rec.check(sv_biconjugate(g, x).same_set(g(x)), [&] { return "set-valued biconjugate at x=" + to_string(x); });

    if (zs.norm() > 0.0) {
      const SetValuedFn s = conaffine_fn({DualElem::proper(slope), r, zs}, c);
      const Vec2 w = random_dual_direction(rng, c);
      const UpFunction phi = scalarize(s, w);
      const double cross = zs.x() * w.y() - zs.y() * w.x();
      const bool collinear = std::abs(cross) <= 1e-12 * zs.norm() * w.norm() && zs.dot(w) >= 0.0;
      bool ok;
      if (w.norm() == 0.0) ok = phi.is_pl() && close(phi(x), UpReal(0.0), 1e-9);
      else if (collinear) {
        const double tt = w.norm() / zs.norm();
        ok = phi.is_pl() && close(phi(x), UpReal(tt * (slope * x - r)), 1e-9);
      } else {
        ok = phi.is_bottom();
      }
      rec.check(ok, [&] { return "scalarized conaffine function: " + describe(phi); });
    }
  }
}

}  // namespace

std::vector<std::string> suite_names() { return {"extreal", "residuation", "scalar-fn", "calculus", "setvalued"}; }

SuiteResult run_suite(const std::string& name, long iters, std::uint64_t seed, double tol, std::size_t max_failures) {
  SuiteResult res;
  res.name = name;
  Recorder rec(res, max_failures);
  std::mt19937_64 rng(seed);
  if (name == "extreal") extreal_suite(rec, iters, rng, tol);
  else if (name == "residuation") residuation_suite(rec, iters, rng);
  else if (name == "scalar-fn") scalar_fn_suite(rec, iters, rng);
  else if (name == "calculus") calculus_suite(rec, iters, rng, tol);
  else if (name == "setvalued") setvalued_suite(rec, iters, rng);
  else throw std::invalid_argument("unknown suite '" + name + "'");
  return res;
}

}  // namespace extcvx
