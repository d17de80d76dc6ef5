// Acceptance suite: one PASS/FAIL line per criterion, with its runtime.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "extcvx/calculus.hpp"
#include "extcvx/extreal.hpp"
#include "extcvx/random_objects.hpp"
#include "extcvx/residuation.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"
#include "extcvx/suites.hpp"
#include "../fixtures.hpp"
#include "../oracles.hpp"

using namespace extcvx;

namespace {

constexpr std::uint64_t kSeed = 20240601;

/// Collects the first few failure messages of a criterion.
struct Outcome {
  long checks = 0;
  long failures = 0;
  std::vector<std::string> notes;

  void expect(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (ok) return;
    ++failures;
    if (notes.size() < 5) notes.push_back(what());
  }
};

bool same_ext(double got, double want, double tol) {
  if (std::isinf(got) || std::isinf(want)) return got == want;
  return std::abs(got - want) <= tol;
}

std::string fmt(double v) { return to_string(v); }

// 1 -------------------------------------------------------------------------
Outcome infinity_tables() {
  Outcome o;
  const UpReal ut = UpReal::top(), ub = UpReal::bottom();
  const DownReal dt = DownReal::top(), db = DownReal::bottom();
  const struct {
    double got, want;
    const char* name;
  } table[] = {
      {idif(ut, ub).raw(), kInf, "inf -i -inf"},   {idif(ut, ut).raw(), -kInf, "inf -i inf"},
      {idif(ub, ut).raw(), -kInf, "-inf -i inf"},  {idif(ub, ub).raw(), -kInf, "-inf -i -inf"},
      {sdif(dt, dt).raw(), kInf, "inf -s inf"},    {sdif(dt, db).raw(), kInf, "inf -s -inf"},
      {sdif(db, db).raw(), kInf, "-inf -s -inf"},  {sdif(db, dt).raw(), -kInf, "-inf -s inf"},
  };
  for (const auto& e : table) o.expect(e.got == e.want, [&] { return std::string(e.name) + " = " + fmt(e.got); });
  for (double r : {-kInf, -1e300, -7.25, -0.0, 0.0, 1.0, 3e-12, 1e300, kInf}) {
    o.expect(idif(UpReal(r), ut) == ub, [&] { return "r -i inf at r=" + fmt(r); });
    o.expect(idif(ub, UpReal(r)) == ub, [&] { return "-inf -i r at r=" + fmt(r); });
    o.expect(sdif(DownReal(r), db) == dt, [&] { return "r -s -inf at r=" + fmt(r); });
    o.expect(sdif(dt, DownReal(r)) == dt, [&] { return "inf -s r at r=" + fmt(r); });
  }
  return o;
}

// 2 -------------------------------------------------------------------------
Outcome extreal_laws() {
  Outcome o;
  const SuiteResult r = run_suite("extreal", 100000, kSeed, 1e-12);
  o.checks = r.checks;
  o.failures = static_cast<long>(r.failures.size());
  for (std::size_t i = 0; i < r.failures.size() && i < 5; ++i) o.notes.push_back(r.failures[i]);
  return o;
}

// 3 -------------------------------------------------------------------------
Outcome residuation_equivalence() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 3);
  for (int i = 0; i < 200; ++i) {
    const FiniteOrderedGroupoid g = random_lattice_groupoid(rng, 6);
    for (Mode m : {Mode::Inf, Mode::Sup}) {
      const EquivalenceReport rep = check_equivalence(g, m);
      o.expect(rep.agree, [&] { return "groupoid " + std::to_string(i) + " disagrees in mode " + to_string(m); });
    }
  }
  const FiniteOrderedGroupoid s = three_point_groupoid(false);
  for (const auto& c : check_equivalence(s, Mode::Inf).reports)
    o.expect(!c.holds, [&] { return "sup-addition model satisfies inf-condition " + to_string(c.condition); });
  for (const auto& c : check_equivalence(s, Mode::Sup).reports)
    o.expect(c.holds, [&] { return "sup-addition model fails sup-condition " + to_string(c.condition); });
  return o;
}

// 4 -------------------------------------------------------------------------
Outcome conjugate_grid() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 4);
  constexpr double kLo = -1e3, kHi = 1e3;
  const long kSteps = std::lround((kHi - kLo) / 1e-3);
  std::vector<double> xs(kSteps + 1), vs(kSteps + 1);
  for (long i = 0; i <= kSteps; ++i) xs[i] = kLo + 1e-3 * static_cast<double>(i);
  for (int fi = 0; fi < 100; ++fi) {
    const UpFunction g = random_convex_pl(rng);
    const PLData& d = g.as_pl();
    // finite samples only
    std::size_t n = 0;
    std::vector<double> sx;
    sx.reserve(kSteps + 1);
    for (long i = 0; i <= kSteps; ++i) {
      const UpReal v = g(xs[i]);
      if (!v.is_finite()) continue;
      sx.push_back(xs[i]);
      vs[n++] = v.value();
    }
    const bool open_left = d.slope_left.has_value(), open_right = d.slope_right.has_value();
    std::vector<double> slopes;
    if (open_left) slopes.push_back(*d.slope_left);
    if (open_right) slopes.push_back(*d.slope_right);
    for (double s : d.segment_slopes()) slopes.push_back(s);
    while (slopes.size() < 50) slopes.push_back(std::uniform_int_distribution<int>(-384, 384)(rng) / 64.0);
    slopes.resize(50);
    // The maximum of a*x - v over the samples is attained at a vertex of
    // their lower convex hull, so the scan runs over the hull vertices only.
    std::vector<std::size_t> hull;
    for (std::size_t i = 0; i < n; ++i) {
      while (hull.size() >= 2) {
        const std::size_t p = hull[hull.size() - 2], q = hull.back();
        if ((sx[q] - sx[p]) * (vs[i] - vs[p]) - (vs[q] - vs[p]) * (sx[i] - sx[p]) > 0.0) break;
        hull.pop_back();
      }
      hull.push_back(i);
    }
    for (double a : slopes) {
      double best = -kInf;
      std::size_t arg = 0;
      for (std::size_t i : hull) {
        const double val = a * sx[i] - vs[i];
        if (val > best) best = val, arg = i;
      }
      double want = best;
      if (n > 1 && open_right && arg == n - 1 && (a * sx[n - 1] - vs[n - 1]) - (a * sx[n - 2] - vs[n - 2]) > 1e-7) want = kInf;
      if (n > 1 && open_left && arg == 0 && (a * sx[0] - vs[0]) - (a * sx[1] - vs[1]) > 1e-7) want = kInf;
      const double got = conjugate(g, DualElem::proper(a), 0.0).raw();
      o.expect(same_ext(got, want, 1e-6), [&] { return describe(g) + " at a=" + fmt(a) + ": " + fmt(got) + " vs grid " + fmt(want); });
    }
  }
  return o;
}

// 5 -------------------------------------------------------------------------
Outcome biconjugation() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 5);
  int kinds[4] = {0, 0, 0, 0};
  for (int i = 0; i < 100; ++i) {
    UpFunction g;
    switch (i % 4) {
      case 0: g = random_convex_pl(rng); break;
      case 1: {
        double a = random_dyadic(rng, 80) / 8.0, b = random_dyadic(rng, 80) / 8.0;
        if (a > b) std::swap(a, b);
        if (i % 3 == 0) a = -kInf;
        if (i % 5 == 0) b = kInf;
        g = UpFunction::split({a, b});
        break;
      }
      case 2: g = UpFunction::const_top(); break;
      default: g = UpFunction::const_bottom(); break;
    }
    kinds[g.is_pl() ? 0 : g.is_split() ? 1 : g.is_top() ? 2 : 3]++;
    const UpFunction bb = biconjugate(g);
    o.expect(approx_equal(bb, g, 1e-9), [&] { return describe(g) + " -> " + describe(bb); });
  }
  for (int k = 0; k < 4; ++k) o.expect(kinds[k] > 0, [&] { return "variant " + std::to_string(k) + " not covered"; });

  int nonconvex = 0;
  while (nonconvex < 50) {
    const UpFunction g = random_pl(rng);
    if (is_convex(g)) continue;
    ++nonconvex;
    const UpFunction bb = biconjugate(g);
    o.expect(approx_equal(bb, closure_hull(g), 1e-9), [&] { return "closure_hull mismatch for " + describe(g); });
    const PLData& d = g.as_pl();
    const oracle::LowerHull hull(oracle::sample(g, -20.0, 20.0, 40000), d.slope_left, d.slope_right);
    for (double x = -12.0; x <= 12.0; x += 0.375) {
      const double want = hull(x), got = bb(x).raw();
      o.expect(same_ext(got, want, 1e-6), [&] { return describe(g) + " at x=" + fmt(x) + ": " + fmt(got) + " vs hull " + fmt(want); });
    }
  }
  return o;
}

// 6 -------------------------------------------------------------------------
Outcome infconv_identity() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 6);
  for (int i = 0; i < 200; ++i) {
    const UpFunction f = random_closed_convex(rng), g = random_closed_convex(rng);
    std::vector<DualElem> duals{DualElem::hat(-1.0), DualElem::hat(0.0), DualElem::hat(1.0)};
    for (int k = 0; k < 3; ++k) duals.push_back(random_dual(rng, 0.0));
    duals.push_back(DualElem::hat(random_dyadic(rng, 24) / 8.0));
    for (const DualElem& xi : duals)
      for (double r : {-3.0, 0.0, 3.0}) {
        const InfconvConjugateReport rep = infconv_conjugate_check(f, g, xi, r, 1e-9);
        o.expect(rep.equal, [&] {
          return describe(f) + " / " + describe(g) + " " + to_string(xi) + " r=" + fmt(r) + ": " + to_string(rep.lhs) + " vs " +
                 to_string(rep.rhs);
        });
      }
  }
  return o;
}

/// Segment and tail slopes of a PL function.
std::vector<double> d_slopes(const UpFunction& g) {
  std::vector<double> s = g.as_pl().segment_slopes();
  if (g.as_pl().slope_left) s.push_back(*g.as_pl().slope_left);
  if (g.as_pl().slope_right) s.push_back(*g.as_pl().slope_right);
  return s;
}

// 7 -------------------------------------------------------------------------
Outcome dirderiv_subdiff() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 7);
  for (int i = 0; i < 100; ++i) {
    const UpFunction g = random_convex_pl(rng);
    const Interval dm = dom(g);
    for (int k = 0; k < 10; ++k) {
      // dyadic base point in (or at the edge of) the domain and dyadic direction
      double x0 = std::uniform_int_distribution<int>(-384, 384)(rng) / 32.0;
      x0 = std::clamp(x0, dm.lo, dm.hi);
      const double x = std::uniform_int_distribution<int>(-32, 32)(rng) / 8.0;
      const double want = oracle::finite_difference(g, x0, x);
      const double got = dirderiv(g, x0, x).raw();
      o.expect(!std::isnan(want) && same_ext(got, want, 1e-6),
               [&] { return describe(g) + " x0=" + fmt(x0) + " x=" + fmt(x) + ": " + fmt(got) + " vs " + fmt(want); });

      const SubdiffDescription sd = subdiff_extended(g, x0);
      std::vector<DualElem> probes{DualElem::hat(-1.0), DualElem::hat(0.0), DualElem::hat(1.0)};
      for (double s : d_slopes(g)) probes.push_back(DualElem::proper(s));
      for (int j = 0; j < 6; ++j) probes.push_back(DualElem::proper(std::uniform_int_distribution<int>(-40, 40)(rng) / 8.0));
      for (const DualElem& xi : probes) {
        const bool a = is_subgradient(g, x0, xi), b = is_dirderiv_minorant(g, x0, xi), c = sd.contains(xi);
        o.expect(a == b && b == c, [&] { return describe(g) + " x0=" + fmt(x0) + " " + to_string(xi) + " subgradient forms differ"; });
        // conjugate characterization: xi in the subdifferential iff g*(xi, xi(x0)) +inf g(x0) <= xi(0)
        if (!xi.is_hat()) {
          const UpReal lhs = isum(reinterpret_up(conjugate(g, xi, xi.slope * x0)), g(x0));
          const bool member = lhs.is_finite() ? lhs.value() <= 1e-9 * (1.0 + std::abs(g(x0).raw())) : lhs <= dual_eval(xi, 0.0);
          o.expect(member == a,
                   [&] { return describe(g) + " x0=" + fmt(x0) + " " + to_string(xi) + " conjugate characterization differs"; });
        }
      }
      const SubdiffConjugateReport rep = subdiff_conjugate_check(g, x0);
      o.expect(rep.ok(), [&] { return describe(g) + " x0=" + fmt(x0) + " subdiff_conjugate_check failed"; });
    }
  }
  return o;
}

// 8 -------------------------------------------------------------------------
Outcome set_difference() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 8);
  for (const Cone2& cone : standard_cones())
    for (int i = 0; i < 100; ++i) {
      const UpSet a = random_upset(rng, cone), b = random_upset(rng, cone);
      const SetDiffReport rep = setdiff_support_check(a, b);
      const ConvexPoly2 oracle_set = oracle::containment_difference(a.poly(), b.poly());
      const ConvexPoly2& direct = rep.direct.poly();
      const ConvexPoly2& support = rep.via_support.poly();
      auto agree = [](const ConvexPoly2& p, const ConvexPoly2& q) {
        if (p.is_empty() || q.is_empty()) return p.is_empty() == q.is_empty();
        return vertex_hausdorff(p, q) <= 1e-7 && p.same_set(q, 1e-7);
      };
      o.expect(agree(direct, support) && agree(direct, oracle_set), [&] {
        return "A=" + to_string(a.poly()) + " B=" + to_string(b.poly()) + ": shift " + to_string(direct) + ", support " +
               to_string(support) + ", containment " + to_string(oracle_set);
      });
      o.expect(rep.scalar_ok, [&] { return "support scalarization inequality failed for A=" + to_string(a.poly()); });
    }
  return o;
}

// 9 -------------------------------------------------------------------------
Outcome setvalued_conjugation() {
  Outcome o;
  std::mt19937_64 rng(kSeed + 9);
  const auto cones = standard_cones();
  for (int i = 0; i < 50; ++i) {
    const Cone2& cone = cones[i % cones.size()];
    const SetValuedFn g = random_svfn(rng, cone);
    std::vector<double> xs;
    for (const auto& p : g.hull().points()) xs.push_back(p.x());
    while (xs.size() < 20) xs.push_back(std::uniform_int_distribution<int>(-28, 28)(rng) / 8.0);
    for (int k = 0; k < 6; ++k) {
      const DualElem xi = k < 2 ? DualElem::hat(random_dyadic(rng, 16) / 8.0) : random_dual(rng, 0.0);
      const double r = random_dyadic(rng, 32) / 8.0;
      const Vec2 z = k == 5 ? Vec2::Zero() : random_dual_direction(rng, cone);
      const UpSet got = sv_conjugate(g, {xi, r, z});
      const ConvexPoly2 want = oracle::definitional_conjugate(g, xi, r, z, xs);
      o.expect(got.poly().same_set(want, 1e-7), [&] {
        return "graph " + std::to_string(i) + " " + to_string(xi) + " r=" + fmt(r) + ": " + to_string(got.poly()) + " vs " +
               to_string(want);
      });
      if (xi.is_hat()) {
        const UpSet zero = sv_conjugate(g, {DualElem::proper(xi.slope), r, Vec2::Zero()});
        o.expect(got.is_empty() == zero.is_empty() && got.is_whole() == zero.is_whole() && (got.is_empty() || got.is_whole()),
                 [&] { return "graph " + std::to_string(i) + " improper/zero identity fails for " + to_string(xi); });
      }
    }
    for (int k = 0; k < 10; ++k) {
      const double x = k < 5 && k < static_cast<int>(xs.size()) ? xs[k] : std::uniform_int_distribution<int>(-28, 28)(rng) / 8.0;
      const UpSet bb = sv_biconjugate(g, x);
      const UpSet gx = g(x);
      o.expect(bb.same_set(gx, 1e-7),
               [&] { return "graph " + std::to_string(i) + " x=" + fmt(x) + ": " + to_string(bb.poly()) + " vs " + to_string(gx.poly()); });
    }
  }
  return o;
}

// 10 ------------------------------------------------------------------------
Outcome fixtures() {
  Outcome o;
  using namespace fixture;
  const RawFn isum_fg = [](double x) { return inf_sum(f_example, g_example, x); };
  const RawFn ssum_fg = [](double x) { return sup_sum(f_example, g_example, x); };
  o.expect(epigraph_convex(f_example) && epigraph_convex(g_example), [] { return "operands lack convex epigraphs"; });
  o.expect(epigraph_convex(isum_fg), [] { return "inf-sum epigraph not convex"; });
  o.expect(!epigraph_convex(ssum_fg), [] { return "sup-sum epigraph convex"; });
  o.expect(!hypograph_convex(ssum_fg), [] { return "sup-sum hypograph convex"; });

  const UpFunction h = UpFunction::split({-kInf, 0.0});
  for (double x : grid(-3.0, 3.0, 0.125)) {
    for (double t : {0.125, 0.5, 2.0, 7.0})
      o.expect(h(t * x) == scale(t, h(x)), [&] { return "homogeneity fails at x=" + fmt(x) + " t=" + fmt(t); });
    o.expect(scale(0.0, h(x)) != h(0.0 * x), [&] { return "0*g(x) = g(0x) at x=" + fmt(x); });
  }

  const AffineDual hat{DualElem::hat(1.0), 0.0};
  o.expect(affine_eval(hat, 2.0 + -3.0) != isum(affine_eval(hat, 2.0), affine_eval(hat, -3.0)),
           [] { return "improper affine function additive at (2, -3)"; });

  std::mt19937_64 rng(kSeed + 10);
  for (const Cone2& cone : standard_cones())
    for (int i = 0; i < 20; ++i) {
      const UpSet a = random_upset(rng, cone), b = random_upset(rng, cone);
      const SetValuedFn g = random_svfn(rng, cone);
      const DualTriple d{random_dual(rng), random_dyadic(rng, 16) / 4.0, random_dual_direction(rng, cone)};
      const std::vector<std::pair<const char*, UpSet>> outs{
          {"oplus", oplus(a, b)},
          {"scale", scale_set(0.5, a)},
          {"scale0", scale_set(0.0, a)},
          {"inf", inf_family(std::vector<UpSet>{a, b}, cone)},
          {"sup", sup_family(std::vector<UpSet>{a, b}, cone)},
          {"difference", set_idif(a, b)},
          {"value", g(0.25)},
          {"conaffine", conaffine_eval(d, 0.25, cone)},
          {"conjugate", sv_conjugate(g, d)},
          {"biconjugate", sv_biconjugate(g, 0.25)},
      };
      for (const auto& [name, s] : outs)
        o.expect(s.invariant_holds(1e-9), [&, name = name] { return std::string(name) + " output not closed under +C"; });
    }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double limit_s;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "infinity tables exact", 1.0, infinity_tables},
      {2, "extended-real law suite (1e5 per law, tol 1e-12)", 10.0, extreal_laws},
      {3, "residuation condition equivalence", 30.0, residuation_equivalence},
      {4, "conjugate vs grid brute force", 30.0, conjugate_grid},
      {5, "biconjugation", 30.0, biconjugation},
      {6, "infimal-convolution conjugate identity", 20.0, infconv_identity},
      {7, "directional derivative and subdifferential", 20.0, dirderiv_subdiff},
      {8, "set difference formulas", 30.0, set_difference},
      {9, "set-valued conjugation and biconjugation", 60.0, setvalued_conjugation},
      {10, "fixtures and cone invariant", 5.0, fixtures},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    const Outcome o = c.run();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool ok = o.failures == 0 && secs <= c.limit_s;
    failed += !ok;
    std::printf("%s criterion %d: %s (%ld checks, %ld failures, %.2fs, limit %.0fs)\n", ok ? "PASS" : "FAIL", c.id, c.name,
                o.checks, o.failures, secs, c.limit_s);
    for (const auto& n : o.notes) std::printf("    %s\n", n.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
