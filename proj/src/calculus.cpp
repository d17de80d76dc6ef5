#include "extcvx/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace extcvx {

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

// Slope of a PL function just to the right (dir > 0) or left (dir < 0) of
// x0; nullopt when the domain does not extend to that side of x0.
std::optional<double> one_sided_slope(const PLData& d, double x0, int dir) {
  const auto& b = d.breaks;
  const std::size_t m = b.size();
  if (dir > 0) {
    if (x0 >= b.back().x) return d.slope_right;
    if (x0 < b.front().x) return d.slope_left;
    std::size_t k = std::upper_bound(b.begin(), b.end(), x0, [](double v, const Breakpoint& p) { return v < p.x; }) -
                    b.begin() - 1;
    return (b[k + 1].v - b[k].v) / (b[k + 1].x - b[k].x);
  }
  if (x0 <= b.front().x) return d.slope_left;
  if (x0 > b.back().x) return d.slope_right;
  std::size_t k = std::lower_bound(b.begin(), b.end(), x0, [](const Breakpoint& p, double v) { return p.x < v; }) -
                  b.begin();
  (void)m;
  return (b[k].v - b[k - 1].v) / (b[k].x - b[k - 1].x);
}

// Whether x0 + t*x lies in d for some t > 0 (x0 in d assumed).
bool reaches(const Interval& d, double x0, double x) {
  if (x > 0) return d.hi > x0;
  if (x < 0) return d.lo < x0;
  return d.contains(x0);
}

}  // namespace

UpReal dirderiv(const UpFunction& g, double x0, double x) {
  if (!is_convex(g)) throw std::invalid_argument("dirderiv: function is not convex");
  UpReal v0 = g(x0);
  if (v0.is_top()) return UpReal::bottom();
  if (v0.is_bottom()) return reaches(dom(g), x0, x) ? UpReal::bottom() : UpReal::top();
  if (x == 0.0) return UpReal(0.0);
  auto s = one_sided_slope(g.as_pl(), x0, x > 0 ? 1 : -1);
  if (!s) return UpReal::top();
  return UpReal(*s * x);
}

DownReal dirderiv(const DownFunction& h, double x0, double x) {
  if (!is_concave(h)) throw std::invalid_argument("dirderiv: function is not concave");
  DownReal v0 = h(x0);
  if (v0.is_bottom()) return DownReal::top();
  if (v0.is_top()) return reaches(dom(h), x0, x) ? DownReal::top() : DownReal::bottom();
  if (x == 0.0) return DownReal(0.0);
  auto s = one_sided_slope(h.as_pl(), x0, x > 0 ? 1 : -1);
  if (!s) return DownReal::bottom();
  return DownReal(*s * x);
}

UpReal difference_quotient(const UpFunction& g, double x0, double x, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("difference_quotient: t must be positive");
  return scale(1.0 / t, idif(g(x0 + t * x), g(x0)));
}

// ---------------------------------------------------------------------------

double support(const Interval& d, double a) {
  if (d.is_empty()) return -kInf;
  if (a > 0) return a * d.hi;
  if (a < 0) return a * d.lo;
  return 0.0;
}

bool SubdiffDescription::contains(const DualElem& xi) const {
  if (xi.is_hat()) {
    double c = xi.canonical().slope;
    return std::find(improper_part.begin(), improper_part.end(), c) != improper_part.end();
  }
  return proper_part.contains(xi.slope);
}

namespace {

// Canonical hats a in {-1, 0, 1} with dom g inside {x : a*(x - x0) <= 0}.
std::vector<double> improper_subgradients(const UpFunction& g, double x0) {
  std::vector<double> out;
  const Interval d = dom(g);
  for (double a : {-1.0, 0.0, 1.0})
    if (support(d, a) <= a * x0) out.push_back(a);
  return out;
}

// The classical subdifferential of a finite-at-x0 PL function: every
// breakpoint gives a one-sided bound and each tail bounds the slope.
Interval proper_subgradients(const PLData& d, double x0, double v0) {
  double lo = -kInf, hi = kInf;
  for (const auto& p : d.breaks) {
    if (p.x == x0) continue;
    double q = (p.v - v0) / (p.x - x0);
    if (p.x > x0) hi = std::min(hi, q);
    else lo = std::max(lo, q);
  }
  if (d.slope_left) lo = std::max(lo, *d.slope_left);
  if (d.slope_right) hi = std::min(hi, *d.slope_right);
  if (lo > hi) {
    if (close_rel(lo, hi, 1e-12)) return Interval::point(0.5 * (lo + hi));
    return Interval::empty();
  }
  return {lo, hi};
}

}  // namespace

SubdiffDescription subdiff_extended(const UpFunction& g, double x0) {
  SubdiffDescription sd;
  UpReal v0 = g(x0);
  if (v0.is_top()) {
    sd.improper_part = {0.0};
    return sd;
  }
  sd.improper_part = improper_subgradients(g, x0);
  if (v0.is_finite()) sd.proper_part = proper_subgradients(g.as_pl(), x0, v0.raw());
  return sd;
}

bool is_subgradient(const UpFunction& g, double x0, const DualElem& xi) {
  UpReal v0 = g(x0);
  if (xi.is_hat()) {
    double a = xi.canonical().slope;
    if (v0.is_top()) return a == 0.0;
    // xi(x - x0) = +inf needs g(x) -inf g(x0) = +inf, which for the
    // representable variants means g(x) = +inf
    return support(dom(g), a) <= a * x0;
  }
  if (!v0.is_finite()) return false;
  const PLData& d = g.as_pl();
  const double a = xi.slope;
  auto ok = [&](double x, double v) {
    double lhs = a * (x - x0), rhs = v - v0.raw();
    return lhs <= rhs || close_rel(lhs, rhs, 1e-12);
  };
  for (const auto& p : d.breaks)
    if (!ok(p.x, p.v)) return false;
  if (d.slope_left && a < *d.slope_left && !close_rel(a, *d.slope_left, 1e-12)) return false;
  if (d.slope_right && a > *d.slope_right && !close_rel(a, *d.slope_right, 1e-12)) return false;
  return true;
}

bool is_dirderiv_minorant(const UpFunction& g, double x0, const DualElem& xi) {
  for (double x : {-1.0, 0.0, 1.0}) {
    UpReal lhs = dual_eval(xi, x);
    UpReal rhs = dirderiv(g, x0, x);
    if (lhs.is_finite() && rhs.is_finite()) {
      if (lhs.raw() > rhs.raw() && !close_rel(lhs.raw(), rhs.raw(), 1e-12)) return false;
    } else if (lhs > rhs) {
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

DownReal conjugate(const UpFunction& g, const DualElem& xi, double r) {
  if (xi.is_hat()) return support(dom(g), xi.slope) <= r ? DownReal::bottom() : DownReal::top();
  if (g.is_top()) return DownReal::bottom();
  if (!g.is_pl()) return DownReal::top();
  const PLData& d = g.as_pl();
  const double a = xi.slope;
  if (d.slope_left && a < *d.slope_left) return DownReal::top();
  if (d.slope_right && a > *d.slope_right) return DownReal::top();
  double best = -kInf;
  for (const auto& p : d.breaks) best = std::max(best, a * p.x - p.v);
  return DownReal(best - r);
}

UpFunction legendre(const UpFunction& g) {
  if (g.is_top()) return UpFunction::const_bottom();
  if (!g.is_pl()) return UpFunction::const_top();
  if (!is_convex(g)) throw std::invalid_argument("legendre: function is not convex");
  const PLData& d = g.as_pl();
  const auto& b = d.breaks;
  const auto s = d.segment_slopes();
  std::vector<Breakpoint> out;
  auto push = [&](double a, double v) {
    if (out.empty() || a > out.back().x) out.push_back({a, v});
  };
  if (d.slope_left) push(*d.slope_left, *d.slope_left * b.front().x - b.front().v);
  for (std::size_t j = 0; j < s.size(); ++j) push(s[j], s[j] * b[j].x - b[j].v);
  if (d.slope_right) push(*d.slope_right, *d.slope_right * b.back().x - b.back().v);
  if (out.empty()) out.push_back({0.0, -b.front().v});
  std::optional<double> sl, sr;
  if (!d.slope_left) sl = b.front().x;
  if (!d.slope_right) sr = b.back().x;
  return UpFunction::pl(std::move(out), sl, sr);
}

DownReal ConjugateCurve::value(const DualElem& xi, double r) const {
  if (xi.is_hat()) return support(dom_g, xi.slope) <= r ? DownReal::bottom() : DownReal::top();
  return ssum(reinterpret_down(base(xi.slope)), DownReal(-r));
}

ConjugateCurve conjugate_curve(const UpFunction& g) {
  ConjugateCurve c{UpFunction::const_top(), dom(g)};
  if (g.is_top()) {
    c.base = UpFunction::const_bottom();
  } else if (g.is_pl()) {
    UpFunction h = closure_hull(g);
    c.base = h.is_pl() ? legendre(h) : UpFunction::const_top();
  }
  return c;
}

std::array<bool, 3> young_fenchel_check(const UpFunction& g, const DualElem& xi, double r, double x) {
  UpReal lhs = affine_eval({xi, r}, x);
  UpReal gx = g(x);
  UpReal c = reinterpret_up(conjugate(g, xi, r));
  return {idif(lhs, gx) <= c, lhs <= isum(gx, c), idif(lhs, c) <= gx};
}

// ---------------------------------------------------------------------------

namespace {

struct Piece {
  double slope;
  double dx;
  double dv;
  bool tail;
};

// Index of a breakpoint at which `a` is a subgradient of the convex PL data.
std::size_t anchor_index(const PLData& d, double a) {
  const auto s = d.segment_slopes();
  const std::size_t m = d.breaks.size();
  std::size_t best = 0;
  double best_gap = kInf;
  for (std::size_t i = 0; i < m; ++i) {
    double lo = i == 0 ? d.slope_left.value_or(-kInf) : s[i - 1];
    double hi = i + 1 == m ? d.slope_right.value_or(kInf) : s[i];
    double gap = std::max({0.0, lo - a, a - hi});
    if (gap == 0.0) return i;
    if (gap < best_gap) best_gap = gap, best = i;
  }
  return best;
}

// Pieces leaving the anchor to the right (ascending slopes) or to the left
// (descending slopes); a tail ends the list.
std::vector<Piece> pieces(const PLData& d, std::size_t anchor, bool right) {
  std::vector<Piece> out;
  const auto& b = d.breaks;
  if (right) {
    for (std::size_t j = anchor; j + 1 < b.size(); ++j)
      out.push_back({(b[j + 1].v - b[j].v) / (b[j + 1].x - b[j].x), b[j + 1].x - b[j].x, b[j + 1].v - b[j].v, false});
    if (d.slope_right) out.push_back({*d.slope_right, 0, 0, true});
  } else {
    for (std::size_t j = anchor; j > 0; --j)
      out.push_back({(b[j].v - b[j - 1].v) / (b[j].x - b[j - 1].x), b[j].x - b[j - 1].x, b[j].v - b[j - 1].v, false});
    if (d.slope_left) out.push_back({*d.slope_left, 0, 0, true});
  }
  return out;
}

std::vector<Piece> merge_pieces(const std::vector<Piece>& p, const std::vector<Piece>& q, bool ascending) {
  std::vector<Piece> out;
  std::size_t i = 0, j = 0;
  auto before = [&](const Piece& a, const Piece& b) {
    if (a.slope == b.slope) return !a.tail;
    return ascending ? a.slope < b.slope : a.slope > b.slope;
  };
  while (i < p.size() || j < q.size()) {
    if (j == q.size() || (i < p.size() && before(p[i], q[j]))) out.push_back(p[i++]);
    else out.push_back(q[j++]);
    if (out.back().tail) break;
  }
  return out;
}

}  // namespace

UpFunction infconv(const UpFunction& f, const UpFunction& g) {
  if (!is_convex(f) || !is_convex(g)) throw std::invalid_argument("infconv: both arguments must be convex");
  if (f.is_top() || g.is_top()) return UpFunction::const_top();
  if (!f.is_pl() || !g.is_pl()) return UpFunction::split(minkowski(dom(f), dom(g)));
  const PLData& a = f.as_pl();
  const PLData& b = g.as_pl();
  const double lo = std::max(a.slope_left.value_or(-kInf), b.slope_left.value_or(-kInf));
  const double hi = std::min(a.slope_right.value_or(kInf), b.slope_right.value_or(kInf));
  if (lo > hi) return UpFunction::split(minkowski(dom(f), dom(g)));
  const double slope = std::clamp(0.0, lo, hi);
  const std::size_t ia = anchor_index(a, slope), ib = anchor_index(b, slope);
  double x = a.breaks[ia].x + b.breaks[ib].x;
  double v = a.breaks[ia].v + b.breaks[ib].v;

  std::vector<Breakpoint> right{{x, v}};
  std::optional<double> sr, sl;
  for (const Piece& p : merge_pieces(pieces(a, ia, true), pieces(b, ib, true), true)) {
    if (p.tail) {
      sr = p.slope;
      break;
    }
    right.push_back({right.back().x + p.dx, right.back().v + p.dv});
  }
  std::vector<Breakpoint> left;
  double lx = x, lv = v;
  for (const Piece& p : merge_pieces(pieces(a, ia, false), pieces(b, ib, false), false)) {
    if (p.tail) {
      sl = p.slope;
      break;
    }
    lx -= p.dx;
    lv -= p.dv;
    left.push_back({lx, lv});
  }
  std::reverse(left.begin(), left.end());
  left.insert(left.end(), right.begin(), right.end());
  return UpFunction::pl(std::move(left), sl, sr);
}

InfconvConjugateReport infconv_conjugate_check(const UpFunction& f, const UpFunction& g, const DualElem& xi,
                                               double r, double tol) {
  InfconvConjugateReport rep;
  rep.lhs = conjugate(infconv(f, g), xi, r);
  if (xi.is_hat()) {
    // +inf iff some r1 has both f*(xi, r1) = +inf and g*(xi, r - r1) = +inf,
    // i.e. r1 in (r - s_g, s_f)
    double sf = support(dom(f), xi.slope), sg = support(dom(g), xi.slope);
    double lo = r - sg, hi = sf;
    rep.rhs = lo < hi ? DownReal::top() : DownReal::bottom();
  } else {
    rep.rhs = ssum(ssum(conjugate(f, xi, 0.0), conjugate(g, xi, 0.0)), DownReal(-r));
  }
  if (rep.lhs.is_finite() && rep.rhs.is_finite())
    rep.equal = close_rel(rep.lhs.raw(), rep.rhs.raw(), tol);
  else
    rep.equal = rep.lhs == rep.rhs;
  return rep;
}

UpFunction biconjugate(const UpFunction& g) {
  const ConjugateCurve c = conjugate_curve(g);
  const UpFunction proper_branch = legendre(c.base);
  // improper branch: hats whose offset sits at a domain end; each hat with
  // g*(hat, r) = -inf contributes +inf off its domain
  Interval keep = Interval::all();
  const Interval d = c.dom_g;
  struct Cand {
    double a, r;
  };
  std::vector<Cand> cands{{0.0, -1.0}};
  if (!d.is_empty() && std::isfinite(d.hi)) cands.push_back({1.0, d.hi});
  if (!d.is_empty() && std::isfinite(d.lo)) cands.push_back({-1.0, -d.lo});
  for (const Cand& k : cands) {
    if (!c.value(DualElem::hat(k.a), k.r).is_bottom()) continue;
    Interval h = k.a > 0   ? Interval{-kInf, k.r}
                 : k.a < 0 ? Interval{-k.r, kInf}
                           : (k.r >= 0 ? Interval::all() : Interval::empty());
    keep = intersect(keep, h);
  }
  return restrict(proper_branch, keep);
}

// ---------------------------------------------------------------------------

SubdiffConjugateReport subdiff_conjugate_check(const UpFunction& g, double x0) {
  SubdiffConjugateReport rep;
  const SubdiffDescription sd = subdiff_extended(g, x0);
  const UpReal v0 = g(x0);
  rep.in_domain = !v0.is_top();
  if (!rep.in_domain) {
    rep.only_bottom = sd.proper_part.is_empty() && sd.improper_part == std::vector<double>{0.0};
    if (!rep.only_bottom) rep.mismatches.push_back("outside the domain the subdifferential must be {-inf}");
    return rep;
  }
  std::vector<double> probes{0.0};
  if (g.is_pl()) {
    const PLData& d = g.as_pl();
    std::vector<double> s = d.segment_slopes();
    if (d.slope_left) s.insert(s.begin(), *d.slope_left);
    if (d.slope_right) s.push_back(*d.slope_right);
    for (std::size_t i = 0; i < s.size(); ++i) {
      probes.push_back(s[i]);
      if (i + 1 < s.size()) probes.push_back(0.5 * (s[i] + s[i + 1]));
    }
    if (!s.empty()) {
      probes.push_back(s.front() - 1.0);
      probes.push_back(s.back() + 1.0);
    }
  }
  for (double a : probes) {
    bool member = sd.contains(DualElem::proper(a));
    UpReal lhs = isum(reinterpret_up(conjugate(g, DualElem::proper(a), a * x0)), v0);
    bool by_conj = lhs.is_finite() ? lhs.raw() <= 1e-9 * std::max(1.0, std::abs(v0.raw()))
                                   : lhs.is_bottom();
    if (member != by_conj) {
      rep.proper_agree = false;
      rep.mismatches.push_back("proper:" + to_string(a));
    }
  }
  for (double a : {-1.0, 0.0, 1.0}) {
    bool member = sd.contains(DualElem::hat(a));
    UpReal lhs = isum(reinterpret_up(conjugate(g, DualElem::hat(a), a * x0)), v0);
    bool by_conj = lhs <= dual_eval(DualElem::hat(a), 0.0);
    if (member != by_conj) {
      rep.improper_agree = false;
      rep.mismatches.push_back("hat:" + to_string(a));
    }
  }
  return rep;
}

bool AffineMinorantReport::agree() const {
  if (conditions[1] != conditions[0] || conditions[2] != conditions[0]) return false;
  if (conditions[3] != conditions[4]) return false;
  if (!coincident_infinity && conditions[3] != conditions[0]) return false;
  if (domain_condition) {
    if (*domain_condition != conditions[0]) return false;
    if (conditions[0] && !sup_b.is_bottom()) return false;
    if (conditions[0] && !coincident_infinity && !inf_d.is_top()) return false;
  }
  return true;
}

AffineMinorantReport affine_minorant_check(const UpFunction& g, const DualElem& xi, double r) {
  AffineMinorantReport rep;
  const AffineDual aff{xi, r};
  const double a = xi.slope;
  const Interval d = dom(g);

  std::vector<double> xs{0.0};
  double reach = 1.0;
  if (g.is_pl())
    for (const auto& p : g.as_pl().breaks) xs.push_back(p.x), reach = std::max(reach, std::abs(p.x));
  if (!d.is_empty()) {
    for (double e : {d.lo, d.hi})
      if (std::isfinite(e)) xs.push_back(e), reach = std::max(reach, std::abs(e));
  }
  if (a != 0.0) {
    double t = r / a;
    double delta = 1e-7 * (1.0 + std::abs(t));
    xs.insert(xs.end(), {t, t - delta, t + delta});
    reach = std::max(reach, std::abs(t) + delta);
  }
  const bool proper_pl = g.is_pl() && !xi.is_hat();
  if (!proper_pl) {
    xs.push_back(2.0 * reach + 1.0);
    xs.push_back(-2.0 * reach - 1.0);
  }

  // tails of a PL function against a proper functional: the gap
  // xi_r - g is affine there, so only its slope matters
  bool tail_violation = false;
  if (proper_pl) {
    const PLData& p = g.as_pl();
    if (p.slope_right && a > *p.slope_right) tail_violation = true;
    if (p.slope_left && a < *p.slope_left) tail_violation = true;
  }

  bool cond_a = !tail_violation;
  DownReal sup_b = tail_violation ? DownReal::top() : DownReal::bottom();
  DownReal sup_c = sup_b;
  UpReal inf_d = tail_violation ? UpReal::bottom() : UpReal::top();
  DownReal inf_e = tail_violation ? DownReal::bottom() : DownReal::top();
  for (double x : xs) {
    UpReal l = affine_eval(aff, x);
    UpReal gx = g(x);
    if (!(l <= gx)) cond_a = false;
    if (!l.is_finite() && l == gx) rep.coincident_infinity = true;
    sup_b = std::max(sup_b, reinterpret_down(idif(l, gx)));
    sup_c = std::max(sup_c, ssum(reinterpret_down(l), negate_up(gx)));
    inf_d = std::min(inf_d, idif(gx, l));
    inf_e = std::min(inf_e, ssum(reinterpret_down(gx), negate_up(l)));
  }
  rep.conditions = {cond_a, sup_b <= DownReal(0.0), sup_c <= DownReal(0.0), inf_d >= UpReal(0.0),
                    inf_e >= DownReal(0.0)};
  rep.sup_b = sup_b;
  rep.inf_d = inf_d;
  if (xi.is_hat()) rep.domain_condition = support(d, a) <= r;
  return rep;
}

std::optional<AffineDual> nonzero_hat_minorant(const UpFunction& g) {
  if (g.is_top()) return AffineDual{DualElem::hat(1.0), 0.0};
  if (!g.is_split()) return std::nullopt;
  const Interval d = g.as_split().dom;
  if (std::isfinite(d.hi)) return AffineDual{DualElem::hat(1.0), d.hi};
  if (std::isfinite(d.lo)) return AffineDual{DualElem::hat(-1.0), -d.lo};
  return std::nullopt;
}

}  // namespace extcvx
