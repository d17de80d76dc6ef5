#include "extcvx/scalar_fn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace extcvx {

std::string to_string(const Interval& d) {
  if (d.is_empty()) return "empty";
  return "[" + to_string(d.lo) + ", " + to_string(d.hi) + "]";
}

namespace {

bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1.0, std::abs(a), std::abs(b)});
}

constexpr double kCollinearTol = 1e-12;

template <class Space>
constexpr bool is_up() {
  return std::is_same_v<Space, UpSpace>;
}

}  // namespace

Interval PLData::domain() const {
  if (breaks.empty()) return Interval::empty();
  return {slope_left ? -kInf : breaks.front().x, slope_right ? kInf : breaks.back().x};
}

std::vector<double> PLData::segment_slopes() const {
  std::vector<double> s;
  for (std::size_t i = 0; i + 1 < breaks.size(); ++i)
    s.push_back((breaks[i + 1].v - breaks[i].v) / (breaks[i + 1].x - breaks[i].x));
  return s;
}

template <class Space>
ScalarFunction<Space> ScalarFunction<Space>::pl(std::vector<Breakpoint> breaks,
                                                std::optional<double> slope_left,
                                                std::optional<double> slope_right) {
  if (breaks.empty()) throw std::invalid_argument("pl: at least one breakpoint is required");
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    if (!std::isfinite(breaks[i].x) || !std::isfinite(breaks[i].v))
      throw std::invalid_argument("pl: breakpoint " + std::to_string(i) + " is not finite");
    if (i > 0 && !(breaks[i - 1].x < breaks[i].x))
      throw std::invalid_argument("pl: breakpoints must be strictly increasing in x");
  }
  if ((slope_left && !std::isfinite(*slope_left)) || (slope_right && !std::isfinite(*slope_right)))
    throw std::invalid_argument("pl: end slopes must be finite");

  // drop breakpoints where the incoming and outgoing slopes agree
  std::vector<Breakpoint> out;
  out.reserve(breaks.size());
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    std::optional<double> in, next;
    if (!out.empty())
      in = (breaks[i].v - out.back().v) / (breaks[i].x - out.back().x);
    else if (i == 0)
      in = slope_left;
    if (i + 1 < breaks.size())
      next = (breaks[i + 1].v - breaks[i].v) / (breaks[i + 1].x - breaks[i].x);
    else
      next = slope_right;
    bool last_left = out.empty() && i + 1 == breaks.size();
    if (in && next && close_rel(*in, *next, kCollinearTol) && !last_left) continue;
    out.push_back(breaks[i]);
  }
  if (out.empty()) out.push_back(breaks.front());
  PLData d{std::move(out), slope_left, slope_right};
  return ScalarFunction(std::move(d));
}

template <class Space>
ScalarFunction<Space> ScalarFunction<Space>::split(Interval dom) {
  if (std::isnan(dom.lo) || std::isnan(dom.hi)) throw std::invalid_argument("split: NaN bound");
  if (dom.is_empty()) return is_up<Space>() ? const_top() : const_bottom();
  if (dom.is_all()) return is_up<Space>() ? const_bottom() : const_top();
  if (dom.lo == kInf || dom.hi == -kInf) throw std::invalid_argument("split: degenerate interval at infinity");
  return ScalarFunction(SplitData{dom});
}

template <class Space>
typename ScalarFunction<Space>::Value ScalarFunction<Space>::operator()(double x) const {
  const Value off = is_up<Space>() ? Value::top() : Value::bottom();
  const Value on_split = is_up<Space>() ? Value::bottom() : Value::top();
  if (is_top()) return Value::top();
  if (is_bottom()) return Value::bottom();
  if (is_split()) return as_split().dom.contains(x) ? on_split : off;
  const PLData& d = as_pl();
  const auto& b = d.breaks;
  if (x < b.front().x) {
    if (!d.slope_left) return off;
    return Value(b.front().v + *d.slope_left * (x - b.front().x));
  }
  if (x > b.back().x) {
    if (!d.slope_right) return off;
    return Value(b.back().v + *d.slope_right * (x - b.back().x));
  }
  auto it = std::lower_bound(b.begin(), b.end(), x, [](const Breakpoint& p, double v) { return p.x < v; });
  if (it->x == x) return Value(it->v);
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  double t = (x - lo.x) / (hi.x - lo.x);
  return Value(lo.v + t * (hi.v - lo.v));
}

template class ScalarFunction<UpSpace>;
template class ScalarFunction<DownSpace>;

UpReal eval(const UpFunction& f, double x) { return f(x); }
DownReal eval(const DownFunction& f, double x) { return f(x); }

namespace {

template <class Space>
Interval dom_impl(const ScalarFunction<Space>& f) {
  if (f.is_pl()) return f.as_pl().domain();
  if (f.is_split()) return f.as_split().dom;
  bool everywhere = is_up<Space>() ? f.is_bottom() : f.is_top();
  return everywhere ? Interval::all() : Interval::empty();
}

}  // namespace

Interval dom(const UpFunction& f) { return dom_impl(f); }
Interval dom(const DownFunction& f) { return dom_impl(f); }

bool epi_contains(const UpFunction& f, double x, double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("epi_contains: r must be finite");
  return f(x) <= UpReal(r);
}

bool hypo_contains(const DownFunction& h, double x, double r) {
  if (!std::isfinite(r)) throw std::invalid_argument("hypo_contains: r must be finite");
  return DownReal(r) <= h(x);
}

namespace {

// Slopes in order: left tail (if any), segments, right tail (if any).
std::vector<double> all_slopes(const PLData& d) {
  std::vector<double> s;
  if (d.slope_left) s.push_back(*d.slope_left);
  for (double m : d.segment_slopes()) s.push_back(m);
  if (d.slope_right) s.push_back(*d.slope_right);
  return s;
}

bool monotone_slopes(const PLData& d, bool increasing) {
  auto s = all_slopes(d);
  for (std::size_t i = 1; i < s.size(); ++i) {
    double a = increasing ? s[i - 1] : s[i];
    double b = increasing ? s[i] : s[i - 1];
    if (a > b && !close_rel(a, b, kCollinearTol)) return false;
  }
  return true;
}

}  // namespace

bool is_convex(const UpFunction& f) { return !f.is_pl() || monotone_slopes(f.as_pl(), true); }
bool is_concave(const DownFunction& h) { return !h.is_pl() || monotone_slopes(h.as_pl(), false); }

bool is_convex_sampled(const UpFunction& f, std::mt19937_64& rng, int samples) {
  Interval d = dom(f);
  double lo = -10.0, hi = 10.0;
  if (f.is_pl()) {
    lo = std::min(lo, f.as_pl().breaks.front().x - 5.0);
    hi = std::max(hi, f.as_pl().breaks.back().x + 5.0);
  }
  if (!d.is_empty() && std::isfinite(d.lo)) lo = std::min(lo, d.lo - 5.0);
  if (!d.is_empty() && std::isfinite(d.hi)) hi = std::max(hi, d.hi + 5.0);
  std::uniform_real_distribution<double> ux(lo, hi), ut(0.0, 1.0);
  std::vector<double> anchors;
  if (f.is_pl())
    for (const auto& b : f.as_pl().breaks) anchors.push_back(b.x);
  if (!d.is_empty()) {
    if (std::isfinite(d.lo)) anchors.push_back(d.lo);
    if (std::isfinite(d.hi)) anchors.push_back(d.hi);
  }
  std::uniform_int_distribution<std::size_t> pick(0, anchors.empty() ? 0 : anchors.size() - 1);
  std::bernoulli_distribution use_anchor(0.3);
  auto draw = [&] { return !anchors.empty() && use_anchor(rng) ? anchors[pick(rng)] : ux(rng); };
  for (int k = 0; k < samples; ++k) {
    double x1 = draw(), x2 = draw();
    double t = ut(rng);
    if (t <= 0.0 || t >= 1.0 || x1 == x2) continue;
    double xm = std::clamp(t * x1 + (1 - t) * x2, std::min(x1, x2), std::max(x1, x2));
    UpReal lhs = f(xm);
    UpReal rhs = isum(scale(t, f(x1)), scale(1 - t, f(x2)));
    if (lhs.is_finite() && rhs.is_finite()) {
      if (lhs.raw() > rhs.raw() + 1e-9 * (1.0 + std::abs(rhs.raw()))) return false;
    } else if (lhs > rhs) {
      return false;
    }
  }
  return true;
}

UpFunction closure_hull(const UpFunction& f) {
  if (!f.is_pl()) return f;
  const PLData& d = f.as_pl();
  const auto& b = d.breaks;
  if (d.slope_left && d.slope_right && *d.slope_left > *d.slope_right) return UpFunction::const_bottom();
  const std::size_t n = b.size();
  std::size_t left = 0, right = n - 1;
  if (d.slope_left) {
    double best = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      double c = b[i].v - *d.slope_left * b[i].x;
      if (c < best) best = c, left = i;
    }
  }
  if (d.slope_right) {
    double best = kInf;
    for (std::size_t i = 0; i < n; ++i) {
      double c = b[i].v - *d.slope_right * b[i].x;
      if (c <= best) best = c, right = i;
    }
  }
  std::vector<Breakpoint> hull;
  for (std::size_t i = left; i <= right; ++i) {
    while (hull.size() >= 2) {
      const Breakpoint& p = hull[hull.size() - 2];
      const Breakpoint& q = hull.back();
      double cross = (q.x - p.x) * (b[i].v - p.v) - (q.v - p.v) * (b[i].x - p.x);
      if (cross <= 0) hull.pop_back();
      else break;
    }
    hull.push_back(b[i]);
  }
  return UpFunction::pl(std::move(hull), d.slope_left, d.slope_right);
}

namespace {

template <class To, class From>
ScalarFunction<To> negate_impl(const ScalarFunction<From>& f) {
  if (f.is_top()) return ScalarFunction<To>::const_bottom();
  if (f.is_bottom()) return ScalarFunction<To>::const_top();
  if (f.is_split()) return ScalarFunction<To>::split(f.as_split().dom);
  const PLData& d = f.as_pl();
  std::vector<Breakpoint> nb;
  for (const auto& p : d.breaks) nb.push_back({p.x, -p.v});
  std::optional<double> sl, sr;
  if (d.slope_left) sl = -*d.slope_left;
  if (d.slope_right) sr = -*d.slope_right;
  return ScalarFunction<To>::pl(std::move(nb), sl, sr);
}

}  // namespace

DownFunction negate_fn(const UpFunction& f) { return negate_impl<DownSpace>(f); }
UpFunction negate_fn(const DownFunction& h) { return negate_impl<UpSpace>(h); }

UpFunction restrict(const UpFunction& f, const Interval& d) {
  if (d.is_empty() || f.is_top()) return UpFunction::const_top();
  if (f.is_bottom()) return UpFunction::split(d);
  if (f.is_split()) return UpFunction::split(intersect(f.as_split().dom, d));
  const PLData& p = f.as_pl();
  Interval nd = intersect(p.domain(), d);
  if (nd.is_empty()) return UpFunction::const_top();
  std::vector<Breakpoint> nb;
  if (std::isfinite(nd.lo)) nb.push_back({nd.lo, f(nd.lo).raw()});
  for (const auto& q : p.breaks)
    if (nd.contains(q.x) && (nb.empty() || q.x > nb.back().x)) nb.push_back(q);
  if (std::isfinite(nd.hi) && (nb.empty() || nd.hi > nb.back().x)) nb.push_back({nd.hi, f(nd.hi).raw()});
  std::optional<double> sl = std::isfinite(nd.lo) ? std::nullopt : p.slope_left;
  std::optional<double> sr = std::isfinite(nd.hi) ? std::nullopt : p.slope_right;
  return UpFunction::pl(std::move(nb), sl, sr);
}

bool approx_equal(const UpFunction& f, const UpFunction& g, double tol) {
  if (f.data().index() != g.data().index()) return false;
  auto ends_close = [&](double a, double b) {
    if (std::isinf(a) || std::isinf(b)) return a == b;
    return close_rel(a, b, tol);
  };
  if (f.is_top() || f.is_bottom()) return true;
  Interval df = dom(f), dg = dom(g);
  if (!ends_close(df.lo, dg.lo) || !ends_close(df.hi, dg.hi)) return false;
  if (f.is_split()) return true;
  const PLData& a = f.as_pl();
  const PLData& b = g.as_pl();
  if (a.slope_left.has_value() != b.slope_left.has_value()) return false;
  if (a.slope_right.has_value() != b.slope_right.has_value()) return false;
  if (a.slope_left && !close_rel(*a.slope_left, *b.slope_left, tol)) return false;
  if (a.slope_right && !close_rel(*a.slope_right, *b.slope_right, tol)) return false;
  Interval common = intersect(df, dg);
  auto check = [&](double x) {
    x = std::clamp(x, common.lo, common.hi);
    return close_rel(f(x).raw(), g(x).raw(), tol);
  };
  for (const auto& p : a.breaks)
    if (!check(p.x)) return false;
  for (const auto& p : b.breaks)
    if (!check(p.x)) return false;
  return true;
}

std::string describe(const UpFunction& f) {
  std::ostringstream os;
  if (f.is_top()) return "const(+inf)";
  if (f.is_bottom()) return "const(-inf)";
  if (f.is_split()) return "split(-inf on " + to_string(f.as_split().dom) + ")";
  const PLData& d = f.as_pl();
  os << "pl(";
  if (d.slope_left) os << "slopeL=" << to_string(*d.slope_left) << " ";
  for (const auto& p : d.breaks) os << "(" << to_string(p.x) << "," << to_string(p.v) << ") ";
  if (d.slope_right) os << "slopeR=" << to_string(*d.slope_right);
  os << ")";
  return os.str();
}

// ---------------------------------------------------------------------------

DualElem DualElem::canonical() const {
  if (kind == DualKind::Proper) return *this;
  return hat(slope > 0 ? 1.0 : (slope < 0 ? -1.0 : 0.0));
}

bool operator==(const DualElem& a, const DualElem& b) {
  DualElem ca = a.canonical(), cb = b.canonical();
  return ca.kind == cb.kind && ca.slope == cb.slope;
}

AffineDual AffineDual::canonical() const {
  if (xi.kind == DualKind::Proper || xi.slope == 0.0) return *this;
  double s = std::abs(xi.slope);
  return {DualElem::hat(xi.slope / s), r / s};
}

UpReal affine_eval(const AffineDual& d, double x) {
  double v = d.xi.slope * x - d.r;
  if (d.xi.kind == DualKind::Proper) return UpReal(v);
  return v <= 0 ? UpReal::bottom() : UpReal::top();
}

DualElem dual_add(const DualElem& xi, const DualElem& eta) {
  if (xi.is_hat() && eta.is_hat()) return DualElem::hat(xi.slope + eta.slope);
  if (xi.is_hat()) return xi;
  if (eta.is_hat()) return eta;
  return DualElem::proper(xi.slope + eta.slope);
}

DualElem dual_scale(double t, const DualElem& xi) {
  if (!(t >= 0.0)) throw std::invalid_argument("dual_scale: factor must be non-negative");
  return {xi.kind, t * xi.slope};
}

DownReal affine_split_sup(const DualElem& xi, double r, double x1, double x2) {
  const double a = xi.slope;
  if (!xi.is_hat()) {
    // every split gives the same value; take r1 = r, r2 = 0
    return ssum(DownReal(a * x1 - r), DownReal(a * x2));
  }
  // +inf needs a split with a*x1 - r1 > 0 and a*x2 - r2 > 0, i.e.
  // r1 in (r - a*x2, a*x1); every other split yields -inf.
  double lo = r - a * x2, hi = a * x1;
  return lo < hi ? DownReal::top() : DownReal::bottom();
}

UpReal affine_split_sup_diff(const DualElem& xi, double r, double x1, double x2) {
  const double a = xi.slope;
  if (!xi.is_hat()) return idif(UpReal(a * x1 - r), UpReal(a * x2));
  // +inf needs a*x1 - r1 > 0 and a*x2 + r2 <= 0 with r2 = r - r1, i.e.
  // r1 in [r + a*x2, a*x1).
  double lo = r + a * x2, hi = a * x1;
  return lo < hi ? UpReal::top() : UpReal::bottom();
}

std::string to_string(const DualElem& xi) {
  return std::string(xi.is_hat() ? "hat:" : "proper:") + to_string(xi.slope);
}

DualElem parse_dual(const std::string& s) {
  auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("dual element must look like proper:<a> or hat:<a>");
  std::string kind = s.substr(0, colon), num = s.substr(colon + 1);
  double a = 0.0;
  try {
    std::size_t used = 0;
    a = std::stod(num, &used);
    if (used != num.size()) throw std::invalid_argument("trailing characters");
  } catch (const std::exception&) {
    throw std::invalid_argument("dual element slope is not a number: '" + num + "'");
  }
  if (!std::isfinite(a)) throw std::invalid_argument("dual element slope must be finite");
  if (kind == "proper") return DualElem::proper(a);
  if (kind == "hat") return DualElem::hat(a);
  throw std::invalid_argument("dual element kind must be 'proper' or 'hat', got '" + kind + "'");
}

}  // namespace extcvx
