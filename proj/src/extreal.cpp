#include "extcvx/extreal.hpp"

#include <algorithm>
#include <cstdio>

namespace extcvx {

UpReal isum(UpReal a, UpReal b) {
  if (a.is_top() || b.is_top()) return UpReal::top();
  if (a.is_bottom() || b.is_bottom()) return UpReal::bottom();
  return UpReal(a.raw() + b.raw());
}

DownReal ssum(DownReal a, DownReal b) {
  if (a.is_bottom() || b.is_bottom()) return DownReal::bottom();
  if (a.is_top() || b.is_top()) return DownReal::top();
  return DownReal(a.raw() + b.raw());
}

UpReal idif(UpReal a, UpReal b) {
  if (a.is_bottom() || b.is_top()) return UpReal::bottom();
  if (a.is_top() || b.is_bottom()) return UpReal::top();
  return UpReal(a.raw() - b.raw());
}

DownReal sdif(DownReal a, DownReal b) {
  if (a.is_top() || b.is_bottom()) return DownReal::top();
  if (a.is_bottom() || b.is_top()) return DownReal::bottom();
  return DownReal(a.raw() - b.raw());
}

DownReal negate_up(UpReal a) { return DownReal(-a.raw()); }
UpReal negate_down(DownReal a) { return UpReal(-a.raw()); }

namespace {

template <class R>
R scale_impl(double t, R a) {
  if (!(t >= 0.0)) throw std::invalid_argument("scale: factor must be non-negative");
  if (t == 0.0) return R(0.0);
  if (!a.is_finite()) return a;
  return R(t * a.raw());
}

template <class R>
R inf_impl(std::span<const R> m) {
  R out = R::top();
  for (R x : m) out = std::min(out, x);
  return out;
}

template <class R>
R sup_impl(std::span<const R> m) {
  R out = R::bottom();
  for (R x : m) out = std::max(out, x);
  return out;
}

}  // namespace

UpReal scale(double t, UpReal a) { return scale_impl(t, a); }
DownReal scale(double t, DownReal a) { return scale_impl(t, a); }

UpReal inf_up(std::span<const UpReal> m) { return inf_impl(m); }
UpReal sup_up(std::span<const UpReal> m) { return sup_impl(m); }
DownReal inf_down(std::span<const DownReal> m) { return inf_impl(m); }
DownReal sup_down(std::span<const DownReal> m) { return sup_impl(m); }

std::string to_string(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace extcvx
