#include "extcvx/json_io.hpp"

#include <cmath>

namespace extcvx {

namespace {

const Json& member(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw JsonInputError(path.empty() ? "/" : path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw JsonInputError(path + "/" + key, "missing member");
  return *it;
}

const Json& array_at(const Json& j, const std::string& path) {
  if (!j.is_array()) throw JsonInputError(path, "expected an array");
  return j;
}

double finite_number(const Json& j, const std::string& path) {
  double v = ext_from_json(j, path);
  if (!std::isfinite(v)) throw JsonInputError(path, "expected a finite number");
  return v;
}

template <int D>
Vec<D> vec_from_json(const Json& j, const std::string& path) {
  array_at(j, path);
  if (static_cast<int>(j.size()) != D)
    throw JsonInputError(path, "expected " + std::to_string(D) + " coordinates");
  Vec<D> v;
  for (int i = 0; i < D; ++i) v(i) = finite_number(j[i], path + "/" + std::to_string(i));
  return v;
}

template <int D>
Polyhedron<D> poly_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonInputError(path.empty() ? "/" : path, "expected an object");
  if (j.value("empty", false)) return Polyhedron<D>::empty();
  if (j.contains("h")) {
    const Json& hs = array_at(j["h"], path + "/h");
    std::vector<Halfspace<D>> out;
    for (std::size_t i = 0; i < hs.size(); ++i) {
      const std::string p = path + "/h/" + std::to_string(i);
      out.push_back({vec_from_json<D>(member(hs[i], "n", p), p + "/n"), ext_from_json(member(hs[i], "c", p), p + "/c")});
    }
    return Polyhedron<D>::from_h(std::move(out));
  }
  if (j.contains("v")) {
    const Json& vs = array_at(j["v"], path + "/v");
    std::vector<Vec<D>> pts, rays;
    for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(vec_from_json<D>(vs[i], path + "/v/" + std::to_string(i)));
    if (j.contains("rays")) {
      const Json& rs = array_at(j["rays"], path + "/rays");
      for (std::size_t i = 0; i < rs.size(); ++i)
        rays.push_back(vec_from_json<D>(rs[i], path + "/rays/" + std::to_string(i)));
    }
    return Polyhedron<D>::from_v(std::move(pts), std::move(rays));
  }
  throw JsonInputError(path.empty() ? "/" : path, "expected \"h\" or \"v\"");
}

template <int D>
Json poly_to_json(const Polyhedron<D>& p) {
  if (p.is_empty()) return Json{{"empty", true}};
  Json h = Json::array(), v = Json::array(), rays = Json::array();
  auto vec = [](const Vec<D>& x) {
    Json a = Json::array();
    for (int i = 0; i < D; ++i) a.push_back(x(i) + 0.0);
    return a;
  };
  for (const auto& hs : p.h()) h.push_back({{"n", vec(hs.n)}, {"c", hs.c + 0.0}});
  for (const auto& q : p.points()) v.push_back(vec(q));
  for (const auto& r : p.rays()) rays.push_back(vec(r));
  return Json{{"h", h}, {"v", v}, {"rays", rays}};
}

}  // namespace

double ext_from_json(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw JsonInputError(path.empty() ? "/" : path, "expected a number or \"inf\"/\"-inf\"");
}

Json ext_to_json(double v) {
  if (v == kInf) return "inf";
  if (v == -kInf) return "-inf";
  return v + 0.0;
}

UpFunction function_from_json(const Json& j, const std::string& path) {
  const std::string kind = [&] {
    const Json& k = member(j, "kind", path);
    if (!k.is_string()) throw JsonInputError(path + "/kind", "expected a string");
    return k.get<std::string>();
  }();
  if (kind == "top") return UpFunction::const_top();
  if (kind == "bottom") return UpFunction::const_bottom();
  if (kind == "improper") {
    double lo = ext_from_json(member(j, "domLo", path), path + "/domLo");
    double hi = ext_from_json(member(j, "domHi", path), path + "/domHi");
    if (lo == kInf || hi == -kInf) throw JsonInputError(path, "domain bounds out of range");
    return UpFunction::split(Interval{lo, hi});
  }
  if (kind != "pl") throw JsonInputError(path + "/kind", "unknown kind \"" + kind + "\"");
  const Json& bs = array_at(member(j, "breaks", path), path + "/breaks");
  std::vector<Breakpoint> breaks;
  for (std::size_t i = 0; i < bs.size(); ++i) {
    const std::string p = path + "/breaks/" + std::to_string(i);
    breaks.push_back({finite_number(member(bs[i], "x", p), p + "/x"), finite_number(member(bs[i], "v", p), p + "/v")});
  }
  std::optional<double> sl, sr;
  if (j.contains("slopeL") && !j["slopeL"].is_null()) sl = finite_number(j["slopeL"], path + "/slopeL");
  if (j.contains("slopeR") && !j["slopeR"].is_null()) sr = finite_number(j["slopeR"], path + "/slopeR");
  UpFunction f;
  try {
    f = UpFunction::pl(std::move(breaks), sl, sr);
  } catch (const std::invalid_argument& e) {
    throw JsonInputError(path.empty() ? "/" : path, e.what());
  }
  Interval d = f.as_pl().domain();
  if (j.contains("domLo")) d.lo = std::max(d.lo, ext_from_json(j["domLo"], path + "/domLo"));
  if (j.contains("domHi")) d.hi = std::min(d.hi, ext_from_json(j["domHi"], path + "/domHi"));
  if (d.is_empty()) throw JsonInputError(path, "empty domain");
  if (d == f.as_pl().domain()) return f;
  return restrict(f, d);
}

Json function_to_json(const UpFunction& f) {
  if (f.is_top()) return Json{{"kind", "top"}};
  if (f.is_bottom()) return Json{{"kind", "bottom"}};
  if (f.is_split()) {
    const Interval& d = f.as_split().dom;
    return Json{{"kind", "improper"}, {"domLo", ext_to_json(d.lo)}, {"domHi", ext_to_json(d.hi)}};
  }
  const PLData& p = f.as_pl();
  Json breaks = Json::array();
  for (const auto& b : p.breaks) breaks.push_back({{"x", b.x + 0.0}, {"v", b.v + 0.0}});
  Json out{{"kind", "pl"}, {"breaks", breaks}};
  if (p.slope_left) out["slopeL"] = *p.slope_left + 0.0;
  if (p.slope_right) out["slopeR"] = *p.slope_right + 0.0;
  const Interval d = p.domain();
  out["domLo"] = ext_to_json(d.lo);
  out["domHi"] = ext_to_json(d.hi);
  return out;
}

Json interval_to_json(const Interval& d) {
  if (d.is_empty()) return Json{{"empty", true}};
  return Json{{"lo", ext_to_json(d.lo)}, {"hi", ext_to_json(d.hi)}};
}

ConvexPoly2 poly2_from_json(const Json& j, const std::string& path) { return poly_from_json<2>(j, path); }
Json poly2_to_json(const ConvexPoly2& p) { return poly_to_json<2>(p); }
Vec2 vec2_from_json(const Json& j, const std::string& path) { return vec_from_json<2>(j, path); }

Cone2 cone_from_json(const Json& j, const std::string& path) {
  const Json& gs = array_at(member(j, "gen", path), path + "/gen");
  std::vector<Vec2> gens;
  for (std::size_t i = 0; i < gs.size(); ++i) gens.push_back(vec_from_json<2>(gs[i], path + "/gen/" + std::to_string(i)));
  return Cone2::generated(gens);
}

Json cone_to_json(const Cone2& c) {
  Json gens = Json::array();
  for (const auto& g : c.generators()) gens.push_back({g.x() + 0.0, g.y() + 0.0});
  return Json{{"gen", gens}};
}

SetValuedFn svfn_from_json(const Json& j, const std::string& path) {
  Cone2 cone = j.contains("cone") ? cone_from_json(j["cone"], path + "/cone") : Cone2();
  std::vector<Polyhedron3> pieces;
  if (j.contains("pieces")) {
    const Json& ps = array_at(j["pieces"], path + "/pieces");
    for (std::size_t i = 0; i < ps.size(); ++i)
      pieces.push_back(poly_from_json<3>(ps[i], path + "/pieces/" + std::to_string(i)));
  } else {
    pieces.push_back(poly_from_json<3>(j, path));
  }
  return SetValuedFn(std::move(pieces), cone);
}

Json svfn_to_json(const SetValuedFn& g) {
  Json pieces = Json::array();
  for (const auto& p : g.pieces()) pieces.push_back(poly_to_json<3>(p));
  return Json{{"cone", cone_to_json(g.cone())}, {"pieces", pieces}};
}

FiniteOrderedGroupoid groupoid_from_json(const Json& j, const std::string& path) {
  const Json& cj = array_at(member(j, "carrier", path), path + "/carrier");
  std::vector<std::string> carrier;
  for (std::size_t i = 0; i < cj.size(); ++i) {
    if (cj[i].is_string()) carrier.push_back(cj[i].get<std::string>());
    else if (cj[i].is_number()) carrier.push_back(cj[i].dump());
    else throw JsonInputError(path + "/carrier/" + std::to_string(i), "expected a label");
  }
  const int n = static_cast<int>(carrier.size());
  auto index = [&](const Json& e, const std::string& p) -> int {
    if (e.is_number_integer()) {
      int k = e.get<int>();
      if (k < 0 || k >= n) throw JsonInputError(p, "index out of range");
      return k;
    }
    std::string s = e.is_string() ? e.get<std::string>() : e.dump();
    for (int k = 0; k < n; ++k)
      if (carrier[k] == s) return k;
    throw JsonInputError(p, "unknown element " + s);
  };
  const Json& aj = array_at(member(j, "add", path), path + "/add");
  const Json& lj = array_at(member(j, "leq", path), path + "/leq");
  if (static_cast<int>(aj.size()) != n) throw JsonInputError(path + "/add", "expected " + std::to_string(n) + " rows");
  if (static_cast<int>(lj.size()) != n) throw JsonInputError(path + "/leq", "expected " + std::to_string(n) + " rows");
  std::vector<std::vector<int>> add(n, std::vector<int>(n));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int u = 0; u < n; ++u) {
    const std::string pa = path + "/add/" + std::to_string(u);
    const std::string pl = path + "/leq/" + std::to_string(u);
    if (!aj[u].is_array() || static_cast<int>(aj[u].size()) != n) throw JsonInputError(pa, "expected a row of length " + std::to_string(n));
    if (!lj[u].is_array() || static_cast<int>(lj[u].size()) != n) throw JsonInputError(pl, "expected a row of length " + std::to_string(n));
    for (int v = 0; v < n; ++v) {
      add[u][v] = index(aj[u][v], pa + "/" + std::to_string(v));
      const Json& e = lj[u][v];
      if (e.is_boolean()) leq[u][v] = e.get<bool>();
      else if (e.is_number_integer() && (e.get<int>() == 0 || e.get<int>() == 1)) leq[u][v] = e.get<int>() == 1;
      else throw JsonInputError(pl + "/" + std::to_string(v), "expected a boolean");
    }
  }
  try {
    return FiniteOrderedGroupoid(std::move(carrier), std::move(add), std::move(leq));
  } catch (const std::invalid_argument& e) {
    throw JsonInputError(path.empty() ? "/" : path, e.what());
  }
}

Json groupoid_to_json(const FiniteOrderedGroupoid& g) {
  Json add = Json::array(), leq = Json::array();
  for (int u = 0; u < g.size(); ++u) {
    Json ar = Json::array(), lr = Json::array();
    for (int v = 0; v < g.size(); ++v) {
      ar.push_back(g.label(g.add(u, v)));
      lr.push_back(static_cast<bool>(g.leq(u, v)));
    }
    add.push_back(ar);
    leq.push_back(lr);
  }
  return Json{{"carrier", g.carrier()}, {"add", add}, {"leq", leq}};
}

Json dual_to_json(const DualElem& xi) { return to_string(xi); }

DualElem dual_from_json(const Json& j, const std::string& path) {
  if (!j.is_string()) throw JsonInputError(path, "expected \"proper:<a>\" or \"hat:<a>\"");
  try {
    return parse_dual(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw JsonInputError(path, e.what());
  }
}

}  // namespace extcvx
