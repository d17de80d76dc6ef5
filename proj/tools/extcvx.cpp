#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "extcvx/calculus.hpp"
#include "extcvx/json_io.hpp"
#include "extcvx/residuation.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"
#include "extcvx/suites.hpp"
#include "svg.hpp"

using namespace extcvx;

namespace {

struct Options {
  std::string file;
  std::string file2;
  std::uint64_t seed = 0;
  long iters = 1000;
  double tol = 1e-9;
  std::string plot;
  std::string csv;
  std::string format = "json";
  std::string xi;
  double r = 0.0;
  std::vector<double> x;
  double x0 = 0.0;
  std::vector<double> zstar;
  std::string suite = "all";
  std::string mode = "both";
};

/// Raised for exit code 1 after the result has been written.
struct SuiteFailure {};

Json read_json(const std::string& path) {
  if (path.empty()) throw JsonInputError("", "no input file given");
  std::ifstream is(path);
  if (!is) throw JsonInputError("", "cannot open " + path);
  try {
    return Json::parse(is);
  } catch (const Json::parse_error& e) {
    throw JsonInputError("", std::string("parse error in ") + path + ": " + e.what());
  }
}

DualElem dual_flag(const std::string& s) {
  if (s.empty()) throw JsonInputError("--xi", "missing dual element");
  try {
    return parse_dual(s);
  } catch (const std::invalid_argument& e) {
    throw JsonInputError("--xi", e.what());
  }
}

Vec2 zstar_flag(const std::vector<double>& v) {
  if (v.size() != 2) throw JsonInputError("--zstar", "expected two numbers a,b");
  return Vec2(v[0], v[1]);
}

UpFunction dual_as_function(const DualElem& xi, double r) {
  const double a = xi.slope;
  if (!xi.is_hat()) return UpFunction::pl({{0.0, -r}}, a, a);
  if (a > 0.0) return UpFunction::split({-kInf, r / a});
  if (a < 0.0) return UpFunction::split({r / a, kInf});
  return r >= 0.0 ? UpFunction::const_bottom() : UpFunction::const_top();
}

std::string csv_cell(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

/// CSV of sampled curves on the plotting window of the first one.
std::string curves_csv(const std::vector<svg::Curve>& curves) {
  std::vector<UpFunction> fs;
  for (const auto& c : curves) fs.push_back(c.f);
  const auto [lo, hi] = svg::plot_window(fs);
  std::ostringstream os;
  os << "x";
  for (const auto& c : curves) os << "," << c.label;
  os << "\n";
  constexpr int kSamples = 200;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = lo + (hi - lo) * i / kSamples;
    os << csv_cell(ext_to_json(x));
    for (const auto& c : curves) os << "," << csv_cell(ext_to_json(c.f(x)));
    os << "\n";
  }
  return os.str();
}

std::string regions_csv(const std::vector<svg::Region>& regions) {
  std::ostringstream os;
  os << "region,kind,z1,z2\n";
  for (const auto& r : regions) {
    for (const auto& p : r.poly.points()) os << r.label << ",point," << csv_cell(p.x() + 0.0) << "," << csv_cell(p.y() + 0.0) << "\n";
    for (const auto& d : r.poly.rays()) os << r.label << ",ray," << csv_cell(d.x() + 0.0) << "," << csv_cell(d.y() + 0.0) << "\n";
  }
  return os.str();
}

void emit_curves(const Options& o, const std::vector<svg::Curve>& curves) {
  if (!o.plot.empty()) {
    std::vector<UpFunction> fs;
    for (const auto& c : curves) fs.push_back(c.f);
    const auto [lo, hi] = svg::plot_window(fs);
    svg::write_file(o.plot, svg::plot_functions(curves, lo, hi));
  }
  if (!o.csv.empty()) svg::write_file(o.csv, curves_csv(curves));
}

void emit_regions(const Options& o, const std::vector<svg::Region>& regions) {
  if (!o.plot.empty()) svg::write_file(o.plot, svg::plot_regions(regions));
  if (!o.csv.empty()) svg::write_file(o.csv, regions_csv(regions));
}

void print(const Options& o, const Json& result) {
  if (o.format == "json") {
    std::cout << result.dump(2) << "\n";
    return;
  }
  // csv: one row per rows-entry when present, otherwise the flattened object
  if (result.contains("rows") && result["rows"].is_array() && !result["rows"].empty()) {
    const Json& rows = result["rows"];
    std::vector<std::string> keys;
    for (auto it = rows[0].begin(); it != rows[0].end(); ++it) keys.push_back(it.key());
    std::stable_partition(keys.begin(), keys.end(), [](const std::string& k) { return k == "x"; });
    for (std::size_t k = 0; k < keys.size(); ++k) std::cout << (k ? "," : "") << keys[k];
    std::cout << "\n";
    for (const auto& row : rows) {
      for (std::size_t k = 0; k < keys.size(); ++k) std::cout << (k ? "," : "") << csv_cell(row.value(keys[k], Json()));
      std::cout << "\n";
    }
    return;
  }
  std::cout << "key,value\n";
  const Json flat = result.flatten();
  for (const auto& [k, v] : flat.items()) std::cout << k << "," << csv_cell(v) << "\n";
}

Json report_json(const AffineMinorantReport& rep) {
  Json conds = Json::array();
  for (bool c : rep.conditions) conds.push_back(c);
  Json j{{"conditions", conds},
         {"supB", ext_to_json(rep.sup_b)},
         {"infD", ext_to_json(rep.inf_d)},
         {"coincidentInfinity", rep.coincident_infinity},
         {"agree", rep.agree()}};
  if (rep.domain_condition) j["domainCondition"] = *rep.domain_condition;
  return j;
}

// ---------------------------------------------------------------------------

Json cmd_eval(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  if (o.x.empty()) throw JsonInputError("--x", "at least one evaluation point is required");
  Json rows = Json::array();
  for (double x : o.x) rows.push_back({{"x", x}, {"value", ext_to_json(f(x))}});
  emit_curves(o, {{"f", f}});
  return Json{{"dom", interval_to_json(dom(f))}, {"convex", is_convex(f)}, {"rows", rows}};
}

Json cmd_dirderiv(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  if (o.x.empty()) throw JsonInputError("--x", "a direction is required");
  Json rows = Json::array();
  for (double x : o.x) rows.push_back({{"x", x}, {"value", ext_to_json(dirderiv(f, o.x0, x))}});
  if (!o.plot.empty() || !o.csv.empty()) {
    const UpReal up = dirderiv(f, o.x0, 1.0), down = dirderiv(f, o.x0, -1.0);
    UpFunction d = UpFunction::const_top();
    if (up.is_finite() && down.is_finite())
      d = UpFunction::pl({{0.0, 0.0}}, -down.value(), up.value());
    emit_curves(o, {{"f", f}, {"dirderiv", d}});
  }
  Json out{{"x0", o.x0}, {"rows", rows}};
  if (rows.size() == 1) out["value"] = rows[0]["value"];
  return out;
}

Json cmd_subdiff(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  const SubdiffDescription s = subdiff_extended(f, o.x0);
  Json improper = Json::array();
  for (double a : s.improper_part) improper.push_back(to_string(DualElem::hat(a)));
  const SubdiffConjugateReport rep = subdiff_conjugate_check(f, o.x0);
  emit_curves(o, {{"f", f}});
  return Json{{"x0", o.x0},
              {"proper", interval_to_json(s.proper_part)},
              {"improper", improper},
              {"containsBottom", s.contains_bottom},
              {"conjugateCharacterization", rep.ok()}};
}

Json cmd_conjugate(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  const ConjugateCurve curve = conjugate_curve(f);
  std::vector<svg::Curve> curves{{"f", f}, {"conjugate(a, 0)", curve.base}};
  emit_curves(o, curves);
  if (o.xi.empty()) return Json{{"proper", function_to_json(curve.base)}, {"domain", interval_to_json(curve.dom_g)}};
  const DualElem xi = dual_flag(o.xi);
  return Json{{"xi", to_string(xi)}, {"r", o.r}, {"value", ext_to_json(conjugate(f, xi, o.r))}};
}

Json cmd_biconjugate(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  const UpFunction g = biconjugate(f);
  emit_curves(o, {{"f", f}, {"biconjugate", g}});
  return Json{{"function", function_to_json(g)}, {"equalsInput", approx_equal(f, g, o.tol)}};
}

Json cmd_infconv(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  if (o.file2.empty()) throw JsonInputError("-g", "a second function is required");
  const UpFunction g = function_from_json(read_json(o.file2));
  const UpFunction h = infconv(f, g);
  emit_curves(o, {{"f", f}, {"g", g}, {"infconv", h}});
  Json out{{"function", function_to_json(h)}};
  if (!o.xi.empty()) {
    const InfconvConjugateReport rep = infconv_conjugate_check(f, g, dual_flag(o.xi), o.r, o.tol);
    out["conjugateCheck"] = {{"lhs", ext_to_json(rep.lhs)}, {"rhs", ext_to_json(rep.rhs)}, {"equal", rep.equal}};
  }
  return out;
}

Json cmd_yf_check(const Options& o) {
  const UpFunction f = function_from_json(read_json(o.file));
  const DualElem xi = dual_flag(o.xi);
  std::vector<double> xs = o.x;
  if (xs.empty()) xs = {0.0};
  Json rows = Json::array();
  bool all = true;
  for (double x : xs) {
    const auto forms = young_fenchel_check(f, xi, o.r, x);
    all = all && forms[0] && forms[1] && forms[2];
    rows.push_back({{"x", x}, {"form1", forms[0]}, {"form2", forms[1]}, {"form3", forms[2]}});
  }
  emit_curves(o, {{"f", f}, {"xi_r", dual_as_function(xi, o.r)}});
  return Json{{"xi", to_string(xi)},
              {"r", o.r},
              {"conjugate", ext_to_json(conjugate(f, xi, o.r))},
              {"holds", all},
              {"rows", rows},
              {"affineMinorant", report_json(affine_minorant_check(f, xi, o.r))}};
}

Json cmd_set_diff(const Options& o) {
  const Json j = read_json(o.file);
  if (!j.is_object()) throw JsonInputError("", "expected an object with cone, a and b");
  const Cone2 cone = j.contains("cone") ? cone_from_json(j["cone"], "/cone") : Cone2();
  if (!j.contains("a")) throw JsonInputError("/a", "missing member");
  if (!j.contains("b")) throw JsonInputError("/b", "missing member");
  const UpSet a = UpSet::make(poly2_from_json(j["a"], "/a"), cone);
  const UpSet b = UpSet::make(poly2_from_json(j["b"], "/b"), cone);
  const SetDiffReport rep = setdiff_support_check(a, b);
  emit_regions(o, {{"A", a.poly()}, {"B", b.poly()}, {"A-B", rep.direct.poly()}});
  return Json{{"difference", poly2_to_json(rep.direct.poly())},
              {"viaSupport", poly2_to_json(rep.via_support.poly())},
              {"hausdorff", ext_to_json(rep.hausdorff)},
              {"equal", rep.equal},
              {"scalarOk", rep.scalar_ok},
              {"witnesses", rep.witnesses}};
}

Json cmd_set_conj(const Options& o) {
  const SetValuedFn g = svfn_from_json(read_json(o.file));
  const DualTriple d{dual_flag(o.xi), o.r, zstar_flag(o.zstar)};
  const UpSet s = sv_conjugate(g, d);
  emit_regions(o, {{"conjugate", s.poly()}});
  return Json{{"xi", to_string(d.xi)}, {"r", o.r}, {"zstar", o.zstar}, {"set", poly2_to_json(s.poly())}};
}

Json cmd_set_biconj(const Options& o) {
  const SetValuedFn g = svfn_from_json(read_json(o.file));
  std::vector<double> xs = o.x;
  if (xs.empty()) xs = {0.0};
  Json rows = Json::array();
  std::vector<svg::Region> regions;
  for (double x : xs) {
    const UpSet v = g(x);
    const UpSet bb = sv_biconjugate(g, x);
    rows.push_back({{"x", x}, {"value", poly2_to_json(v.poly())}, {"biconjugate", poly2_to_json(bb.poly())},
                    {"equal", v.same_set(bb, 1e-7)}});
    if (regions.empty()) regions = {{"g(x)", v.poly()}, {"g**(x)", bb.poly()}};
  }
  emit_regions(o, regions);
  return Json{{"rows", rows}};
}

Json cmd_scalarize(const Options& o) {
  const SetValuedFn g = svfn_from_json(read_json(o.file));
  const Vec2 z = zstar_flag(o.zstar);
  require_dual(z, g.cone());
  const UpFunction f = scalarize(g, z);
  emit_curves(o, {{"scalarization", f}});
  return Json{{"zstar", o.zstar}, {"function", function_to_json(f)}};
}

Json cmd_set_check(const Options& o) {
  const SetValuedFn g = svfn_from_json(read_json(o.file));
  const Properness p = properness(g);
  const Interval d = g.domain();
  std::vector<svg::Region> regions;
  if (!d.is_empty()) {
    const double mid = std::isfinite(d.lo) && std::isfinite(d.hi) ? 0.5 * (d.lo + d.hi)
                       : std::isfinite(d.lo)                      ? d.lo
                       : std::isfinite(d.hi)                      ? d.hi
                                                                  : 0.0;
    regions.push_back({"g(" + std::to_string(mid) + ")", g(mid).poly()});
  }
  emit_regions(o, regions);
  return Json{{"domain", interval_to_json(d)},
              {"pieces", g.pieces().size()},
              {"convexGraph", g.convex_graph()},
              {"invariant", g.invariant_holds()},
              {"proper", p.proper},
              {"cProper", p.c_proper},
              {"improper", p.improper}};
}

Json cmd_lattice_check(const Options& o) {
  const FiniteOrderedGroupoid g = groupoid_from_json(read_json(o.file));
  std::vector<Mode> modes;
  if (o.mode == "inf" || o.mode == "both") modes.push_back(Mode::Inf);
  if (o.mode == "sup" || o.mode == "both") modes.push_back(Mode::Sup);
  Json out{{"lattice", g.is_lattice()}};
  for (Mode m : modes) {
    const EquivalenceReport rep = check_equivalence(g, m);
    Json conds = Json::array();
    for (const auto& c : rep.reports) {
      Json wit = Json::array();
      for (const auto& w : c.witnesses) {
        Json labels = Json::array();
        for (int u : w) labels.push_back(g.label(u));
        wit.push_back(labels);
      }
      conds.push_back({{"condition", to_string(c.condition)}, {"holds", c.holds}, {"witnesses", wit}});
    }
    out[to_string(m)] = {{"agree", rep.agree}, {"conditions", conds}};
  }
  return out;
}

Json cmd_check(const Options& o) {
  std::vector<std::string> names;
  if (o.suite == "all")
    names = suite_names();
  else
    names = {o.suite};
  Json suites = Json::array();
  bool ok = true;
  for (const auto& n : names) {
    const SuiteResult r = run_suite(n, o.iters, o.seed, o.tol);
    ok = ok && r.ok();
    suites.push_back({{"name", r.name}, {"checks", r.checks}, {"failures", r.failures}, {"ok", r.ok()}});
    for (const auto& f : r.failures) std::cerr << r.name << ": " << f << "\n";
  }
  Json out{{"seed", o.seed}, {"iters", o.iters}, {"suites", suites}, {"ok", ok}};
  print(o, out);
  if (!ok) throw SuiteFailure{};
  return Json();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extended-real and set-valued convex calculus"};
  app.require_subcommand(1, 1);
  Options o;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "Random seed");
    sub->add_option("--iters", o.iters, "Iterations per law");
    sub->add_option("--tol", o.tol, "Comparison tolerance")->capture_default_str();
    sub->add_option("--plot", o.plot, "Write an SVG plot");
    sub->add_option("--csv", o.csv, "Write sampled values as CSV");
    sub->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };
  auto with_file = [&](CLI::App* sub) { sub->add_option("file,-f,--file", o.file, "Input JSON"); };
  auto with_dual = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--xi", o.xi, "Dual element proper:<a> or hat:<a>");
    if (required) opt->required();
    sub->add_option("--r", o.r, "Affine offset");
  };
  auto with_zstar = [&](CLI::App* sub) {
    sub->add_option("--zstar", o.zstar, "Dual cone direction a,b")->delimiter(',')->expected(2)->required();
  };

  struct Entry {
    const char* name;
    const char* help;
    Json (*run)(const Options&);
  };
  const std::vector<Entry> entries{
      {"eval", "Evaluate a function", cmd_eval},
      {"dirderiv", "Directional derivative", cmd_dirderiv},
      {"subdiff", "Extended subdifferential", cmd_subdiff},
      {"conjugate", "Conjugate value or proper conjugate curve", cmd_conjugate},
      {"biconjugate", "Biconjugate", cmd_biconjugate},
      {"infconv", "Infimal convolution", cmd_infconv},
      {"yf-check", "Young-Fenchel forms and affine-minorant conditions", cmd_yf_check},
      {"set-diff", "Set difference in the +C lattice", cmd_set_diff},
      {"set-conj", "Set-valued conjugate", cmd_set_conj},
      {"set-biconj", "Set-valued biconjugate slices", cmd_set_biconj},
      {"scalarize", "Support scalarization", cmd_scalarize},
      {"set-check", "Properness and invariants of a set-valued function", cmd_set_check},
      {"lattice-check", "Residuation conditions of a finite groupoid", cmd_lattice_check},
      {"check", "Run property suites", cmd_check},
  };

  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    common(sub);
    const std::string n = e.name;
    if (n != "check") with_file(sub);
    if (n == "eval" || n == "dirderiv" || n == "yf-check" || n == "set-biconj")
      sub->add_option("--x", o.x, "Evaluation points")->delimiter(',');
    if (n == "dirderiv" || n == "subdiff") sub->add_option("--x0", o.x0, "Base point");
    if (n == "conjugate" || n == "infconv") with_dual(sub, false);
    if (n == "yf-check" || n == "set-conj") with_dual(sub, true);
    if (n == "infconv") sub->add_option("-g,--g-file", o.file2, "Second function JSON")->required();
    if (n == "set-conj" || n == "scalarize") with_zstar(sub);
    if (n == "lattice-check") sub->add_option("--mode", o.mode, "inf, sup or both")->check(CLI::IsMember({"inf", "sup", "both"}));
    if (n == "check") sub->add_option("--suite", o.suite, "Suite name or all");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const auto it = std::find_if(entries.begin(), entries.end(), [&](const Entry& e) { return chosen->get_name() == e.name; });
  try {
    if (chosen->get_name() == "check") {
      if (o.suite != "all") {
        const auto names = suite_names();
        if (std::find(names.begin(), names.end(), o.suite) == names.end())
          throw JsonInputError("--suite", "unknown suite " + o.suite);
      }
      it->run(o);
      return 0;
    }
    print(o, it->run(o));
    return 0;
  } catch (const SuiteFailure&) {
    return 1;
  } catch (const JsonInputError& e) {
    const std::string what = e.what();
    std::cerr << "error: at '" << (e.path().empty() ? "/" : e.path()) << "': " << what.substr(e.path().size() + 2) << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
