#include <gtest/gtest.h>

#include <random>

#include "extcvx/json_io.hpp"
#include "extcvx/random_objects.hpp"

using namespace extcvx;

namespace {

std::string error_path(const std::function<void()>& f) {
  try {
    f();
  } catch (const JsonInputError& e) {
    return e.path();
  }
  return "<no error>";
}

}  // namespace

TEST(JsonIO, ExtendedReals) {
  EXPECT_EQ(ext_to_json(kInf), "inf");
  EXPECT_EQ(ext_to_json(-kInf), "-inf");
  EXPECT_EQ(ext_to_json(-0.0).dump(), "0.0");
  EXPECT_EQ(ext_from_json("+inf", ""), kInf);
  EXPECT_EQ(ext_from_json(Json(2.5), ""), 2.5);
  EXPECT_EQ(error_path([] { ext_from_json("huge", "/v"); }), "/v");
}

TEST(JsonIO, FunctionRoundTrip) {
  std::mt19937_64 rng(89);
  for (int i = 0; i < 200; ++i) {
    const UpFunction f = i % 2 ? random_closed_convex(rng) : random_pl(rng);
    const Json j = function_to_json(f);
    EXPECT_TRUE(approx_equal(function_from_json(Json::parse(j.dump())), f, 0.0)) << j.dump();
  }
}

TEST(JsonIO, FunctionDomainRestriction) {
  const UpFunction f = function_from_json(Json::parse(R"({"kind":"pl","breaks":[{"x":0,"v":0}],"slopeL":-1,"slopeR":1,"domHi":2})"));
  EXPECT_EQ(f(2.0), UpReal(2));
  EXPECT_EQ(f(2.5), UpReal::top());
}

TEST(JsonIO, FunctionErrorsNameThePath) {
  EXPECT_EQ(error_path([] { function_from_json(Json::parse(R"({"breaks":[]})")); }), "/kind");
  EXPECT_EQ(error_path([] { function_from_json(Json::parse(R"({"kind":"spline"})")); }), "/kind");
  EXPECT_EQ(error_path([] { function_from_json(Json::parse(R"({"kind":"pl","breaks":[{"x":0,"v":"a"}]})")); }), "/breaks/0/v");
  EXPECT_EQ(error_path([] { function_from_json(Json::parse(R"({"kind":"pl","breaks":[{"x":1,"v":0},{"x":0,"v":0}]})")); }), "/");
  EXPECT_EQ(error_path([] { function_from_json(Json::parse(R"({"kind":"improper","domLo":0})")); }), "/domHi");
}

TEST(JsonIO, PolyAndConeRoundTrip) {
  std::mt19937_64 rng(97);
  for (const Cone2& cone : standard_cones()) {
    const Cone2 back = cone_from_json(Json::parse(cone_to_json(cone).dump()));
    EXPECT_TRUE(back.poly().same_set(cone.poly()));
    for (int i = 0; i < 20; ++i) {
      const UpSet a = random_upset(rng, cone);
      const Json j = poly2_to_json(a.poly());
      EXPECT_TRUE(poly2_from_json(Json::parse(j.dump())).same_set(a.poly())) << j.dump();
      Json vonly = j;
      vonly.erase("h");
      if (!a.is_empty()) {
        EXPECT_TRUE(poly2_from_json(vonly).same_set(a.poly()));
      }
    }
  }
  EXPECT_EQ(error_path([] { poly2_from_json(Json::parse(R"({"h":[{"n":[1],"c":0}]})")); }), "/h/0/n");
}

TEST(JsonIO, SetValuedRoundTrip) {
  std::mt19937_64 rng(101);
  const SetValuedFn g = random_svfn(rng, standard_cones()[0]);
  const SetValuedFn back = svfn_from_json(Json::parse(svfn_to_json(g).dump()));
  EXPECT_TRUE(back.hull().same_set(g.hull()));
  EXPECT_EQ(error_path([] { svfn_from_json(Json::parse(R"({"cone":{"gen":[[1,0]]},"pieces":[{"v":[[0,0]]}]})")); }),
            "/pieces/0/v/0");
}

TEST(JsonIO, GroupoidRoundTrip) {
  std::mt19937_64 rng(103);
  for (int i = 0; i < 20; ++i) {
    const auto g = random_lattice_groupoid(rng, 6);
    const auto back = groupoid_from_json(Json::parse(groupoid_to_json(g).dump()));
    EXPECT_EQ(back.carrier(), g.carrier());
    EXPECT_EQ(back.add_table(), g.add_table());
    EXPECT_EQ(back.leq_matrix(), g.leq_matrix());
  }
  EXPECT_EQ(error_path([] { groupoid_from_json(Json::parse(R"({"carrier":["a"],"add":[["b"]],"leq":[[1]]})")); }), "/add/0/0");
  EXPECT_EQ(error_path([] { groupoid_from_json(Json::parse(R"({"carrier":["a"],"add":[["a"]],"leq":[[2]]})")); }), "/leq/0/0");
}

TEST(JsonIO, DualElements) {
  EXPECT_EQ(dual_from_json(dual_to_json(DualElem::hat(-1.0)), ""), DualElem::hat(-1.0));
  EXPECT_EQ(error_path([] { dual_from_json(Json(3), "/xi"); }), "/xi");
}
