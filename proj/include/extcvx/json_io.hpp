#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "extcvx/calculus.hpp"
#include "extcvx/extreal.hpp"
#include "extcvx/geometry.hpp"
#include "extcvx/residuation.hpp"
#include "extcvx/scalar_fn.hpp"
#include "extcvx/setvalued.hpp"

namespace extcvx {

using Json = nlohmann::json;

/// Malformed input; `path()` is a JSON pointer to the offending value.
class JsonInputError : public std::runtime_error {
 public:
  JsonInputError(std::string path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

/// Number, or one of the strings "inf", "+inf", "-inf".
double ext_from_json(const Json& j, const std::string& path);
Json ext_to_json(double v);
template <class Space>
Json ext_to_json(ExtReal<Space> a) {
  return ext_to_json(a.raw());
}

UpFunction function_from_json(const Json& j, const std::string& path = "");
Json function_to_json(const UpFunction& f);

Json interval_to_json(const Interval& d);

ConvexPoly2 poly2_from_json(const Json& j, const std::string& path = "");
Json poly2_to_json(const ConvexPoly2& p);
Cone2 cone_from_json(const Json& j, const std::string& path = "");
Json cone_to_json(const Cone2& c);
Vec2 vec2_from_json(const Json& j, const std::string& path);

/// {"cone": {...}, "pieces": [<3-D polyhedron>, ...]} or
/// {"cone": {...}, "h": [...]} for a single graph. 3-D polyhedra use
/// {"h":[{"n":[a,b,c],"c":o}]} or {"v":[[..]],"rays":[[..]]}.
SetValuedFn svfn_from_json(const Json& j, const std::string& path = "");
Json svfn_to_json(const SetValuedFn& g);

/// {"carrier":[labels], "add":[[label or index]], "leq":[[bool or 0/1]]}.
FiniteOrderedGroupoid groupoid_from_json(const Json& j, const std::string& path = "");
Json groupoid_to_json(const FiniteOrderedGroupoid& g);

Json dual_to_json(const DualElem& xi);
DualElem dual_from_json(const Json& j, const std::string& path);

}  // namespace extcvx
