#pragma once

#include <functional>
#include <vector>

#include "extcvx/extreal.hpp"
#include "extcvx/scalar_fn.hpp"

namespace fixture {

using namespace extcvx;

using RawFn = std::function<double(double)>;

inline std::vector<double> grid(double lo, double hi, double step) {
  std::vector<double> xs;
  for (double x = lo; x <= hi + 1e-12; x += step) xs.push_back(x);
  return xs;
}

/// Convexity inequality with inf-addition on a grid of pairs and t in
/// {1/4, 1/2, 3/4}; for a {-inf, +inf}-valued function this is convexity of
/// the epigraph.
inline bool epigraph_convex(const RawFn& g) {
  const auto xs = grid(-4.0, 4.0, 0.125);
  for (double x1 : xs)
    for (double x2 : xs)
      for (double t : {0.25, 0.5, 0.75}) {
        const UpReal rhs = isum(scale(t, UpReal(g(x1))), scale(1.0 - t, UpReal(g(x2))));
        if (UpReal(g(t * x1 + (1.0 - t) * x2)) > rhs) return false;
      }
  return true;
}

/// Concavity inequality with sup-addition, the hypograph counterpart.
inline bool hypograph_convex(const RawFn& h) {
  const auto xs = grid(-4.0, 4.0, 0.125);
  for (double x1 : xs)
    for (double x2 : xs)
      for (double t : {0.25, 0.5, 0.75}) {
        const DownReal lhs = ssum(scale(t, DownReal(h(x1))), scale(1.0 - t, DownReal(h(x2))));
        if (lhs > DownReal(h(t * x1 + (1.0 - t) * x2))) return false;
      }
  return true;
}

inline double f_example(double x) { return x < 2.0 ? kInf : -kInf; }
inline double g_example(double x) { return std::abs(x) <= 1.0 ? -kInf : kInf; }
inline double g_example_literal(double x) { return std::abs(x) <= 1.0 ? kInf : -kInf; }

inline double inf_sum(const RawFn& f, const RawFn& g, double x) { return isum(UpReal(f(x)), UpReal(g(x))).raw(); }
inline double sup_sum(const RawFn& f, const RawFn& g, double x) { return ssum(DownReal(f(x)), DownReal(g(x))).raw(); }

}  // namespace fixture
