#include "extcvx/residuation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "extcvx/extreal.hpp"

namespace extcvx {

std::string to_string(Mode m) { return m == Mode::Inf ? "inf" : "sup"; }

std::string to_string(Condition c) {
  switch (c) {
    case Condition::A: return "A";
    case Condition::B: return "B";
    case Condition::C: return "C";
    case Condition::D: return "D";
  }
  return "?";
}

FiniteOrderedGroupoid::FiniteOrderedGroupoid(std::vector<std::string> carrier,
                                             std::vector<std::vector<int>> add,
                                             std::vector<std::vector<bool>> leq)
    : carrier_(std::move(carrier)), add_(std::move(add)), leq_(std::move(leq)) {
  const int n = size();
  auto fail = [](const std::string& what) { throw std::invalid_argument("groupoid: " + what); };
  if (n == 0) fail("carrier must be non-empty");
  if (static_cast<int>(add_.size()) != n || static_cast<int>(leq_.size()) != n)
    fail("table dimensions do not match the carrier");
  for (int u = 0; u < n; ++u) {
    if (static_cast<int>(add_[u].size()) != n || static_cast<int>(leq_[u].size()) != n)
      fail("table dimensions do not match the carrier");
    for (int v = 0; v < n; ++v)
      if (add_[u][v] < 0 || add_[u][v] >= n) fail("add table entry out of range");
  }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (add_[u][v] != add_[v][u])
        fail("add is not commutative at (" + carrier_[u] + ", " + carrier_[v] + ")");
  for (int u = 0; u < n; ++u)
    if (!leq_[u][u]) fail("leq is not reflexive at " + carrier_[u]);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (u != v && leq_[u][v] && leq_[v][u])
        fail("leq is not antisymmetric at (" + carrier_[u] + ", " + carrier_[v] + ")");
      for (int w = 0; w < n; ++w)
        if (leq_[u][v] && leq_[v][w] && !leq_[u][w]) fail("leq is not transitive");
    }
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      if (!leq_[u][v]) continue;
      for (int w = 0; w < n; ++w)
        if (!leq_[add_[u][w]][add_[v][w]])
          fail("order is not compatible with add: " + carrier_[u] + " <= " + carrier_[v] +
               " but not u+" + carrier_[w] + " <= v+" + carrier_[w]);
    }
}

std::optional<int> FiniteOrderedGroupoid::index_of(const std::string& label) const {
  auto it = std::find(carrier_.begin(), carrier_.end(), label);
  if (it == carrier_.end()) return std::nullopt;
  return static_cast<int>(it - carrier_.begin());
}

std::optional<int> FiniteOrderedGroupoid::inf(std::span<const int> subset) const {
  std::vector<int> lowers;
  for (int w = 0; w < size(); ++w)
    if (std::all_of(subset.begin(), subset.end(), [&](int m) { return leq_[w][m]; }))
      lowers.push_back(w);
  for (int c : lowers)
    if (std::all_of(lowers.begin(), lowers.end(), [&](int d) { return leq_[d][c]; })) return c;
  return std::nullopt;
}

std::optional<int> FiniteOrderedGroupoid::sup(std::span<const int> subset) const {
  std::vector<int> uppers;
  for (int w = 0; w < size(); ++w)
    if (std::all_of(subset.begin(), subset.end(), [&](int m) { return leq_[m][w]; }))
      uppers.push_back(w);
  for (int c : uppers)
    if (std::all_of(uppers.begin(), uppers.end(), [&](int d) { return leq_[c][d]; })) return c;
  return std::nullopt;
}

bool FiniteOrderedGroupoid::is_lattice() const {
  for (int u = 0; u < size(); ++u)
    for (int v = u + 1; v < size(); ++v) {
      const int pair[2] = {u, v};
      if (!inf(pair) || !sup(pair)) return false;
    }
  return true;
}

namespace {

// The residual set {w' : u <= v + w'} (Inf) or {w' : v + w' <= u} (Sup).
std::vector<int> residual_set(const FiniteOrderedGroupoid& g, int u, int v, Mode mode) {
  std::vector<int> out;
  for (int w = 0; w < g.size(); ++w) {
    bool in = mode == Mode::Inf ? g.leq(u, g.add(v, w)) : g.leq(g.add(v, w), u);
    if (in) out.push_back(w);
  }
  return out;
}

// a <= b in the direction of the mode: Inf uses <=, Sup uses >=.
bool below(const FiniteOrderedGroupoid& g, int a, int b, Mode mode) {
  return mode == Mode::Inf ? g.leq(a, b) : g.leq(b, a);
}

std::optional<int> extremum(const FiniteOrderedGroupoid& g, std::span<const int> m, Mode mode) {
  return mode == Mode::Inf ? g.inf(m) : g.sup(m);
}

bool condition_a(const FiniteOrderedGroupoid& g, int u, int v, Mode mode) {
  const std::vector<int> r = residual_set(g, u, v, mode);
  for (int w = 0; w < g.size(); ++w) {
    bool ok = true;
    for (int wp = 0; wp < g.size() && ok; ++wp) {
      bool in_r = std::binary_search(r.begin(), r.end(), wp);
      ok = in_r == below(g, w, wp, mode);
    }
    if (ok) return true;
  }
  return false;
}

bool condition_b(const FiniteOrderedGroupoid& g, int u, int v, Mode mode) {
  return residual(g, u, v, mode).has_value();
}

bool condition_d(const FiniteOrderedGroupoid& g, int u, int v, Mode mode) {
  const std::vector<int> r = residual_set(g, u, v, mode);
  auto e = extremum(g, r, mode);
  if (!e) return false;
  return mode == Mode::Inf ? g.leq(u, g.add(v, *e)) : g.leq(g.add(v, *e), u);
}

// u + ext M = ext(u + M) whenever ext M exists.
bool condition_c_subset(const FiniteOrderedGroupoid& g, int u, const std::vector<int>& m, Mode mode) {
  auto em = extremum(g, m, mode);
  if (!em) return true;
  std::vector<int> um;
  um.reserve(m.size());
  for (int x : m) um.push_back(g.add(u, x));
  std::sort(um.begin(), um.end());
  um.erase(std::unique(um.begin(), um.end()), um.end());
  auto eum = extremum(g, um, mode);
  return eum && *eum == g.add(u, *em);
}

std::vector<std::vector<int>> subsets_for_c(int n) {
  std::vector<std::vector<int>> out;
  if (n <= 6) {
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      std::vector<int> s;
      for (int i = 0; i < n; ++i)
        if (mask & (1u << i)) s.push_back(i);
      out.push_back(std::move(s));
    }
    return out;
  }
  out.push_back({});
  for (int i = 0; i < n; ++i) out.push_back({i});
  std::mt19937_64 rng(0x5eedc0de);
  std::bernoulli_distribution coin(0.5);
  for (int k = 0; k < 4096; ++k) {
    std::vector<int> s;
    for (int i = 0; i < n; ++i)
      if (coin(rng)) s.push_back(i);
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::optional<int> residual(const FiniteOrderedGroupoid& g, int u, int v, Mode mode) {
  const std::vector<int> r = residual_set(g, u, v, mode);
  for (int c : r)
    if (std::all_of(r.begin(), r.end(), [&](int d) { return below(g, c, d, mode); })) return c;
  return std::nullopt;
}

ConditionReport check_condition(const FiniteOrderedGroupoid& g, Condition c, Mode mode) {
  ConditionReport rep;
  rep.condition = c;
  rep.mode = mode;
  const int n = g.size();
  if (c == Condition::C) {
    const auto subsets = subsets_for_c(n);
    for (int u = 0; u < n; ++u)
      for (const auto& m : subsets)
        if (!condition_c_subset(g, u, m, mode)) {
          std::vector<int> w{u};
          w.insert(w.end(), m.begin(), m.end());
          rep.witnesses.push_back(std::move(w));
        }
  } else {
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        bool ok = c == Condition::A   ? condition_a(g, u, v, mode)
                  : c == Condition::B ? condition_b(g, u, v, mode)
                                      : condition_d(g, u, v, mode);
        if (!ok) rep.witnesses.push_back({u, v});
      }
  }
  rep.holds = rep.witnesses.empty();
  return rep;
}

EquivalenceReport check_equivalence(const FiniteOrderedGroupoid& g, Mode mode) {
  EquivalenceReport out;
  const Condition all[4] = {Condition::A, Condition::B, Condition::C, Condition::D};
  for (int i = 0; i < 4; ++i) out.reports[i] = check_condition(g, all[i], mode);
  for (int i = 1; i < 4; ++i)
    if (out.reports[i].holds != out.reports[0].holds) out.agree = false;
  return out;
}

FiniteOrderedGroupoid random_lattice_groupoid(std::mt19937_64& rng, int max_size) {
  if (max_size < 1) throw std::invalid_argument("random_lattice_groupoid: max_size must be >= 1");
  // Lattice: a chain, or a family of subsets of a 3-element ground set that
  // is closed under intersection and contains the full set (ordered by
  // inclusion). Elements are stored as bitmasks.
  std::vector<unsigned> elems;
  std::uniform_int_distribution<int> pick(0, 2);
  for (;;) {
    elems.clear();
    if (pick(rng) == 0) {
      int len = std::uniform_int_distribution<int>(1, max_size)(rng);
      // a chain 0 < 1 < 3 < 7 < 15 < ... as nested bitmasks
      for (int i = 0; i < len; ++i) elems.push_back((1u << i) - 1u);
    } else {
      std::uniform_int_distribution<unsigned> mask(0, 7);
      int seeds = std::uniform_int_distribution<int>(1, 4)(rng);
      elems.push_back(7u);
      for (int i = 0; i < seeds; ++i) elems.push_back(mask(rng));
      bool grew = true;
      while (grew) {
        grew = false;
        const std::size_t cur = elems.size();
        for (std::size_t i = 0; i < cur; ++i)
          for (std::size_t j = 0; j < cur; ++j) {
            unsigned m = elems[i] & elems[j];
            if (std::find(elems.begin(), elems.end(), m) == elems.end()) {
              elems.push_back(m);
              grew = true;
            }
          }
      }
      std::sort(elems.begin(), elems.end());
      elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
    }
    if (static_cast<int>(elems.size()) <= max_size) break;
  }
  const int n = static_cast<int>(elems.size());
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) leq[i][j] = (elems[i] & ~elems[j]) == 0;

  // height = length of the longest chain below an element
  std::vector<int> height(n, 0);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return __builtin_popcount(elems[a]) < __builtin_popcount(elems[b]); });
  for (int a : order)
    for (int b = 0; b < n; ++b)
      if (b != a && leq[b][a]) height[a] = std::max(height[a], height[b] + 1);

  // Monotone commutative table: assign unordered pairs by increasing height
  // sum; each value is drawn above the join of the values of all smaller pairs.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) pairs.emplace_back(i, j);
  std::stable_sort(pairs.begin(), pairs.end(), [&](auto p, auto q) {
    return height[p.first] + height[p.second] < height[q.first] + height[q.second];
  });
  std::vector<std::vector<int>> add(n, std::vector<int>(n, -1));
  std::vector<std::string> carrier(n);
  for (int i = 0; i < n; ++i) carrier[i] = "e" + std::to_string(i);
  FiniteOrderedGroupoid order_only(carrier, std::vector<std::vector<int>>(n, std::vector<int>(n, 0)), leq);
  std::uniform_int_distribution<int> style(0, 3);
  for (auto [i, j] : pairs) {
    std::vector<int> lower_values;
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b) {
        if (add[a][b] < 0) continue;
        if ((leq[a][i] && leq[b][j]) || (leq[a][j] && leq[b][i])) lower_values.push_back(add[a][b]);
      }
    int floor = *order_only.sup(lower_values);
    std::vector<int> choices;
    for (int c = 0; c < n; ++c)
      if (leq[floor][c]) choices.push_back(c);
    int s = style(rng);
    int v = s == 0 ? floor : choices[std::uniform_int_distribution<std::size_t>(0, choices.size() - 1)(rng)];
    add[i][j] = add[j][i] = v;
  }
  return FiniteOrderedGroupoid(std::move(carrier), std::move(add), std::move(leq));
}

FiniteOrderedGroupoid three_point_groupoid(bool inf_addition) {
  const double vals[3] = {-INFINITY, 0.0, INFINITY};
  std::vector<std::string> carrier{"-inf", "0", "inf"};
  std::vector<std::vector<int>> add(3, std::vector<int>(3));
  std::vector<std::vector<bool>> leq(3, std::vector<bool>(3));
  auto index = [&](double v) { return v < 0 ? 0 : (v > 0 ? 2 : 1); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = inf_addition ? isum(UpReal(vals[i]), UpReal(vals[j])).raw()
                              : ssum(DownReal(vals[i]), DownReal(vals[j])).raw();
      add[i][j] = index(s);
      leq[i][j] = vals[i] <= vals[j];
    }
  return FiniteOrderedGroupoid(std::move(carrier), std::move(add), std::move(leq));
}

ConlinearReport check_conlinear(const ConlinearStructure& s) {
  ConlinearReport rep;
  const int n = static_cast<int>(s.carrier.size());
  const int k = static_cast<int>(s.scalars.size());
  auto violate = [&](std::string msg) {
    rep.violations.push_back(std::move(msg));
    rep.conlinear = false;
  };
  auto name = [&](int i) { return s.carrier[i]; };
  if (n == 0) {
    violate("C1: carrier is empty");
    return rep;
  }
  if (static_cast<int>(s.add.size()) != n || static_cast<int>(s.scale.size()) != k)
    throw std::invalid_argument("conlinear: table dimensions do not match");
  for (double t : s.scalars)
    if (!(t >= 0.0)) throw std::invalid_argument("conlinear: probe scalars must be non-negative");

  auto plus = [&](int a, int b) { return s.add[a][b]; };
  auto times = [&](int p, int w) { return s.scale[p][w]; };
  auto probe = [&](double t) -> std::optional<int> {
    for (int p = 0; p < k; ++p)
      if (std::abs(s.scalars[p] - t) <= 1e-12 * (1.0 + std::abs(t))) return p;
    return std::nullopt;
  };

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (plus(a, b) != plus(b, a)) violate("C1: not commutative at (" + name(a) + ", " + name(b) + ")");
      for (int c = 0; c < n; ++c)
        if (plus(plus(a, b), c) != plus(a, plus(b, c)))
          violate("C1: not associative at (" + name(a) + ", " + name(b) + ", " + name(c) + ")");
    }
  for (int e = 0; e < n && !rep.neutral; ++e) {
    bool ok = true;
    for (int a = 0; a < n && ok; ++a) ok = plus(e, a) == a;
    if (ok) rep.neutral = e;
  }
  if (!rep.neutral) violate("C1: no neutral element");

  for (int p = 0; p < k; ++p)
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (times(p, plus(a, b)) != plus(times(p, a), times(p, b)))
          violate("C2(i): r(w1+w2) != rw1+rw2 for r=" + to_string(s.scalars[p]) + ", w1=" + name(a) +
                  ", w2=" + name(b));
  for (int p = 0; p < k; ++p)
    for (int q = 0; q < k; ++q) {
      auto pq = probe(s.scalars[p] * s.scalars[q]);
      if (!pq) continue;
      for (int w = 0; w < n; ++w)
        if (times(q, times(p, w)) != times(*pq, w))
          violate("C2(ii): s(rw) != (rs)w for r=" + to_string(s.scalars[p]) +
                  ", s=" + to_string(s.scalars[q]) + ", w=" + name(w));
    }
  if (auto one = probe(1.0)) {
    for (int w = 0; w < n; ++w)
      if (times(*one, w) != w) violate("C2(iii): 1*" + name(w) + " != " + name(w));
  } else {
    violate("C2(iii): probe set does not contain 1");
  }
  if (auto zero = probe(0.0)) {
    if (rep.neutral && times(*zero, *rep.neutral) != *rep.neutral)
      violate("C2(iv): 0*theta = " + name(times(*zero, *rep.neutral)) + " != theta = " + name(*rep.neutral));
  } else {
    violate("C2(iv): probe set does not contain 0");
  }

  rep.convex.assign(n, true);
  for (int w = 0; w < n; ++w)
    for (int p = 0; p < k && rep.convex[w]; ++p)
      for (int q = 0; q < k && rep.convex[w]; ++q) {
        auto sum = probe(s.scalars[p] + s.scalars[q]);
        if (sum && times(*sum, w) != plus(times(p, w), times(q, w))) rep.convex[w] = false;
      }
  return rep;
}

ConlinearStructure three_point_conlinear(bool inf_addition) {
  FiniteOrderedGroupoid g = three_point_groupoid(inf_addition);
  ConlinearStructure s;
  s.carrier = g.carrier();
  s.add = g.add_table();
  s.scalars = {0.0, 1.0, 2.0, 0.5};
  const double vals[3] = {-INFINITY, 0.0, INFINITY};
  auto index = [](double v) { return v < 0 ? 0 : (v > 0 ? 2 : 1); };
  for (double t : s.scalars) {
    std::vector<int> row(3);
    for (int i = 0; i < 3; ++i)
      row[i] = index(inf_addition ? scale(t, UpReal(vals[i])).raw() : scale(t, DownReal(vals[i])).raw());
    s.scale.push_back(row);
  }
  return s;
}

}  // namespace extcvx
