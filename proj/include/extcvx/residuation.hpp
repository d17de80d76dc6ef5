#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace extcvx {

enum class Mode { Inf, Sup };
enum class Condition { A, B, C, D };

std::string to_string(Mode m);
std::string to_string(Condition c);

/// A finite partially ordered commutative groupoid (W, +, <=). Elements are
/// opaque indices 0..n-1 with attached labels.
///
/// The constructor checks commutativity of the table, the partial-order
/// axioms and order compatibility (u <= v implies u+w <= v+w) and throws
/// std::invalid_argument naming the first violation.
class FiniteOrderedGroupoid {
 public:
  FiniteOrderedGroupoid(std::vector<std::string> carrier,
                        std::vector<std::vector<int>> add,
                        std::vector<std::vector<bool>> leq);

  int size() const { return static_cast<int>(carrier_.size()); }
  int add(int u, int v) const { return add_[u][v]; }
  bool leq(int u, int v) const { return leq_[u][v]; }
  const std::string& label(int u) const { return carrier_[u]; }
  const std::vector<std::string>& carrier() const { return carrier_; }
  const std::vector<std::vector<int>>& add_table() const { return add_; }
  const std::vector<std::vector<bool>>& leq_matrix() const { return leq_; }
  std::optional<int> index_of(const std::string& label) const;

  /// Greatest lower bound / least upper bound of a subset, if it exists.
  /// inf of the empty subset is the greatest element (if any).
  std::optional<int> inf(std::span<const int> subset) const;
  std::optional<int> sup(std::span<const int> subset) const;

  /// True iff every pair has an inf and a sup; for a finite carrier this
  /// makes the order a complete lattice.
  bool is_lattice() const;

 private:
  std::vector<std::string> carrier_;
  std::vector<std::vector<int>> add_;
  std::vector<std::vector<bool>> leq_;
};

struct ConditionReport {
  Condition condition = Condition::A;
  Mode mode = Mode::Inf;
  bool holds = true;
  // Each witness is a violating tuple: (u, v) for A, B, D and (u, m1, m2, ...)
  // for C, listing u followed by the members of the offending subset M.
  std::vector<std::vector<int>> witnesses;
};

/// Exhaustive evaluation of one of the four residuation conditions. For C,
/// subsets are enumerated exhaustively up to 6 elements and sampled (fixed
/// seed) beyond that.
ConditionReport check_condition(const FiniteOrderedGroupoid& g, Condition c, Mode mode);

/// The least w' with u <= v + w' (Inf) or the greatest w' with v + w' <= u
/// (Sup), when the residual set has such an element.
std::optional<int> residual(const FiniteOrderedGroupoid& g, int u, int v, Mode mode);

struct EquivalenceReport {
  bool agree = true;
  std::array<ConditionReport, 4> reports;
};

/// Evaluates all four conditions. The conditions are equivalent whenever the
/// order is a lattice; disagreement on a lattice signals a bug.
EquivalenceReport check_equivalence(const FiniteOrderedGroupoid& g, Mode mode);

/// Random lattice-ordered commutative groupoid with at most `max_size`
/// elements and an order-compatible addition.
FiniteOrderedGroupoid random_lattice_groupoid(std::mt19937_64& rng, int max_size);

/// The three-point model {-inf, 0, +inf} with inf-addition (true) or
/// sup-addition (false), built from the extended-real operations.
FiniteOrderedGroupoid three_point_groupoid(bool inf_addition);

// ---------------------------------------------------------------------------
// Conlinear spaces

struct ConlinearStructure {
  std::vector<std::string> carrier;
  std::vector<std::vector<int>> add;
  std::vector<double> scalars;          // probe set of non-negative reals
  std::vector<std::vector<int>> scale;  // scale[k][w] = scalars[k] * w
};

struct ConlinearReport {
  bool conlinear = true;
  std::optional<int> neutral;
  std::vector<std::string> violations;  // prefixed with the axiom, e.g. "C2(iv)"
  std::vector<bool> convex;             // per element
};

ConlinearReport check_conlinear(const ConlinearStructure& s);

/// The three-point model with multiplication by the probes {0, 1, 2, 1/2}.
ConlinearStructure three_point_conlinear(bool inf_addition);

}  // namespace extcvx
