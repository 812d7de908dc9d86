#ifndef HYPSET_RATSETS_HPP_
#define HYPSET_RATSETS_HPP_

// Rational subsets of F_k as deterministic automata over reduced words, plus
// limit-set prefixes, tree convex hulls and tameness.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hypset/freewords.hpp"
#include "hypset/geometry.hpp"
#include "hypset/set_oracle.hpp"
#include "hypset/stallings.hpp"

namespace hypset {

/// Minimal trimmed DFA accepting only freely reduced words. States are
/// numbered by shortlex BFS from the start (state 0), so two automata with the
/// same language compare equal. The empty language has no states.
class ReducedAutomaton {
 public:
  static constexpr std::int32_t kNone = -1;

  /// Empty language.
  explicit ReducedAutomaton(int rank);

  static ReducedAutomaton from_subgroup(const SubgroupGraph& h);
  static ReducedAutomaton from_words(int rank, const std::vector<ReducedWord>& words);
  /// { w^n : n >= 0 }.
  static ReducedAutomaton word_star(const ReducedWord& w);
  static ReducedAutomaton whole_group(int rank);

  int rank() const noexcept { return rank_; }
  int alphabet() const noexcept { return 2 * rank_; }
  std::int32_t state_count() const noexcept { return states_; }
  bool empty() const noexcept { return states_ == 0; }
  std::int32_t target(std::int32_t s, Letter c) const {
    return table_[static_cast<std::size_t>(s) * static_cast<std::size_t>(alphabet()) + c];
  }
  bool accepting(std::int32_t s) const { return accepting_[static_cast<std::size_t>(s)] != 0; }
  /// Infinitely many accepted words pass through s.
  bool infinite_from(std::int32_t s) const { return infinite_[static_cast<std::size_t>(s)] != 0; }

  /// State after reading w from the start, or kNone.
  std::int32_t read(const ReducedWord& w) const;
  bool accepts(const ReducedWord& w) const;
  bool finite() const { return empty() || !infinite_from(0); }
  bool residual_infinite(const ReducedWord& prefix) const;

  /// Accepted words of length <= radius in shortlex order.
  std::vector<ReducedWord> enumerate(int radius) const;

  std::string serialize() const;
  static ReducedAutomaton deserialize(const std::string& text);

  friend bool operator==(const ReducedAutomaton&, const ReducedAutomaton&) = default;

 private:
  friend class AutomatonBuilder;

  void compute_caches();

  int rank_;
  std::int32_t states_ = 0;
  std::vector<std::int32_t> table_;
  std::vector<char> accepting_;
  std::vector<char> infinite_;
  std::vector<std::int32_t> distance_to_accept_;
};

enum class BoolOp { Union, Intersection, Difference };

ReducedAutomaton boolean(BoolOp op, const ReducedAutomaton& a, const ReducedAutomaton& b);
/// Reduced words not in L(a).
ReducedAutomaton complement(const ReducedAutomaton& a);
/// { w^-1 : w in L(a) }.
ReducedAutomaton inverse(const ReducedAutomaton& a);
/// Reduced forms of { a b : a in L(A), b in L(B) }.
ReducedAutomaton reduced_product(const ReducedAutomaton& a, const ReducedAutomaton& b);

SetOracle as_oracle(const ReducedAutomaton& a, std::string descriptor);

struct LimitPrefixSet {
  int depth = 0;
  std::vector<ReducedWord> words;  // shortlex sorted, all of length `depth`
  bool exact = true;

  bool empty() const { return words.empty(); }
  bool contains(const ReducedWord& w) const;
  /// Length-d prefixes of the members, d <= depth.
  LimitPrefixSet project(int d) const;

  friend bool operator==(const LimitPrefixSet&, const LimitPrefixSet&) = default;
};

/// Exact: p is listed iff infinitely many accepted words begin with p.
LimitPrefixSet limit_prefixes(const ReducedAutomaton& a, int depth);
/// Exact when the oracle carries a residual test; otherwise the length-`depth`
/// prefixes of members with length in [max(R, depth), R + slack], flagged
/// inexact.
LimitPrefixSet limit_prefixes(const SetOracle& a, int depth, const TruncationParams& p);

class HullUndefined : public std::invalid_argument {
 public:
  HullUndefined() : std::invalid_argument("hull undefined") {}
};

struct HullSlice {
  int radius = 0;
  int depth = 0;  // limit-prefix depth used to approximate ends
  std::vector<ReducedWord> vertices;  // shortlex sorted
};

/// Tree hull of the ends approximated by `limits`, cut to ball(radius).
/// Requires limits.depth > radius; deeper sets are projected to radius + 1.
/// Throws HullUndefined with fewer than two directions.
HullSlice convex_hull_slice(const LimitPrefixSet& limits, int radius);

struct TameVerdict {
  bool tame = false;
  int nu = 0;
  std::optional<ReducedWord> witness;  // farthest member, shortlex-least on ties
  int witness_distance = 0;            // -1 when the hull slice is empty
  HullSlice hull;
  TruncationParams params;
};

/// Every member of A ∩ ball(R) lies within nu of the hull slice at radius
/// R + slack.
TameVerdict tame_check(const SetOracle& a, int nu, const TruncationParams& p);

enum class LimitRelation { Equal, FirstInSecond, SecondInFirst, Incomparable };

std::string to_string(LimitRelation r);

struct LimitComparison {
  LimitRelation relation = LimitRelation::Equal;
  std::optional<ReducedWord> witness;  // least prefix on one side only, first side preferred
  bool exact = true;
};

LimitComparison limit_compare(const LimitPrefixSet& a, const LimitPrefixSet& b);

}  // namespace hypset

#endif  // HYPSET_RATSETS_HPP_
