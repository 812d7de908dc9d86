#ifndef HYPSET_SET_ORACLE_HPP_
#define HYPSET_SET_ORACLE_HPP_

#include <functional>
#include <string>
#include <vector>

#include "hypset/freewords.hpp"

namespace hypset {

/// Uniform view of a subset of F_k: a membership predicate plus a
/// radius-bounded enumerator. enumerate(R) must equal
/// { w : |w| <= R and contains(w) } in shortlex order.
///
/// An oracle may also carry an exact "infinitely many members extend this
/// prefix" test. When present, limit sets are computed exactly from it.
class SetOracle {
 public:
  using Membership = std::function<bool(const ReducedWord&)>;
  using Visitor = std::function<void(const ReducedWord&)>;
  /// Calls the visitor once per member of length <= radius, shortlex order.
  using Enumerator = std::function<void(int radius, const Visitor&)>;
  using ResidualInfinite = std::function<bool(const ReducedWord& prefix)>;

  SetOracle(int rank, std::string descriptor, Membership membership, Enumerator enumerator,
            ResidualInfinite residual_infinite = {});

  /// Oracle that enumerates by filtering the ball through `membership`.
  static SetOracle filtered(int rank, std::string descriptor, Membership membership);
  static SetOracle whole_group(int rank);
  static SetOracle finite(int rank, std::string descriptor, std::vector<ReducedWord> members);
  /// Union of the conjugacy classes of `reps`, enumerated in closed form.
  static SetOracle conjugacy_classes(int rank, std::vector<ReducedWord> reps);
  /// Words of even length (the index-2 subgroup), a cheap quasidense test set.
  static SetOracle even_length(int rank);
  static SetOracle set_union(const SetOracle& a, const SetOracle& b);
  /// { g a : a in A } for a fixed g.
  static SetOracle left_translate(const ReducedWord& g, const SetOracle& a);
  /// g A g^-1.
  static SetOracle conjugated(const ReducedWord& g, const SetOracle& a);

  int rank() const noexcept { return rank_; }
  const std::string& descriptor() const noexcept { return descriptor_; }
  bool contains(const ReducedWord& w) const { return membership_(w); }
  bool has_exact_limits() const noexcept { return static_cast<bool>(residual_infinite_); }
  bool residual_infinite(const ReducedWord& prefix) const { return residual_infinite_(prefix); }

  std::vector<ReducedWord> enumerate(int radius) const;
  void for_each(int radius, const Visitor& visit) const { enumerator_(radius, visit); }

 private:
  int rank_;
  std::string descriptor_;
  Membership membership_;
  Enumerator enumerator_;
  ResidualInfinite residual_infinite_;
};

}  // namespace hypset

#endif  // HYPSET_SET_ORACLE_HPP_
