#ifndef HYPSET_PREFIX_TRIE_HPP_
#define HYPSET_PREFIX_TRIE_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "hypset/freewords.hpp"

namespace hypset {

/// Prefix trie over a finite set of reduced words, answering nearest-member
/// queries in O(|w|): in the tree d(w, s) = |w| + |s| - 2 lcp(w, s), so it
/// suffices to know the shortest member below each prefix of w.
class PrefixTrie {
 public:
  PrefixTrie(int rank, std::vector<ReducedWord> members);

  struct Nearest {
    int distance = -1;       // -1 when the trie is empty
    std::int32_t member = -1;  // index into members(); shortlex-least on ties
  };

  Nearest nearest(const ReducedWord& w) const;
  int distance_to(const ReducedWord& w) const { return nearest(w).distance; }
  bool contains(const ReducedWord& w) const;

  /// Least lcp(w, b) over members b != w (requires w to be a member and at
  /// least two members); `partner` is the shortlex-least b attaining it.
  struct Divergence {
    int depth = 0;
    std::int32_t partner = -1;
  };
  Divergence min_divergence(const ReducedWord& w) const;

  const std::vector<ReducedWord>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }

 private:
  struct Node {
    std::int32_t member = -1;      // member ending exactly here
    std::int32_t best = -1;        // least member index in the subtree
    std::int32_t count = 0;        // members in the subtree
  };

  std::int32_t child(std::int32_t node, Letter c) const {
    return children_[static_cast<std::size_t>(node) * alphabet_ + c];
  }

  int rank_;
  std::size_t alphabet_;
  std::vector<ReducedWord> members_;  // shortlex sorted, unique
  std::vector<Node> nodes_;
  std::vector<std::int32_t> children_;
};

}  // namespace hypset

#endif  // HYPSET_PREFIX_TRIE_HPP_
