#include "hypset/prefix_trie.hpp"

#include <algorithm>
#include <limits>

namespace hypset {

PrefixTrie::PrefixTrie(int rank, std::vector<ReducedWord> members)
    : rank_(rank), alphabet_(static_cast<std::size_t>(2 * rank)), members_(std::move(members)) {
  std::sort(members_.begin(), members_.end(), ShortlexLess{});
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  nodes_.emplace_back();
  children_.assign(alphabet_, -1);
  for (std::int32_t idx = 0; idx < static_cast<std::int32_t>(members_.size()); ++idx) {
    const auto& w = members_[static_cast<std::size_t>(idx)];
    if (w.rank() != rank_) throw AlphabetMismatch("trie member of wrong rank");
    std::int32_t node = 0;
    // Indices arrive in increasing order, so the first visitor of a node is its best.
    auto touch = [&](std::int32_t n) {
      auto& nd = nodes_[static_cast<std::size_t>(n)];
      if (nd.best < 0) nd.best = idx;
      ++nd.count;
    };
    touch(node);
    for (Letter c : w.letters()) {
      auto slot = static_cast<std::size_t>(node) * alphabet_ + c;
      if (children_[slot] < 0) {
        children_[slot] = static_cast<std::int32_t>(nodes_.size());
        nodes_.emplace_back();
        children_.resize(children_.size() + alphabet_, -1);
      }
      node = children_[slot];
      touch(node);
    }
    nodes_[static_cast<std::size_t>(node)].member = idx;
  }
}

PrefixTrie::Nearest PrefixTrie::nearest(const ReducedWord& w) const {
  Nearest best;
  if (members_.empty()) return best;
  std::int32_t node = 0;
  const int len = w.length();
  for (int depth = 0;; ++depth) {
    const auto candidate = nodes_[static_cast<std::size_t>(node)].best;
    const int dist = len - 2 * depth + members_[static_cast<std::size_t>(candidate)].length();
    if (best.distance < 0 || dist < best.distance ||
        (dist == best.distance && candidate < best.member)) {
      best.distance = dist;
      best.member = candidate;
    }
    if (depth == len) break;
    const auto next = child(node, w[static_cast<std::size_t>(depth)]);
    if (next < 0) break;
    node = next;
  }
  return best;
}

bool PrefixTrie::contains(const ReducedWord& w) const {
  std::int32_t node = 0;
  for (Letter c : w.letters()) {
    node = child(node, c);
    if (node < 0) return false;
  }
  return nodes_[static_cast<std::size_t>(node)].member >= 0;
}

PrefixTrie::Divergence PrefixTrie::min_divergence(const ReducedWord& w) const {
  std::int32_t node = 0;
  for (int depth = 0; depth <= w.length(); ++depth) {
    const auto& nd = nodes_[static_cast<std::size_t>(node)];
    const bool at_end = depth == w.length();
    std::int32_t along = -1;
    if (!at_end) along = child(node, w[static_cast<std::size_t>(depth)]);
    // Members below this node that do not continue along w (excluding w itself).
    const std::int32_t along_count =
        along >= 0 ? nodes_[static_cast<std::size_t>(along)].count : 0;
    const std::int32_t self = (at_end && nd.member >= 0) ? 1 : 0;
    if (nd.count - along_count - self > 0) {
      std::int32_t partner = std::numeric_limits<std::int32_t>::max();
      if (!at_end && nd.member >= 0) partner = nd.member;
      for (std::size_t c = 0; c < alphabet_; ++c) {
        const auto ch = child(node, static_cast<Letter>(c));
        if (ch < 0 || ch == along) continue;
        partner = std::min(partner, nodes_[static_cast<std::size_t>(ch)].best);
      }
      return {depth, partner};
    }
    if (along < 0) break;
    node = along;
  }
  return {w.length(), -1};
}

}  // namespace hypset
