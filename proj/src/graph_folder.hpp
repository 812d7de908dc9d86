#ifndef HYPSET_SRC_GRAPH_FOLDER_HPP_
#define HYPSET_SRC_GRAPH_FOLDER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "hypset/freewords.hpp"
#include "hypset/stallings.hpp"

namespace hypset {

/// Incremental Stallings folding with union-find. Every edge is stored in both
/// directions; two edges with the same label at a vertex trigger a merge of
/// their endpoints, processed to a fixed point before returning.
class GraphFolder {
 public:
  explicit GraphFolder(int rank);

  std::int32_t add_vertex();
  void link(std::int32_t u, Letter c, std::int32_t w);
  /// Adds a path labelled `w` from `from` to `to`.
  void add_path(std::int32_t from, const ReducedWord& w, std::int32_t to);
  /// Copies a graph in; returns the id its basepoint received.
  std::int32_t add_graph(const SubgroupGraph& g);
  void identify(std::int32_t a, std::int32_t b);

  std::int32_t find(std::int32_t v);
  std::int32_t target(std::int32_t v, Letter c);

  /// Vertex ids issued so far, merged or not.
  std::int32_t slots() const { return static_cast<std::int32_t>(parent_.size()); }

  /// Core graph at `base`, canonically numbered.
  SubgroupGraph finish(std::int32_t base);

 private:
  void drain();

  int rank_;
  std::size_t alphabet_;
  std::vector<std::int32_t> parent_;
  std::vector<std::int32_t> table_;
  std::vector<std::pair<std::int32_t, std::int32_t>> pending_;
};

}  // namespace hypset

#endif  // HYPSET_SRC_GRAPH_FOLDER_HPP_
