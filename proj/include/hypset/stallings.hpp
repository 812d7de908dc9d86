#ifndef HYPSET_STALLINGS_HPP_
#define HYPSET_STALLINGS_HPP_

// Finitely generated subgroups of F_k as folded core graphs (Stallings graphs).

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hypset/freewords.hpp"
#include "hypset/set_oracle.hpp"

namespace hypset {

/// Folded core graph with basepoint 0. Edge v --c--> w is stored together with
/// its reverse w --c^-1--> v, so `target(v, c)` is a partial function.
/// Vertices are numbered by shortlex BFS from the basepoint, which makes
/// structural equality coincide with isomorphism of pointed graphs.
class SubgroupGraph {
 public:
  static constexpr std::int32_t kNone = -1;

  explicit SubgroupGraph(int rank);

  /// Folded core graph of the subgroup generated by `generators`.
  static SubgroupGraph build(int rank, const std::vector<ReducedWord>& generators);

  int rank() const noexcept { return rank_; }
  int alphabet() const noexcept { return 2 * rank_; }
  std::int32_t vertex_count() const noexcept { return vertices_; }
  std::int32_t edge_count() const;  // positive-label edges
  std::int32_t target(std::int32_t v, Letter c) const {
    return table_[static_cast<std::size_t>(v) * static_cast<std::size_t>(2 * rank_) + c];
  }
  int degree(std::int32_t v) const;
  /// Rank of the free group pi_1 = E - V + 1.
  int subgroup_rank() const { return edge_count() - vertex_count() + 1; }
  bool is_trivial() const { return edge_count() == 0; }

  /// End vertex of reading w from `from`, or kNone if the path leaves the graph.
  std::int32_t read(const ReducedWord& w, std::int32_t from = 0) const;

  /// Free basis read off a shortlex BFS spanning tree.
  std::vector<ReducedWord> free_basis() const;

  /// Shortlex-least word labelling a path base -> v (BFS tree label).
  std::vector<ReducedWord> vertex_labels() const;

  std::string serialize() const;
  static SubgroupGraph deserialize(const std::string& text);

  friend bool operator==(const SubgroupGraph&, const SubgroupGraph&) = default;

 private:
  friend class GraphFolder;

  int rank_;
  std::int32_t vertices_ = 1;
  std::vector<std::int32_t> table_;
};

bool contains(const SubgroupGraph& h, const ReducedWord& w);

struct CosetTable {
  std::vector<ReducedWord> representatives;  // shortlex-least per right coset H g
  // action[i][v]: coset reached from coset v by generator i (a permutation).
  std::vector<std::vector<std::int32_t>> action;
};

struct IndexResult {
  std::optional<std::int64_t> index;  // empty: infinite index
  std::optional<CosetTable> table;
};

IndexResult index(const SubgroupGraph& h);

SubgroupGraph intersect(const SubgroupGraph& h, const SubgroupGraph& k);

/// g H g^-1.
SubgroupGraph conjugate(const SubgroupGraph& h, const ReducedWord& g);

/// Subgroup generated by two graphs' subgroups.
SubgroupGraph join(const SubgroupGraph& h, const SubgroupGraph& k);

/// |H : (H ∩ K)| if finite.
std::optional<std::int64_t> relative_index(const SubgroupGraph& h, const SubgroupGraph& k);

/// Shortlex-least element of the double coset H g K.
ReducedWord double_coset_representative(const SubgroupGraph& h, const ReducedWord& g,
                                        const SubgroupGraph& k);

/// Shortlex-least element of the right coset H g.
ReducedWord right_coset_representative(const SubgroupGraph& h, const ReducedWord& g);

/// Canonical representatives of the double cosets H g K met by ball(R),
/// shortlex sorted.
std::vector<ReducedWord> double_cosets(const SubgroupGraph& h, const SubgroupGraph& k,
                                       int radius);

/// Some conjugate of w lies in H.
bool conjugates_into(const ReducedWord& w, const SubgroupGraph& h);

/// Least m >= 1 with w^m conjugate into H, or none. Throws on w = 1.
std::optional<int> power_conjugates_into(const ReducedWord& w, const SubgroupGraph& h);

struct CommensuratorResult {
  SubgroupGraph subgroup;
  std::vector<ReducedWord> accepted;  // g in ball(R) passing the VN test
  int radius = 0;
  // Every member of the generated subgroup inside ball(R) was itself accepted.
  bool closed = true;
  std::optional<ReducedWord> closure_violation;
};

/// g with |H : H ∩ H^g| and |H^g : H ∩ H^g| finite.
bool virtually_normalizes(const SubgroupGraph& h, const ReducedWord& g);

CommensuratorResult commensurator(const SubgroupGraph& h, int radius);

struct WidthResult {
  int width = 0;
  std::vector<ReducedWord> conjugators;  // g_i, conjugates g_i^-1 H g_i
  std::size_t candidates = 0;            // essentially distinct cosets scanned
};

WidthResult width_lower_bound(const SubgroupGraph& h, int radius);

/// Membership oracle with closed-form enumeration from the graph.
SetOracle subgroup_oracle(const SubgroupGraph& h, std::string descriptor = "");

std::string describe_generators(const std::vector<ReducedWord>& gens);

}  // namespace hypset

#endif  // HYPSET_STALLINGS_HPP_
