#include "hypset/stallings.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <limits>
#include <memory>
#include <queue>
#include <set>
#include <sstream>
#include <unordered_set>

#include "graph_folder.hpp"
#include "text_format.hpp"

namespace hypset {

// ---------------------------------------------------------------------------
// GraphFolder

GraphFolder::GraphFolder(int rank) : rank_(rank), alphabet_(static_cast<std::size_t>(2 * rank)) {}

std::int32_t GraphFolder::add_vertex() {
  const auto id = static_cast<std::int32_t>(parent_.size());
  parent_.push_back(id);
  table_.resize(table_.size() + alphabet_, SubgroupGraph::kNone);
  return id;
}

std::int32_t GraphFolder::find(std::int32_t v) {
  while (parent_[static_cast<std::size_t>(v)] != v) {
    auto& p = parent_[static_cast<std::size_t>(v)];
    p = parent_[static_cast<std::size_t>(p)];
    v = p;
  }
  return v;
}

std::int32_t GraphFolder::target(std::int32_t v, Letter c) {
  const auto t = table_[static_cast<std::size_t>(find(v)) * alphabet_ + c];
  return t == SubgroupGraph::kNone ? t : find(t);
}

void GraphFolder::link(std::int32_t u, Letter c, std::int32_t w) {
  u = find(u);
  w = find(w);
  auto& fwd = table_[static_cast<std::size_t>(u) * alphabet_ + c];
  if (fwd == SubgroupGraph::kNone) {
    fwd = w;
  } else if (find(fwd) != w) {
    pending_.emplace_back(find(fwd), w);
  }
  auto& back = table_[static_cast<std::size_t>(w) * alphabet_ + inverse_letter(c)];
  if (back == SubgroupGraph::kNone) {
    back = u;
  } else if (find(back) != u) {
    pending_.emplace_back(find(back), u);
  }
  drain();
}

void GraphFolder::identify(std::int32_t a, std::int32_t b) {
  pending_.emplace_back(a, b);
  drain();
}

void GraphFolder::drain() {
  while (!pending_.empty()) {
    auto [a, b] = pending_.back();
    pending_.pop_back();
    a = find(a);
    b = find(b);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent_[static_cast<std::size_t>(b)] = a;
    for (std::size_t c = 0; c < alphabet_; ++c) {
      const auto tb = table_[static_cast<std::size_t>(b) * alphabet_ + c];
      if (tb == SubgroupGraph::kNone) continue;
      auto& ta = table_[static_cast<std::size_t>(a) * alphabet_ + c];
      if (ta == SubgroupGraph::kNone) {
        ta = tb;
      } else if (find(ta) != find(tb)) {
        pending_.emplace_back(ta, tb);
      }
    }
  }
}

void GraphFolder::add_path(std::int32_t from, const ReducedWord& w, std::int32_t to) {
  if (w.is_identity()) {
    identify(from, to);
    return;
  }
  std::int32_t cur = from;
  for (std::size_t i = 0; i + 1 < w.size(); ++i) {
    // Reuse an existing edge when present; this keeps the folder small.
    auto next = target(cur, w[i]);
    if (next == SubgroupGraph::kNone) {
      next = add_vertex();
      link(cur, w[i], next);
    }
    cur = find(next);
  }
  link(cur, w.back(), to);
}

std::int32_t GraphFolder::add_graph(const SubgroupGraph& g) {
  std::vector<std::int32_t> ids(static_cast<std::size_t>(g.vertex_count()));
  for (auto& id : ids) id = add_vertex();
  for (std::int32_t v = 0; v < g.vertex_count(); ++v) {
    for (int c = 0; c < g.alphabet(); c += 2) {
      const auto t = g.target(v, static_cast<Letter>(c));
      if (t != SubgroupGraph::kNone) {
        link(ids[static_cast<std::size_t>(v)], static_cast<Letter>(c), ids[static_cast<std::size_t>(t)]);
      }
    }
  }
  return ids.front();
}

SubgroupGraph GraphFolder::finish(std::int32_t base) {
  base = find(base);
  const std::size_t n = parent_.size();
  // Resolved adjacency over representatives.
  std::vector<std::int32_t> adj(n * alphabet_, SubgroupGraph::kNone);
  std::vector<char> alive(n, 0);
  for (std::size_t v = 0; v < n; ++v) {
    if (find(static_cast<std::int32_t>(v)) != static_cast<std::int32_t>(v)) continue;
    alive[v] = 1;
    for (std::size_t c = 0; c < alphabet_; ++c) {
      adj[v * alphabet_ + c] = target(static_cast<std::int32_t>(v), static_cast<Letter>(c));
    }
  }
  auto degree = [&](std::size_t v) {
    int d = 0;
    for (std::size_t c = 0; c < alphabet_; ++c) d += adj[v * alphabet_ + c] != SubgroupGraph::kNone;
    return d;
  };
  // Prune hanging trees away from the basepoint.
  std::vector<std::size_t> stack;
  for (std::size_t v = 0; v < n; ++v) {
    if (alive[v] && static_cast<std::int32_t>(v) != base && degree(v) <= 1) stack.push_back(v);
  }
  while (!stack.empty()) {
    const auto v = stack.back();
    stack.pop_back();
    if (!alive[v]) continue;
    alive[v] = 0;
    for (std::size_t c = 0; c < alphabet_; ++c) {
      const auto t = adj[v * alphabet_ + c];
      if (t == SubgroupGraph::kNone) continue;
      adj[v * alphabet_ + c] = SubgroupGraph::kNone;
      const auto ut = static_cast<std::size_t>(t);
      adj[ut * alphabet_ + inverse_letter(static_cast<Letter>(c))] = SubgroupGraph::kNone;
      if (static_cast<std::int32_t>(ut) != base && alive[ut] && degree(ut) <= 1) stack.push_back(ut);
    }
  }
  // Canonical BFS numbering.
  std::vector<std::int32_t> number(n, -1);
  std::vector<std::int32_t> order;
  number[static_cast<std::size_t>(base)] = 0;
  order.push_back(base);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = static_cast<std::size_t>(order[i]);
    for (std::size_t c = 0; c < alphabet_; ++c) {
      const auto t = adj[v * alphabet_ + c];
      if (t != SubgroupGraph::kNone && number[static_cast<std::size_t>(t)] < 0) {
        number[static_cast<std::size_t>(t)] = static_cast<std::int32_t>(order.size());
        order.push_back(t);
      }
    }
  }
  SubgroupGraph out(rank_);
  out.vertices_ = static_cast<std::int32_t>(order.size());
  out.table_.assign(order.size() * alphabet_, SubgroupGraph::kNone);
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = static_cast<std::size_t>(order[i]);
    for (std::size_t c = 0; c < alphabet_; ++c) {
      const auto t = adj[v * alphabet_ + c];
      if (t != SubgroupGraph::kNone) {
        out.table_[i * alphabet_ + c] = number[static_cast<std::size_t>(t)];
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SubgroupGraph

SubgroupGraph::SubgroupGraph(int rank)
    : rank_(rank), table_(static_cast<std::size_t>(2 * rank), kNone) {
  (void)Alphabet(rank);
}

SubgroupGraph SubgroupGraph::build(int rank, const std::vector<ReducedWord>& generators) {
  GraphFolder folder(rank);
  const auto base = folder.add_vertex();
  for (const auto& g : generators) {
    if (g.rank() != rank) throw AlphabetMismatch("generator of wrong rank: " + g.str());
    if (g.is_identity()) continue;
    folder.add_path(base, g, base);
  }
  return folder.finish(base);
}

std::int32_t SubgroupGraph::edge_count() const {
  std::int32_t e = 0;
  for (std::int32_t v = 0; v < vertices_; ++v) {
    for (int c = 0; c < alphabet(); c += 2) e += target(v, static_cast<Letter>(c)) != kNone;
  }
  return e;
}

int SubgroupGraph::degree(std::int32_t v) const {
  int d = 0;
  for (int c = 0; c < alphabet(); ++c) d += target(v, static_cast<Letter>(c)) != kNone;
  return d;
}

std::int32_t SubgroupGraph::read(const ReducedWord& w, std::int32_t from) const {
  if (w.rank() != rank_) throw AlphabetMismatch("word of wrong rank: " + w.str());
  auto v = from;
  for (Letter c : w.letters()) {
    v = target(v, c);
    if (v == kNone) return kNone;
  }
  return v;
}

std::vector<ReducedWord> SubgroupGraph::vertex_labels() const {
  std::vector<std::optional<ReducedWord>> label(static_cast<std::size_t>(vertices_));
  label[0] = ReducedWord(rank_);
  std::vector<std::int32_t> order{0};
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto v = order[i];
    for (int c = 0; c < alphabet(); ++c) {
      const auto t = target(v, static_cast<Letter>(c));
      if (t != kNone && !label[static_cast<std::size_t>(t)]) {
        label[static_cast<std::size_t>(t)] =
            *label[static_cast<std::size_t>(v)] * ReducedWord::from_reduced(rank_, {static_cast<Letter>(c)});
        order.push_back(t);
      }
    }
  }
  std::vector<ReducedWord> out;
  out.reserve(label.size());
  for (auto& l : label) out.push_back(l.value_or(ReducedWord(rank_)));
  return out;
}

std::vector<ReducedWord> SubgroupGraph::free_basis() const {
  const auto labels = vertex_labels();
  // Tree edges: the BFS parent edge of each vertex.
  std::set<std::pair<std::int32_t, int>> tree;
  for (std::int32_t v = 1; v < vertices_; ++v) {
    const auto& l = labels[static_cast<std::size_t>(v)];
    const auto parent = read(l.prefix(l.size() - 1));
    tree.emplace(parent, l.back());
    tree.emplace(v, inverse_letter(l.back()));
  }
  std::vector<ReducedWord> basis;
  for (std::int32_t v = 0; v < vertices_; ++v) {
    for (int c = 0; c < alphabet(); c += 2) {
      const auto t = target(v, static_cast<Letter>(c));
      if (t == kNone || tree.count({v, c})) continue;
      basis.push_back(labels[static_cast<std::size_t>(v)] *
                      ReducedWord::from_reduced(rank_, {static_cast<Letter>(c)}) *
                      inverse(labels[static_cast<std::size_t>(t)]));
    }
  }
  return basis;
}

std::string SubgroupGraph::serialize() const {
  const Alphabet alphabet_symbols(rank_);
  std::ostringstream out;
  out << "rank: " << rank_ << "\n";
  out << "basepoint: 0\n";
  out << "vertices: " << vertices_ << "\n";
  for (std::int32_t v = 0; v < vertices_; ++v) {
    for (int c = 0; c < alphabet(); c += 2) {
      const auto t = target(v, static_cast<Letter>(c));
      if (t != kNone) {
        out << v << ", " << alphabet_symbols.symbol(static_cast<Letter>(c)) << ", " << t << "\n";
      }
    }
  }
  return out.str();
}

SubgroupGraph SubgroupGraph::deserialize(const std::string& text) {
  const auto parsed = parse_graph_text(text);
  const int rank = parsed.integer("rank");
  const int base = parsed.integer("basepoint");
  const int n = parsed.integer("vertices");
  const Alphabet alphabet_symbols(rank);
  GraphFolder folder(rank);
  for (int i = 0; i < n; ++i) folder.add_vertex();
  for (const auto& [a, l, b] : parsed.edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("edge vertex out of range");
    folder.link(a, alphabet_symbols.parse(l), b);
  }
  if (base < 0 || base >= n) throw ParseError("basepoint out of range");
  return folder.finish(base);
}

// ---------------------------------------------------------------------------
// Operations

bool contains(const SubgroupGraph& h, const ReducedWord& w) { return h.read(w) == 0; }

IndexResult index(const SubgroupGraph& h) {
  IndexResult out;
  for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
    if (h.degree(v) != h.alphabet()) return out;
  }
  out.index = h.vertex_count();
  CosetTable table;
  table.representatives = h.vertex_labels();
  table.action.resize(static_cast<std::size_t>(h.rank()));
  for (int i = 0; i < h.rank(); ++i) {
    auto& perm = table.action[static_cast<std::size_t>(i)];
    perm.resize(static_cast<std::size_t>(h.vertex_count()));
    for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
      perm[static_cast<std::size_t>(v)] = h.target(v, static_cast<Letter>(2 * i));
    }
  }
  out.table = std::move(table);
  return out;
}

SubgroupGraph intersect(const SubgroupGraph& h, const SubgroupGraph& k) {
  if (h.rank() != k.rank()) throw AlphabetMismatch("intersect: rank mismatch");
  GraphFolder folder(h.rank());
  std::map<std::pair<std::int32_t, std::int32_t>, std::int32_t> ids;
  std::vector<std::pair<std::int32_t, std::int32_t>> order{{0, 0}};
  ids[{0, 0}] = folder.add_vertex();
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    const auto from = ids[{p, q}];
    for (int c = 0; c < h.alphabet(); c += 2) {
      const auto tp = h.target(p, static_cast<Letter>(c));
      const auto tq = k.target(q, static_cast<Letter>(c));
      if (tp == SubgroupGraph::kNone || tq == SubgroupGraph::kNone) continue;
      auto [it, fresh] = ids.try_emplace({tp, tq}, -1);
      if (fresh) {
        it->second = folder.add_vertex();
        order.emplace_back(tp, tq);
      }
      folder.link(from, static_cast<Letter>(c), it->second);
    }
    // Negative letters: discover vertices reachable only backwards.
    for (int c = 1; c < h.alphabet(); c += 2) {
      const auto tp = h.target(p, static_cast<Letter>(c));
      const auto tq = k.target(q, static_cast<Letter>(c));
      if (tp == SubgroupGraph::kNone || tq == SubgroupGraph::kNone) continue;
      auto [it, fresh] = ids.try_emplace({tp, tq}, -1);
      if (fresh) {
        it->second = folder.add_vertex();
        order.emplace_back(tp, tq);
      }
      folder.link(from, static_cast<Letter>(c), it->second);
    }
  }
  return folder.finish(0);
}

SubgroupGraph conjugate(const SubgroupGraph& h, const ReducedWord& g) {
  GraphFolder folder(h.rank());
  const auto old_base = folder.add_graph(h);
  const auto base = folder.add_vertex();
  folder.add_path(base, g, old_base);
  return folder.finish(base);
}

SubgroupGraph join(const SubgroupGraph& h, const SubgroupGraph& k) {
  if (h.rank() != k.rank()) throw AlphabetMismatch("join: rank mismatch");
  GraphFolder folder(h.rank());
  const auto a = folder.add_graph(h);
  const auto b = folder.add_graph(k);
  folder.identify(a, b);
  return folder.finish(a);
}

namespace {

// Label u of the hair from the basepoint to the first vertex of degree >= 3;
// H = u H' u^-1 with H' based on its cyclic core.
ReducedWord hair_label(const SubgroupGraph& h) {
  std::vector<Letter> label;
  std::int32_t v = 0;
  int came_by = -1;
  while (true) {
    const int deg = h.degree(v);
    if (v == 0 ? deg != 1 : deg != 2) break;
    int next = -1;
    for (int c = 0; c < h.alphabet(); ++c) {
      if (h.target(v, static_cast<Letter>(c)) != SubgroupGraph::kNone &&
          (came_by < 0 || c != inverse_letter(static_cast<Letter>(came_by)))) {
        next = c;
        break;
      }
    }
    if (next < 0) break;
    label.push_back(static_cast<Letter>(next));
    v = h.target(v, static_cast<Letter>(next));
    came_by = next;
    if (v == 0) break;
  }
  return ReducedWord::from_reduced(h.rank(), std::move(label));
}

}  // namespace

std::optional<std::int64_t> relative_index(const SubgroupGraph& h, const SubgroupGraph& k) {
  if (h.rank() != k.rank()) throw AlphabetMismatch("relative_index: rank mismatch");
  if (h.is_trivial()) return 1;
  const auto u = hair_label(h);
  const auto u_inv = inverse(u);
  const auto core = conjugate(h, u_inv);
  const auto other = conjugate(k, u_inv);
  // H' ∩ K' has finite index in H' iff the component of the product graph at
  // the basepoints covers the core of H'; the index is the sheet count.
  std::map<std::pair<std::int32_t, std::int32_t>, char> seen;
  std::vector<std::pair<std::int32_t, std::int32_t>> order{{0, 0}};
  seen[{0, 0}] = 1;
  std::int64_t sheets = 0;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    if (p == 0) ++sheets;
    for (int c = 0; c < core.alphabet(); ++c) {
      const auto tp = core.target(p, static_cast<Letter>(c));
      if (tp == SubgroupGraph::kNone) continue;
      const auto tq = other.target(q, static_cast<Letter>(c));
      if (tq == SubgroupGraph::kNone) return std::nullopt;
      if (seen.emplace(std::make_pair(tp, tq), 1).second) order.emplace_back(tp, tq);
    }
  }
  return sheets;
}

ReducedWord double_coset_representative(const SubgroupGraph& h, const ReducedWord& g,
                                        const SubgroupGraph& k) {
  if (h.rank() != k.rank() || g.rank() != h.rank()) {
    throw AlphabetMismatch("double coset: rank mismatch");
  }
  // Reduced words of gK are the labels of paths s -> b in the folded graph of
  // K with a g-labelled tail. A reduced word of HgK is x y where x runs
  // 0 -> p in H's graph, y runs q -> b, and (p, q) lies in the component of
  // (0, s) of the product graph. The answer is the shortlex-least label of a
  // shortest such path.
  GraphFolder right(k.rank());
  const auto kb = right.add_graph(k);
  const auto s0 = right.add_vertex();
  right.add_path(s0, g, kb);
  const auto b = right.find(kb);
  const auto s = right.find(s0);
  const int alphabet = h.alphabet();
  const auto nh = static_cast<std::size_t>(h.vertex_count());
  const auto nr = static_cast<std::size_t>(right.slots());

  std::vector<std::vector<std::int32_t>> linked(nh);
  {
    std::set<std::pair<std::int32_t, std::int32_t>> seen{{0, s}};
    std::vector<std::pair<std::int32_t, std::int32_t>> stack{{0, s}};
    while (!stack.empty()) {
      const auto [p, q] = stack.back();
      stack.pop_back();
      linked[static_cast<std::size_t>(p)].push_back(q);
      for (int c = 0; c < alphabet; ++c) {
        const auto tp = h.target(p, static_cast<Letter>(c));
        const auto tq = right.target(q, static_cast<Letter>(c));
        if (tp == SubgroupGraph::kNone || tq == SubgroupGraph::kNone) continue;
        if (seen.emplace(tp, tq).second) stack.emplace_back(tp, tq);
      }
    }
  }

  // Distances to b: first inside the gK graph, then into H's graph through
  // the links (Dijkstra, since links carry different offsets).
  constexpr int kInf = std::numeric_limits<int>::max();
  std::vector<int> dist_r(nr, kInf);
  {
    std::deque<std::int32_t> queue{b};
    dist_r[static_cast<std::size_t>(b)] = 0;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (int c = 0; c < alphabet; ++c) {
        const auto t = right.target(v, static_cast<Letter>(c));
        if (t != SubgroupGraph::kNone && dist_r[static_cast<std::size_t>(t)] == kInf) {
          dist_r[static_cast<std::size_t>(t)] = dist_r[static_cast<std::size_t>(v)] + 1;
          queue.push_back(t);
        }
      }
    }
  }
  std::vector<int> dist_h(nh, kInf);
  {
    using Item = std::pair<int, std::int32_t>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
    for (std::size_t p = 0; p < nh; ++p) {
      for (auto q : linked[p]) dist_h[p] = std::min(dist_h[p], dist_r[static_cast<std::size_t>(q)]);
      if (dist_h[p] < kInf) queue.emplace(dist_h[p], static_cast<std::int32_t>(p));
    }
    while (!queue.empty()) {
      const auto [d, p] = queue.top();
      queue.pop();
      if (d > dist_h[static_cast<std::size_t>(p)]) continue;
      for (int c = 0; c < alphabet; ++c) {
        const auto t = h.target(p, static_cast<Letter>(c));
        if (t != SubgroupGraph::kNone && d + 1 < dist_h[static_cast<std::size_t>(t)]) {
          dist_h[static_cast<std::size_t>(t)] = d + 1;
          queue.emplace(d + 1, t);
        }
      }
    }
  }

  // Greedy least-letter walk over sets of nodes lying on shortest paths.
  int remaining = dist_h[0];
  std::set<std::int32_t> in_h{0};
  std::set<std::int32_t> in_r;
  auto close = [&]() {
    for (auto p : in_h) {
      for (auto q : linked[static_cast<std::size_t>(p)]) {
        if (dist_r[static_cast<std::size_t>(q)] == remaining) in_r.insert(q);
      }
    }
  };
  close();
  std::vector<Letter> label;
  while (remaining > 0) {
    for (int c = 0; c < alphabet; ++c) {
      std::set<std::int32_t> next_h, next_r;
      for (auto p : in_h) {
        const auto t = h.target(p, static_cast<Letter>(c));
        if (t != SubgroupGraph::kNone && dist_h[static_cast<std::size_t>(t)] == remaining - 1) next_h.insert(t);
      }
      for (auto q : in_r) {
        const auto t = right.target(q, static_cast<Letter>(c));
        if (t != SubgroupGraph::kNone && dist_r[static_cast<std::size_t>(t)] == remaining - 1) next_r.insert(t);
      }
      if (next_h.empty() && next_r.empty()) continue;
      label.push_back(static_cast<Letter>(c));
      in_h = std::move(next_h);
      in_r = std::move(next_r);
      --remaining;
      close();
      break;
    }
  }
  return ReducedWord::from_reduced(h.rank(), std::move(label));
}

ReducedWord right_coset_representative(const SubgroupGraph& h, const ReducedWord& g) {
  return double_coset_representative(h, g, SubgroupGraph(h.rank()));
}

std::vector<ReducedWord> double_cosets(const SubgroupGraph& h, const SubgroupGraph& k,
                                       int radius) {
  std::set<ReducedWord, ShortlexLess> reps;
  for (BallEnumerator e(h.rank(), radius); !e.done(); e.advance()) {
    reps.insert(double_coset_representative(h, e.current(), k));
  }
  return {reps.begin(), reps.end()};
}

bool conjugates_into(const ReducedWord& w, const SubgroupGraph& h) {
  if (w.is_identity()) return true;
  const auto core = cyclic_reduce(w).core;
  for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
    if (h.read(core, v) == v) return true;
  }
  return false;
}

std::optional<int> power_conjugates_into(const ReducedWord& w, const SubgroupGraph& h) {
  if (w.is_identity()) throw std::invalid_argument("power_conjugates_into: identity input");
  const auto core = cyclic_reduce(w).core;
  std::optional<int> best;
  // Reading the core is a partial injective map on vertices; closed orbits
  // have length at most |V|.
  for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
    auto cur = v;
    for (int m = 1; m <= h.vertex_count(); ++m) {
      cur = h.read(core, cur);
      if (cur == SubgroupGraph::kNone) break;
      if (cur == v) {
        if (!best || m < *best) best = m;
        break;
      }
    }
  }
  return best;
}

bool virtually_normalizes(const SubgroupGraph& h, const ReducedWord& g) {
  const auto hg = conjugate(h, g);
  return relative_index(h, hg).has_value() && relative_index(hg, h).has_value();
}

CommensuratorResult commensurator(const SubgroupGraph& h, int radius) {
  CommensuratorResult out{SubgroupGraph(h.rank()), {}, radius, true, std::nullopt};
  std::unordered_set<ReducedWord, ReducedWordHash> accepted;
  for (BallEnumerator e(h.rank(), radius); !e.done(); e.advance()) {
    if (virtually_normalizes(h, e.current())) {
      out.accepted.push_back(e.current());
      accepted.insert(e.current());
    }
  }
  out.subgroup = SubgroupGraph::build(h.rank(), out.accepted);
  for (BallEnumerator e(h.rank(), radius); !e.done(); e.advance()) {
    if (contains(out.subgroup, e.current()) && !accepted.count(e.current())) {
      out.closed = false;
      out.closure_violation = e.current();
      break;
    }
  }
  return out;
}

namespace {

// Bron–Kerbosch with pivoting; keeps the first maximum clique in vertex order.
void max_clique(const std::vector<std::vector<char>>& adj, std::vector<int>& current,
                std::vector<int> candidates, std::vector<int> excluded, std::vector<int>& best) {
  if (candidates.empty() && excluded.empty()) {
    if (current.size() > best.size()) best = current;
    return;
  }
  if (current.size() + candidates.size() <= best.size()) return;
  int pivot = candidates.empty() ? excluded.front() : candidates.front();
  std::size_t pivot_deg = 0;
  for (const auto* pool : {&candidates, &excluded}) {
    for (int u : *pool) {
      std::size_t d = 0;
      for (int v : candidates) d += adj[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)];
      if (d > pivot_deg) {
        pivot_deg = d;
        pivot = u;
      }
    }
  }
  const auto snapshot = candidates;
  for (int v : snapshot) {
    if (adj[static_cast<std::size_t>(pivot)][static_cast<std::size_t>(v)]) continue;
    std::vector<int> next_c;
    std::vector<int> next_x;
    for (int u : candidates) {
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next_c.push_back(u);
    }
    for (int u : excluded) {
      if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next_x.push_back(u);
    }
    current.push_back(v);
    max_clique(adj, current, std::move(next_c), std::move(next_x), best);
    current.pop_back();
    candidates.erase(std::find(candidates.begin(), candidates.end(), v));
    excluded.push_back(v);
  }
}

}  // namespace

WidthResult width_lower_bound(const SubgroupGraph& h, int radius) {
  WidthResult out;
  if (h.is_trivial()) return out;
  std::set<ReducedWord, ShortlexLess> reps;
  for (BallEnumerator e(h.rank(), radius); !e.done(); e.advance()) {
    reps.insert(right_coset_representative(h, e.current()));
  }
  const std::vector<ReducedWord> conj(reps.begin(), reps.end());
  out.candidates = conj.size();
  std::vector<SubgroupGraph> conjugates;
  conjugates.reserve(conj.size());
  for (const auto& g : conj) conjugates.push_back(conjugate(h, inverse(g)));
  const std::size_t n = conj.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      // Nontrivial subgroups of a free group are infinite.
      const bool infinite = !intersect(conjugates[i], conjugates[j]).is_trivial();
      adj[i][j] = adj[j][i] = infinite;
    }
  }
  std::vector<int> all(n);
  for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<int>(i);
  std::vector<int> current;
  std::vector<int> best;
  max_clique(adj, current, all, {}, best);
  std::sort(best.begin(), best.end());
  out.width = static_cast<int>(best.size());
  for (int i : best) out.conjugators.push_back(conj[static_cast<std::size_t>(i)]);
  return out;
}

namespace {

// Exact "infinitely many members extend p" for a graph language, computed on
// the (vertex, last letter) automaton of reduced paths.
bool graph_residual_infinite(const SubgroupGraph& h, const ReducedWord& p) {
  auto v = h.read(p);
  if (v == SubgroupGraph::kNone) return false;
  const int alphabet = h.alphabet();
  const int none = alphabet;  // "no last letter"
  const int start_last = p.is_identity() ? none : p.back();
  auto state = [&](std::int32_t vertex, int last) { return vertex * (alphabet + 1) + last; };
  const int count = h.vertex_count() * (alphabet + 1);
  auto successors = [&](int s, const std::function<void(int)>& f) {
    const std::int32_t vertex = s / (alphabet + 1);
    const int last = s % (alphabet + 1);
    for (int c = 0; c < alphabet; ++c) {
      if (last != none && c == inverse_letter(static_cast<Letter>(last))) continue;
      const auto t = h.target(vertex, static_cast<Letter>(c));
      if (t != SubgroupGraph::kNone) f(state(t, c));
    }
  };
  // Co-reachability of the accepting states (basepoint, any last letter).
  std::vector<std::vector<int>> preds(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    successors(s, [&](int t) { preds[static_cast<std::size_t>(t)].push_back(s); });
  }
  std::vector<char> coreach(static_cast<std::size_t>(count), 0);
  std::vector<int> stack;
  for (int last = 0; last <= alphabet; ++last) {
    coreach[static_cast<std::size_t>(state(0, last))] = 1;
    stack.push_back(state(0, last));
  }
  while (!stack.empty()) {
    const int s = stack.back();
    stack.pop_back();
    for (int q : preds[static_cast<std::size_t>(s)]) {
      if (!coreach[static_cast<std::size_t>(q)]) {
        coreach[static_cast<std::size_t>(q)] = 1;
        stack.push_back(q);
      }
    }
  }
  // Cycle search among co-reachable states reachable from the start.
  const int start = state(v, start_last);
  if (!coreach[static_cast<std::size_t>(start)]) return false;
  std::vector<char> color(static_cast<std::size_t>(count), 0);
  std::function<bool(int)> dfs = [&](int s) {
    color[static_cast<std::size_t>(s)] = 1;
    bool cyc = false;
    successors(s, [&](int t) {
      if (cyc || !coreach[static_cast<std::size_t>(t)]) return;
      if (color[static_cast<std::size_t>(t)] == 1) {
        cyc = true;
      } else if (color[static_cast<std::size_t>(t)] == 0 && dfs(t)) {
        cyc = true;
      }
    });
    color[static_cast<std::size_t>(s)] = 2;
    return cyc;
  };
  return dfs(start);
}

}  // namespace

SetOracle subgroup_oracle(const SubgroupGraph& h, std::string descriptor) {
  if (descriptor.empty()) descriptor = describe_generators(h.free_basis());
  auto graph = std::make_shared<const SubgroupGraph>(h);
  // Distance back to the basepoint prunes the depth-first enumeration.
  auto dist = std::make_shared<std::vector<int>>(static_cast<std::size_t>(h.vertex_count()), -1);
  {
    std::deque<std::int32_t> queue{0};
    (*dist)[0] = 0;
    while (!queue.empty()) {
      const auto v = queue.front();
      queue.pop_front();
      for (int c = 0; c < h.alphabet(); ++c) {
        const auto t = h.target(v, static_cast<Letter>(c));
        if (t != SubgroupGraph::kNone && (*dist)[static_cast<std::size_t>(t)] < 0) {
          (*dist)[static_cast<std::size_t>(t)] = (*dist)[static_cast<std::size_t>(v)] + 1;
          queue.push_back(t);
        }
      }
    }
  }
  auto membership = [graph](const ReducedWord& w) { return contains(*graph, w); };
  // One depth-first pass per length; letter codes follow shortlex order, so
  // each pass emits its length in order.
  auto enumerate = [graph, dist](int radius, const SetOracle::Visitor& visit) {
    const int rank = graph->rank();
    std::vector<Letter> buf;
    int target_len = 0;
    std::function<void(std::int32_t)> dfs = [&](std::int32_t v) {
      if (static_cast<int>(buf.size()) == target_len) {
        if (v == 0) visit(ReducedWord::from_reduced(rank, buf));
        return;
      }
      for (int c = 0; c < graph->alphabet(); ++c) {
        if (!buf.empty() && c == inverse_letter(buf.back())) continue;
        const auto t = graph->target(v, static_cast<Letter>(c));
        if (t == SubgroupGraph::kNone) continue;
        if (static_cast<int>(buf.size()) + 1 + (*dist)[static_cast<std::size_t>(t)] > target_len) continue;
        buf.push_back(static_cast<Letter>(c));
        dfs(t);
        buf.pop_back();
      }
    };
    for (target_len = 0; target_len <= radius; ++target_len) dfs(0);
  };
  auto residual = [graph](const ReducedWord& p) { return graph_residual_infinite(*graph, p); };
  return SetOracle(h.rank(), std::move(descriptor), membership, enumerate, residual);
}

std::string describe_generators(const std::vector<ReducedWord>& gens) {
  std::string out = "<";
  for (std::size_t i = 0; i < gens.size(); ++i) {
    if (i) out += ",";
    out += gens[i].str();
  }
  return out + ">";
}

}  // namespace hypset
