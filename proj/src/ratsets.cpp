#include "hypset/ratsets.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <sstream>

#include "text_format.hpp"

namespace hypset {

namespace {

// Nondeterministic automaton with epsilon moves; only a construction aid.
struct Nfa {
  int rank = 0;
  std::vector<std::vector<std::pair<Letter, int>>> edges;
  std::vector<std::vector<int>> eps;
  std::vector<int> starts;
  std::vector<char> accepting;

  int add_state() {
    edges.emplace_back();
    eps.emplace_back();
    accepting.push_back(0);
    return static_cast<int>(edges.size()) - 1;
  }

  void add_path(int from, const ReducedWord& w, int to) {
    if (w.is_identity()) {
      eps[static_cast<std::size_t>(from)].push_back(to);
      return;
    }
    int cur = from;
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      const int next = add_state();
      edges[static_cast<std::size_t>(cur)].emplace_back(w[i], next);
      cur = next;
    }
    edges[static_cast<std::size_t>(cur)].emplace_back(w.back(), to);
  }
};

// Complete-table DFA before trimming and minimization.
struct RawDfa {
  int rank = 0;
  std::int32_t states = 0;
  std::vector<std::int32_t> table;
  std::vector<char> accepting;

  std::int32_t add_state(bool accept) {
    table.resize(table.size() + static_cast<std::size_t>(2 * rank), ReducedAutomaton::kNone);
    accepting.push_back(accept ? 1 : 0);
    return states++;
  }
  std::int32_t& at(std::int32_t s, int c) {
    return table[static_cast<std::size_t>(s) * static_cast<std::size_t>(2 * rank) + static_cast<std::size_t>(c)];
  }
};

std::vector<int> closure(const Nfa& nfa, std::vector<int> set) {
  std::vector<char> in(nfa.edges.size(), 0);
  for (int s : set) in[static_cast<std::size_t>(s)] = 1;
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (int t : nfa.eps[static_cast<std::size_t>(set[i])]) {
      if (!in[static_cast<std::size_t>(t)]) {
        in[static_cast<std::size_t>(t)] = 1;
        set.push_back(t);
      }
    }
  }
  std::sort(set.begin(), set.end());
  return set;
}

// Subset construction restricted to reduced words: a DFA state remembers its
// last letter and never reads that letter's inverse.
RawDfa determinize(const Nfa& nfa) {
  RawDfa out;
  out.rank = nfa.rank;
  const int alphabet = 2 * nfa.rank;
  using Key = std::pair<std::vector<int>, int>;
  std::map<Key, std::int32_t> ids;
  std::vector<Key> order;
  auto intern = [&](Key key) {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    bool accept = false;
    for (int s : key.first) accept = accept || nfa.accepting[static_cast<std::size_t>(s)];
    const auto id = out.add_state(accept);
    ids.emplace(key, id);
    order.push_back(std::move(key));
    return id;
  };
  intern({closure(nfa, nfa.starts), alphabet});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const Key key = order[i];
    for (int c = 0; c < alphabet; ++c) {
      if (key.second != alphabet && c == inverse_letter(static_cast<Letter>(key.second))) continue;
      std::vector<int> next;
      for (int s : key.first) {
        for (const auto& [l, t] : nfa.edges[static_cast<std::size_t>(s)]) {
          if (l == c) next.push_back(t);
        }
      }
      if (next.empty()) continue;
      std::sort(next.begin(), next.end());
      next.erase(std::unique(next.begin(), next.end()), next.end());
      const auto id = intern({closure(nfa, std::move(next)), c});
      out.at(static_cast<std::int32_t>(i), c) = id;
    }
  }
  return out;
}

}  // namespace

class AutomatonBuilder {
 public:
  // Trim, minimize (Moore refinement on the partial table; trimmed states are
  // never equivalent to the missing sink), and renumber canonically.
  static ReducedAutomaton canonical(RawDfa raw) {
    ReducedAutomaton out(raw.rank);
    const int alphabet = 2 * raw.rank;
    const auto n = static_cast<std::size_t>(raw.states);
    if (n == 0) return out;
    std::vector<char> reach(n, 0);
    std::vector<std::int32_t> stack{0};
    reach[0] = 1;
    std::vector<std::vector<std::int32_t>> preds(n);
    while (!stack.empty()) {
      const auto s = stack.back();
      stack.pop_back();
      for (int c = 0; c < alphabet; ++c) {
        const auto t = raw.at(s, c);
        if (t == ReducedAutomaton::kNone) continue;
        preds[static_cast<std::size_t>(t)].push_back(s);
        if (!reach[static_cast<std::size_t>(t)]) {
          reach[static_cast<std::size_t>(t)] = 1;
          stack.push_back(t);
        }
      }
    }
    std::vector<char> useful(n, 0);
    for (std::size_t s = 0; s < n; ++s) {
      if (reach[s] && raw.accepting[s]) {
        useful[s] = 1;
        stack.push_back(static_cast<std::int32_t>(s));
      }
    }
    while (!stack.empty()) {
      const auto s = stack.back();
      stack.pop_back();
      for (auto p : preds[static_cast<std::size_t>(s)]) {
        if (!useful[static_cast<std::size_t>(p)]) {
          useful[static_cast<std::size_t>(p)] = 1;
          stack.push_back(p);
        }
      }
    }
    if (!useful[0]) return out;
    auto live = [&](std::int32_t t) {
      return t != ReducedAutomaton::kNone && useful[static_cast<std::size_t>(t)];
    };

    // Moore refinement.
    std::vector<std::int32_t> cls(n, -1);
    for (std::size_t s = 0; s < n; ++s) {
      if (useful[s]) cls[s] = raw.accepting[s] ? 1 : 0;
    }
    std::size_t classes = 0;
    while (true) {
      std::map<std::vector<std::int32_t>, std::int32_t> sig_ids;
      std::vector<std::int32_t> next(n, -1);
      for (std::size_t s = 0; s < n; ++s) {
        if (!useful[s]) continue;
        std::vector<std::int32_t> sig{cls[s]};
        for (int c = 0; c < alphabet; ++c) {
          const auto t = raw.at(static_cast<std::int32_t>(s), c);
          sig.push_back(live(t) ? cls[static_cast<std::size_t>(t)] : -1);
        }
        auto [it, fresh] = sig_ids.try_emplace(sig, static_cast<std::int32_t>(sig_ids.size()));
        next[s] = it->second;
      }
      const bool stable = sig_ids.size() == classes;
      classes = sig_ids.size();
      cls = std::move(next);
      if (stable) break;
    }
    // One representative per class, then BFS numbering from the start.
    std::vector<std::int32_t> rep(classes, -1);
    for (std::size_t s = 0; s < n; ++s) {
      if (useful[s] && rep[static_cast<std::size_t>(cls[s])] < 0) {
        rep[static_cast<std::size_t>(cls[s])] = static_cast<std::int32_t>(s);
      }
    }
    std::vector<std::int32_t> number(classes, -1);
    std::vector<std::int32_t> order{cls[0]};
    number[static_cast<std::size_t>(cls[0])] = 0;
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto s = rep[static_cast<std::size_t>(order[i])];
      for (int c = 0; c < alphabet; ++c) {
        const auto t = raw.at(s, c);
        if (!live(t)) continue;
        const auto k = cls[static_cast<std::size_t>(t)];
        if (number[static_cast<std::size_t>(k)] < 0) {
          number[static_cast<std::size_t>(k)] = static_cast<std::int32_t>(order.size());
          order.push_back(k);
        }
      }
    }
    out.states_ = static_cast<std::int32_t>(order.size());
    out.table_.assign(order.size() * static_cast<std::size_t>(alphabet), ReducedAutomaton::kNone);
    out.accepting_.assign(order.size(), 0);
    for (std::size_t i = 0; i < order.size(); ++i) {
      const auto s = rep[static_cast<std::size_t>(order[i])];
      out.accepting_[i] = raw.accepting[static_cast<std::size_t>(s)];
      for (int c = 0; c < alphabet; ++c) {
        const auto t = raw.at(s, c);
        if (live(t)) {
          out.table_[i * static_cast<std::size_t>(alphabet) + static_cast<std::size_t>(c)] =
              number[static_cast<std::size_t>(cls[static_cast<std::size_t>(t)])];
        }
      }
    }
    out.compute_caches();
    return out;
  }

  static RawDfa raw_of(const ReducedAutomaton& a) {
    RawDfa raw;
    raw.rank = a.rank_;
    raw.states = a.states_;
    raw.table = a.table_;
    raw.accepting = a.accepting_;
    return raw;
  }
};

namespace {

ReducedAutomaton from_nfa(const Nfa& nfa) { return AutomatonBuilder::canonical(determinize(nfa)); }

void check_ranks(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  if (a.rank() != b.rank()) throw AlphabetMismatch("automata over different alphabets");
}

}  // namespace

ReducedAutomaton::ReducedAutomaton(int rank) : rank_(rank) { (void)Alphabet(rank); }

void ReducedAutomaton::compute_caches() {
  const auto n = static_cast<std::size_t>(states_);
  const int k = alphabet();
  // Tarjan SCC; a state is cyclic when its component has a cycle.
  std::vector<std::int32_t> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<char> on_stack(n, 0);
  std::vector<std::int32_t> stack;
  std::int32_t counter = 0;
  std::int32_t comps = 0;
  std::function<void(std::int32_t)> strong = [&](std::int32_t v) {
    const auto uv = static_cast<std::size_t>(v);
    index[uv] = low[uv] = counter++;
    stack.push_back(v);
    on_stack[uv] = 1;
    for (int c = 0; c < k; ++c) {
      const auto w = target(v, static_cast<Letter>(c));
      if (w == kNone) continue;
      const auto uw = static_cast<std::size_t>(w);
      if (index[uw] < 0) {
        strong(w);
        low[uv] = std::min(low[uv], low[uw]);
      } else if (on_stack[uw]) {
        low[uv] = std::min(low[uv], index[uw]);
      }
    }
    if (low[uv] == index[uv]) {
      while (true) {
        const auto w = stack.back();
        stack.pop_back();
        on_stack[static_cast<std::size_t>(w)] = 0;
        comp[static_cast<std::size_t>(w)] = comps;
        if (w == v) break;
      }
      ++comps;
    }
  };
  for (std::size_t s = 0; s < n; ++s) {
    if (index[s] < 0) strong(static_cast<std::int32_t>(s));
  }
  // Tarjan emits components in reverse topological order, so successors'
  // components are finished first.
  std::vector<std::vector<std::int32_t>> members(static_cast<std::size_t>(comps));
  for (std::size_t s = 0; s < n; ++s) members[static_cast<std::size_t>(comp[s])].push_back(static_cast<std::int32_t>(s));
  std::vector<char> comp_inf(static_cast<std::size_t>(comps), 0);
  for (std::int32_t c = 0; c < comps; ++c) {
    bool inf = members[static_cast<std::size_t>(c)].size() > 1;
    for (auto s : members[static_cast<std::size_t>(c)]) {
      for (int l = 0; l < k; ++l) {
        const auto t = target(s, static_cast<Letter>(l));
        if (t == kNone) continue;
        const auto tc = comp[static_cast<std::size_t>(t)];
        if (tc == c ? true : comp_inf[static_cast<std::size_t>(tc)] != 0) inf = true;
      }
    }
    comp_inf[static_cast<std::size_t>(c)] = inf;
  }
  infinite_.assign(n, 0);
  for (std::size_t s = 0; s < n; ++s) infinite_[s] = comp_inf[static_cast<std::size_t>(comp[s])];

  distance_to_accept_.assign(n, -1);
  std::vector<std::vector<std::int32_t>> preds(n);
  std::deque<std::int32_t> queue;
  for (std::size_t s = 0; s < n; ++s) {
    for (int c = 0; c < k; ++c) {
      const auto t = target(static_cast<std::int32_t>(s), static_cast<Letter>(c));
      if (t != kNone) preds[static_cast<std::size_t>(t)].push_back(static_cast<std::int32_t>(s));
    }
    if (accepting_[s]) {
      distance_to_accept_[s] = 0;
      queue.push_back(static_cast<std::int32_t>(s));
    }
  }
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (auto p : preds[static_cast<std::size_t>(s)]) {
      if (distance_to_accept_[static_cast<std::size_t>(p)] < 0) {
        distance_to_accept_[static_cast<std::size_t>(p)] = distance_to_accept_[static_cast<std::size_t>(s)] + 1;
        queue.push_back(p);
      }
    }
  }
}

ReducedAutomaton ReducedAutomaton::from_subgroup(const SubgroupGraph& h) {
  Nfa nfa;
  nfa.rank = h.rank();
  for (std::int32_t v = 0; v < h.vertex_count(); ++v) nfa.add_state();
  for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
    for (int c = 0; c < h.alphabet(); ++c) {
      const auto t = h.target(v, static_cast<Letter>(c));
      if (t != SubgroupGraph::kNone) nfa.edges[static_cast<std::size_t>(v)].emplace_back(static_cast<Letter>(c), t);
    }
  }
  nfa.starts = {0};
  nfa.accepting[0] = 1;
  return from_nfa(nfa);
}

ReducedAutomaton ReducedAutomaton::from_words(int rank, const std::vector<ReducedWord>& words) {
  Nfa nfa;
  nfa.rank = rank;
  const int start = nfa.add_state();
  const int accept = nfa.add_state();
  nfa.starts = {start};
  nfa.accepting[static_cast<std::size_t>(accept)] = 1;
  for (const auto& w : words) {
    if (w.rank() != rank) throw AlphabetMismatch("word of wrong rank: " + w.str());
    nfa.add_path(start, w, accept);
  }
  return from_nfa(nfa);
}

ReducedAutomaton ReducedAutomaton::word_star(const ReducedWord& w) {
  // w^n = u k^n u^-1 with k cyclically reduced, so the powers form the
  // language u (k k*) u^-1 plus the identity.
  const auto cr = cyclic_reduce(w);
  Nfa nfa;
  nfa.rank = w.rank();
  const int start = nfa.add_state();
  nfa.starts = {start};
  nfa.accepting[static_cast<std::size_t>(start)] = 1;
  if (w.is_identity()) return from_nfa(nfa);
  const int enter = nfa.add_state();
  const int loop = nfa.add_state();
  const int accept = nfa.add_state();
  nfa.accepting[static_cast<std::size_t>(accept)] = 1;
  nfa.add_path(start, cr.conjugator, enter);
  nfa.add_path(enter, cr.core, loop);
  nfa.add_path(loop, cr.core, loop);
  nfa.add_path(loop, inverse(cr.conjugator), accept);
  return from_nfa(nfa);
}

ReducedAutomaton ReducedAutomaton::whole_group(int rank) {
  Nfa nfa;
  nfa.rank = rank;
  const int s = nfa.add_state();
  nfa.starts = {s};
  nfa.accepting[0] = 1;
  for (int c = 0; c < 2 * rank; ++c) nfa.edges[0].emplace_back(static_cast<Letter>(c), s);
  return from_nfa(nfa);
}

std::int32_t ReducedAutomaton::read(const ReducedWord& w) const {
  if (w.rank() != rank_) throw AlphabetMismatch("word of wrong rank: " + w.str());
  if (empty()) return kNone;
  std::int32_t s = 0;
  for (Letter c : w.letters()) {
    s = target(s, c);
    if (s == kNone) return kNone;
  }
  return s;
}

bool ReducedAutomaton::accepts(const ReducedWord& w) const {
  const auto s = read(w);
  return s != kNone && accepting(s);
}

bool ReducedAutomaton::residual_infinite(const ReducedWord& prefix) const {
  const auto s = read(prefix);
  return s != kNone && infinite_from(s);
}

std::vector<ReducedWord> ReducedAutomaton::enumerate(int radius) const {
  std::vector<ReducedWord> out;
  if (empty()) return out;
  std::vector<Letter> buf;
  // One pass per length keeps the output in shortlex order.
  for (int len = 0; len <= radius; ++len) {
    std::function<void(std::int32_t)> walk = [&](std::int32_t s) {
      const int depth = static_cast<int>(buf.size());
      if (depth == len) {
        if (accepting(s)) out.push_back(ReducedWord::from_reduced(rank_, buf));
        return;
      }
      for (int c = 0; c < alphabet(); ++c) {
        const auto t = target(s, static_cast<Letter>(c));
        if (t == kNone || distance_to_accept_[static_cast<std::size_t>(t)] > len - depth - 1) continue;
        buf.push_back(static_cast<Letter>(c));
        walk(t);
        buf.pop_back();
      }
    };
    if (distance_to_accept_[0] <= len) walk(0);
  }
  return out;
}

std::string ReducedAutomaton::serialize() const {
  const Alphabet symbols(rank_);
  std::ostringstream out;
  out << "rank: " << rank_ << "\n";
  out << "start: 0\n";
  out << "states: " << states_ << "\n";
  out << "accepting:";
  for (std::int32_t s = 0; s < states_; ++s) {
    if (accepting(s)) out << " " << s;
  }
  out << "\n";
  for (std::int32_t s = 0; s < states_; ++s) {
    for (int c = 0; c < alphabet(); ++c) {
      const auto t = target(s, static_cast<Letter>(c));
      if (t != kNone) out << s << ", " << symbols.symbol(static_cast<Letter>(c)) << ", " << t << "\n";
    }
  }
  return out.str();
}

ReducedAutomaton ReducedAutomaton::deserialize(const std::string& text) {
  const auto parsed = parse_graph_text(text);
  const int rank = parsed.integer("rank");
  const int n = parsed.integer("states");
  const Alphabet symbols(rank);
  if (n == 0) return ReducedAutomaton(rank);
  const int start = parsed.integer("start");
  if (start < 0 || start >= n) throw ParseError("start state out of range");
  // Reading as an NFA (start first) tolerates any numbering and re-derives the
  // canonical form.
  Nfa nfa;
  nfa.rank = rank;
  for (int i = 0; i < n; ++i) nfa.add_state();
  nfa.starts = {start};
  std::istringstream acc(parsed.header.count("accepting") ? parsed.header.at("accepting") : "");
  int s = 0;
  while (acc >> s) {
    if (s < 0 || s >= n) throw ParseError("accepting state out of range");
    nfa.accepting[static_cast<std::size_t>(s)] = 1;
  }
  for (const auto& [a, l, b] : parsed.edges) {
    if (a < 0 || a >= n || b < 0 || b >= n) throw ParseError("edge state out of range");
    nfa.edges[static_cast<std::size_t>(a)].emplace_back(symbols.parse(l), b);
  }
  return from_nfa(nfa);
}

ReducedAutomaton boolean(BoolOp op, const ReducedAutomaton& a, const ReducedAutomaton& b) {
  check_ranks(a, b);
  RawDfa raw;
  raw.rank = a.rank();
  const int alphabet = a.alphabet();
  using Pair = std::pair<std::int32_t, std::int32_t>;
  std::map<Pair, std::int32_t> ids;
  std::vector<Pair> order;
  auto accept = [&](Pair p) {
    const bool in_a = p.first != ReducedAutomaton::kNone && a.accepting(p.first);
    const bool in_b = p.second != ReducedAutomaton::kNone && b.accepting(p.second);
    switch (op) {
      case BoolOp::Union: return in_a || in_b;
      case BoolOp::Intersection: return in_a && in_b;
      case BoolOp::Difference: return in_a && !in_b;
    }
    return false;
  };
  auto intern = [&](Pair p) {
    auto [it, fresh] = ids.try_emplace(p, raw.states);
    if (fresh) {
      raw.add_state(accept(p));
      order.push_back(p);
    }
    return it->second;
  };
  intern({a.empty() ? ReducedAutomaton::kNone : 0, b.empty() ? ReducedAutomaton::kNone : 0});
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [p, q] = order[i];
    for (int c = 0; c < alphabet; ++c) {
      const auto tp = p == ReducedAutomaton::kNone ? ReducedAutomaton::kNone : a.target(p, static_cast<Letter>(c));
      const auto tq = q == ReducedAutomaton::kNone ? ReducedAutomaton::kNone : b.target(q, static_cast<Letter>(c));
      if (tp == ReducedAutomaton::kNone && tq == ReducedAutomaton::kNone) continue;
      if (op != BoolOp::Union && tp == ReducedAutomaton::kNone) continue;
      const auto id = intern({tp, tq});
      raw.at(static_cast<std::int32_t>(i), c) = id;
    }
  }
  return AutomatonBuilder::canonical(std::move(raw));
}

ReducedAutomaton complement(const ReducedAutomaton& a) {
  return boolean(BoolOp::Difference, ReducedAutomaton::whole_group(a.rank()), a);
}

ReducedAutomaton inverse(const ReducedAutomaton& a) {
  if (a.empty()) return a;
  Nfa nfa;
  nfa.rank = a.rank();
  for (std::int32_t s = 0; s < a.state_count(); ++s) nfa.add_state();
  for (std::int32_t s = 0; s < a.state_count(); ++s) {
    for (int c = 0; c < a.alphabet(); ++c) {
      const auto t = a.target(s, static_cast<Letter>(c));
      if (t != ReducedAutomaton::kNone) {
        nfa.edges[static_cast<std::size_t>(t)].emplace_back(inverse_letter(static_cast<Letter>(c)), s);
      }
    }
    if (a.accepting(s)) nfa.starts.push_back(s);
  }
  nfa.accepting[0] = 1;
  return from_nfa(nfa);
}

ReducedAutomaton reduced_product(const ReducedAutomaton& a, const ReducedAutomaton& b) {
  check_ranks(a, b);
  if (a.empty() || b.empty()) return ReducedAutomaton(a.rank());
  const int alphabet = a.alphabet();
  const auto na = a.state_count();
  // S = {(p, q) : some u has p.u accepting in A and start.u^-1 = q in B}.
  std::vector<std::vector<std::pair<Letter, std::int32_t>>> preds_a(static_cast<std::size_t>(na));
  for (std::int32_t s = 0; s < na; ++s) {
    for (int c = 0; c < alphabet; ++c) {
      const auto t = a.target(s, static_cast<Letter>(c));
      if (t != ReducedAutomaton::kNone) preds_a[static_cast<std::size_t>(t)].emplace_back(static_cast<Letter>(c), s);
    }
  }
  std::set<std::pair<std::int32_t, std::int32_t>> cancel;
  std::vector<std::pair<std::int32_t, std::int32_t>> work;
  for (std::int32_t f = 0; f < na; ++f) {
    if (a.accepting(f) && cancel.emplace(f, 0).second) work.emplace_back(f, 0);
  }
  while (!work.empty()) {
    const auto [p1, q1] = work.back();
    work.pop_back();
    for (const auto& [c, p] : preds_a[static_cast<std::size_t>(p1)]) {
      const auto q = b.target(q1, inverse_letter(c));
      if (q == ReducedAutomaton::kNone) continue;
      if (cancel.emplace(p, q).second) work.emplace_back(p, q);
    }
  }
  Nfa nfa;
  nfa.rank = a.rank();
  for (std::int32_t s = 0; s < na + b.state_count(); ++s) nfa.add_state();
  for (std::int32_t s = 0; s < na; ++s) {
    for (int c = 0; c < alphabet; ++c) {
      const auto t = a.target(s, static_cast<Letter>(c));
      if (t != ReducedAutomaton::kNone) nfa.edges[static_cast<std::size_t>(s)].emplace_back(static_cast<Letter>(c), t);
    }
  }
  for (std::int32_t s = 0; s < b.state_count(); ++s) {
    for (int c = 0; c < alphabet; ++c) {
      const auto t = b.target(s, static_cast<Letter>(c));
      if (t != ReducedAutomaton::kNone) {
        nfa.edges[static_cast<std::size_t>(na + s)].emplace_back(static_cast<Letter>(c), na + t);
      }
    }
    nfa.accepting[static_cast<std::size_t>(na + s)] = b.accepting(s);
  }
  for (const auto& [p, q] : cancel) nfa.eps[static_cast<std::size_t>(p)].push_back(na + q);
  nfa.starts = {0};
  return from_nfa(nfa);
}

SetOracle as_oracle(const ReducedAutomaton& a, std::string descriptor) {
  auto shared = std::make_shared<const ReducedAutomaton>(a);
  return SetOracle(
      a.rank(), std::move(descriptor), [shared](const ReducedWord& w) { return shared->accepts(w); },
      [shared](int radius, const SetOracle::Visitor& visit) {
        for (const auto& w : shared->enumerate(radius)) visit(w);
      },
      [shared](const ReducedWord& p) { return shared->residual_infinite(p); });
}

// ---------------------------------------------------------------------------
// Limit sets

bool LimitPrefixSet::contains(const ReducedWord& w) const {
  return std::binary_search(words.begin(), words.end(), w, ShortlexLess{});
}

LimitPrefixSet LimitPrefixSet::project(int d) const {
  if (d > depth) throw std::invalid_argument("project: depth exceeds source depth");
  LimitPrefixSet out{d, {}, exact};
  for (const auto& w : words) out.words.push_back(w.prefix(static_cast<std::size_t>(d)));
  std::sort(out.words.begin(), out.words.end(), ShortlexLess{});
  out.words.erase(std::unique(out.words.begin(), out.words.end()), out.words.end());
  return out;
}

namespace {

void require_depth(int depth) {
  if (depth < 1) throw std::invalid_argument("limit prefixes need depth >= 1");
}

// Depth-first over reduced words, descending only through prefixes with
// infinite residual; length-d words come out in lexicographic code order.
LimitPrefixSet prefix_search(int rank, int depth, const std::function<bool(const ReducedWord&)>& infinite) {
  LimitPrefixSet out{depth, {}, true};
  std::vector<Letter> buf;
  std::function<void()> walk = [&]() {
    const auto here = ReducedWord::from_reduced(rank, buf);
    if (!infinite(here)) return;
    if (static_cast<int>(buf.size()) == depth) {
      out.words.push_back(here);
      return;
    }
    for (int c = 0; c < 2 * rank; ++c) {
      if (!buf.empty() && c == inverse_letter(buf.back())) continue;
      buf.push_back(static_cast<Letter>(c));
      walk();
      buf.pop_back();
    }
  };
  walk();
  return out;
}

}  // namespace

LimitPrefixSet limit_prefixes(const ReducedAutomaton& a, int depth) {
  require_depth(depth);
  return prefix_search(a.rank(), depth, [&](const ReducedWord& p) { return a.residual_infinite(p); });
}

LimitPrefixSet limit_prefixes(const SetOracle& a, int depth, const TruncationParams& p) {
  require_depth(depth);
  if (a.has_exact_limits()) {
    return prefix_search(a.rank(), depth, [&](const ReducedWord& w) { return a.residual_infinite(w); });
  }
  LimitPrefixSet out{depth, {}, false};
  const int lo = std::max(p.radius, depth);
  std::set<ReducedWord, ShortlexLess> found;
  a.for_each(lo + p.slack, [&](const ReducedWord& w) {
    if (static_cast<int>(w.length()) >= lo) found.insert(w.prefix(static_cast<std::size_t>(depth)));
  });
  out.words.assign(found.begin(), found.end());
  return out;
}

HullSlice convex_hull_slice(const LimitPrefixSet& limits, int radius) {
  if (radius < 0) throw std::invalid_argument("hull radius must be >= 0");
  if (limits.depth <= radius) throw std::invalid_argument("hull slice needs limit depth > radius");
  const auto ends = limits.project(radius + 1);
  if (ends.words.size() < 2) throw HullUndefined();
  // v is in the hull iff at least two components of T - {v} meet the ends:
  // one per distinct next letter below v, plus the side containing the root.
  struct Stat {
    std::size_t below = 0;
    std::set<Letter> next;
  };
  std::map<ReducedWord, Stat, ShortlexLess> stats;
  for (const auto& e : ends.words) {
    for (int len = 0; len <= radius; ++len) {
      auto& st = stats[e.prefix(static_cast<std::size_t>(len))];
      ++st.below;
      st.next.insert(e[static_cast<std::size_t>(len)]);
    }
  }
  HullSlice out{radius, limits.depth, {}};
  for (const auto& [v, st] : stats) {
    const std::size_t sides = st.next.size() + (st.below < ends.words.size() ? 1 : 0);
    if (sides >= 2) out.vertices.push_back(v);
  }
  return out;
}

TameVerdict tame_check(const SetOracle& a, int nu, const TruncationParams& p) {
  const int outer = p.radius + p.slack;
  const auto limits = limit_prefixes(a, outer + 1, p);
  TameVerdict out;
  out.nu = nu;
  out.params = p;
  out.hull = convex_hull_slice(limits, outer);
  const PrefixTrie hull(a.rank(), out.hull.vertices);
  out.tame = true;
  a.for_each(p.radius, [&](const ReducedWord& w) {
    const int d = hull.empty() ? -1 : hull.distance_to(w);
    const bool worse = !out.witness || (out.witness_distance >= 0 && (d < 0 || d > out.witness_distance));
    if (worse) {
      out.witness = w;
      out.witness_distance = d;
    }
    if (d < 0 || d > nu) out.tame = false;
  });
  return out;
}

std::string to_string(LimitRelation r) {
  switch (r) {
    case LimitRelation::Equal: return "equal";
    case LimitRelation::FirstInSecond: return "first-in-second";
    case LimitRelation::SecondInFirst: return "second-in-first";
    case LimitRelation::Incomparable: return "incomparable";
  }
  return "?";
}

LimitComparison limit_compare(const LimitPrefixSet& a, const LimitPrefixSet& b) {
  if (a.depth != b.depth) throw std::invalid_argument("limit_compare: depth mismatch");
  LimitComparison out;
  out.exact = a.exact && b.exact;
  std::vector<ReducedWord> only_a, only_b;
  std::set_difference(a.words.begin(), a.words.end(), b.words.begin(), b.words.end(),
                      std::back_inserter(only_a), ShortlexLess{});
  std::set_difference(b.words.begin(), b.words.end(), a.words.begin(), a.words.end(),
                      std::back_inserter(only_b), ShortlexLess{});
  if (only_a.empty() && only_b.empty()) {
    out.relation = LimitRelation::Equal;
  } else if (only_a.empty()) {
    out.relation = LimitRelation::FirstInSecond;
    out.witness = only_b.front();
  } else if (only_b.empty()) {
    out.relation = LimitRelation::SecondInFirst;
    out.witness = only_a.front();
  } else {
    out.relation = LimitRelation::Incomparable;
    out.witness = only_a.front();
  }
  return out;
}

}  // namespace hypset
