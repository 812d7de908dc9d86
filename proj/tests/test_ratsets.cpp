#include <map>
#include <optional>
#include <random>
#include <set>

#include "doctest.h"
#include "hypset/ratsets.hpp"
#include "oracles.hpp"

using namespace hypset;

namespace {

using WordSet = std::set<ReducedWord, ShortlexLess>;

ReducedWord w2(std::string_view s) { return ReducedWord::parse(2, s); }

std::vector<ReducedWord> ws(std::initializer_list<const char*> list) {
  std::vector<ReducedWord> out;
  for (const char* s : list) out.push_back(w2(s));
  return out;
}

ReducedAutomaton sub(std::initializer_list<const char*> gens) {
  return ReducedAutomaton::from_subgroup(SubgroupGraph::build(2, ws(gens)));
}

ReducedAutomaton single(const char* s) { return ReducedAutomaton::from_words(2, {w2(s)}); }

std::vector<std::string> strs(const std::vector<ReducedWord>& v) {
  std::vector<std::string> out;
  for (const auto& w : v) out.push_back(w.str());
  return out;
}

std::vector<ReducedWord> accepted_in(const ReducedAutomaton& a, const std::vector<ReducedWord>& ball) {
  std::vector<ReducedWord> out;
  for (const auto& w : ball) {
    if (a.accepts(w)) out.push_back(w);
  }
  return out;
}

// Small random rational sets: subgroups, finite sets, cyclic monoids, cosets
// and unions of those.
ReducedAutomaton random_rational(std::mt19937& rng, int nesting = 1) {
  auto word = [&](int max_len) { return oracle::random_word(2, 1 + static_cast<int>(rng() % static_cast<unsigned>(max_len)), rng); };
  switch (rng() % (nesting > 0 ? 5 : 4)) {
    case 0: {
      std::vector<ReducedWord> gens;
      for (int i = 0, n = 1 + static_cast<int>(rng() % 2); i < n; ++i) gens.push_back(word(3));
      return ReducedAutomaton::from_subgroup(SubgroupGraph::build(2, gens));
    }
    case 1: {
      std::vector<ReducedWord> list;
      for (int i = 0, n = 1 + static_cast<int>(rng() % 4); i < n; ++i) list.push_back(word(4));
      return ReducedAutomaton::from_words(2, list);
    }
    case 2: return ReducedAutomaton::word_star(word(3));
    case 3: {
      const auto g = ReducedAutomaton::from_words(2, {word(3)});
      return reduced_product(g, ReducedAutomaton::from_subgroup(SubgroupGraph::build(2, {word(2)})));
    }
    default: return boolean(BoolOp::Union, random_rational(rng, 0), random_rational(rng, 0));
  }
}

// Pairs of states with different residual languages, found by exploring the
// pair graph (an accept mismatch somewhere below means distinguishable).
bool distinguishable(const ReducedAutomaton& a, std::int32_t s, std::int32_t t) {
  std::set<std::pair<std::int32_t, std::int32_t>> seen{{s, t}};
  std::vector<std::pair<std::int32_t, std::int32_t>> stack{{s, t}};
  while (!stack.empty()) {
    const auto [p, q] = stack.back();
    stack.pop_back();
    const bool ap = p != ReducedAutomaton::kNone && a.accepting(p);
    const bool aq = q != ReducedAutomaton::kNone && a.accepting(q);
    if (ap != aq) return true;
    for (int c = 0; c < a.alphabet(); ++c) {
      const auto np = p == ReducedAutomaton::kNone ? p : a.target(p, static_cast<Letter>(c));
      const auto nq = q == ReducedAutomaton::kNone ? q : a.target(q, static_cast<Letter>(c));
      if (np == ReducedAutomaton::kNone && nq == ReducedAutomaton::kNone) continue;
      if (seen.emplace(np, nq).second) stack.emplace_back(np, nq);
    }
  }
  return false;
}

ReducedWord xy_word(std::size_t n, std::size_t m) {
  return ReducedWord::parse(2, std::string(n, 'x') + std::string(m, 'y'));
}

// x^n y^m with m <= bound(n), plus X^n when `negative`; enumerated directly
// in shortlex order (x^n y^m before x^n' y^m' of equal length iff n > n').
SetOracle staircase_like(std::string name, std::size_t (*bound)(std::size_t), bool negative,
                         SetOracle::ResidualInfinite residual) {
  auto member = [bound, negative](const ReducedWord& w) {
    const auto s = w.str();
    if (negative && s.find_first_not_of('X') == std::string::npos) return true;
    const auto n = std::min(s.find_first_not_of('x'), s.size());
    const auto rest = s.substr(n);
    return rest.find_first_not_of('y') == std::string::npos && rest.size() <= bound(n);
  };
  auto enumerate = [bound, negative](int radius, const SetOracle::Visitor& visit) {
    for (std::size_t len = 0; len <= static_cast<std::size_t>(radius); ++len) {
      for (std::size_t n = len + 1; n-- > 0;) {
        if (len - n <= bound(n)) visit(xy_word(n, len - n));
      }
      if (negative && len > 0) visit(ReducedWord::parse(2, std::string(len, 'X')));
    }
  };
  return SetOracle(2, std::move(name), member, enumerate, std::move(residual));
}

// Example 1's second set: { x^n y^m : 0 <= m <= n }, no residual hook.
SetOracle staircase() {
  return staircase_like("staircase", [](std::size_t n) { return n; }, false, {});
}

// { x^n y^m : 0 <= m <= n^2 } ∪ { X^n }, with exact limits along the x-axis.
SetOracle parabola() {
  return staircase_like("parabola", [](std::size_t n) { return n * n; }, true, [](const ReducedWord& p) {
    const auto s = p.str();
    return s.find_first_not_of('x') == std::string::npos || s.find_first_not_of('X') == std::string::npos;
  });
}

SetOracle without_residual(const SetOracle& a) {
  return SetOracle(
      a.rank(), a.descriptor(), [a](const ReducedWord& w) { return a.contains(w); },
      [a](int r, const SetOracle::Visitor& v) { a.for_each(r, v); });
}

}  // namespace

TEST_CASE("from_subgroup examples") {
  const auto axis = sub({"x"});
  CHECK(strs(axis.enumerate(3)) == std::vector<std::string>{"", "x", "X", "xx", "XX", "xxx", "XXX"});
  const auto trivial = sub({});
  CHECK(strs(trivial.enumerate(5)) == std::vector<std::string>{""});
  CHECK(trivial.finite());
  const auto even = sub({"xx", "yy", "xy"});
  for (const auto& w : oracle::ball(2, 6)) CHECK(even.accepts(w) == (w.size() % 2 == 0));
}

TEST_CASE("from_subgroup accepts exactly the subgroup on ball(6)") {
  std::mt19937 rng(201);
  const auto ball = oracle::ball(2, 6);
  for (int trial = 0; trial < 15; ++trial) {
    std::vector<ReducedWord> gens;
    for (int i = 0, n = 1 + static_cast<int>(rng() % 3); i < n; ++i) {
      gens.push_back(oracle::random_word(2, 1 + static_cast<int>(rng() % 3), rng));
    }
    const auto a = ReducedAutomaton::from_subgroup(SubgroupGraph::build(2, gens));
    const auto brute = oracle::subgroup_ball(2, gens, 6, 10);
    for (const auto& w : ball) CHECK(a.accepts(w) == (brute.count(w) == 1));
  }
}

TEST_CASE("boolean examples") {
  CHECK(strs(boolean(BoolOp::Intersection, sub({"x"}), sub({"y"})).enumerate(6)) == std::vector<std::string>{""});
  const auto stars = boolean(BoolOp::Union, ReducedAutomaton::word_star(w2("x")), ReducedAutomaton::word_star(w2("y")));
  CHECK_FALSE(stars.accepts(w2("xy")));
  CHECK(stars.accepts(w2("yyy")));
  const auto xy = reduced_product(sub({"x"}), sub({"y"}));
  CHECK(boolean(BoolOp::Intersection, xy, sub({"x"})) == sub({"x"}));
}

TEST_CASE("boolean operations, complement and inverse agree with membership") {
  std::mt19937 rng(211);
  const auto ball = oracle::ball(2, 6);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_rational(rng);
    const auto b = random_rational(rng);
    const auto u = boolean(BoolOp::Union, a, b);
    const auto i = boolean(BoolOp::Intersection, a, b);
    const auto d = boolean(BoolOp::Difference, a, b);
    const auto c = complement(a);
    const auto inv = inverse(a);
    for (const auto& w : ball) {
      const bool in_a = a.accepts(w);
      const bool in_b = b.accepts(w);
      CHECK(u.accepts(w) == (in_a || in_b));
      CHECK(i.accepts(w) == (in_a && in_b));
      CHECK(d.accepts(w) == (in_a && !in_b));
      CHECK(c.accepts(w) == !in_a);
      CHECK(inv.accepts(w) == a.accepts(oracle::inv(w)));
    }
  }
}

TEST_CASE("reduced_product examples") {
  CHECK(strs(reduced_product(single("x"), single("X")).enumerate(4)) == std::vector<std::string>{""});
  const auto xy = reduced_product(sub({"x"}), sub({"y"}));
  for (const auto& w : oracle::ball(2, 6)) {
    const auto s = w.str();
    const auto split = s.find_first_of("yY");
    const auto head = s.substr(0, split == std::string::npos ? s.size() : split);
    const auto tail = split == std::string::npos ? std::string() : s.substr(split);
    const bool shape = (head.find_first_not_of('x') == std::string::npos || head.find_first_not_of('X') == std::string::npos) &&
                       (tail.find_first_not_of('y') == std::string::npos || tail.find_first_not_of('Y') == std::string::npos);
    CHECK(xy.accepts(w) == shape);
  }
  const auto coset = reduced_product(single("y"), sub({"x"}));
  std::vector<ReducedWord> brute;
  for (const auto& w : oracle::ball(2, 5)) {
    const auto rest = oracle::mul(oracle::inv(w2("y")), w);
    const auto s = rest.str();
    if (s.find_first_not_of('x') == std::string::npos || s.find_first_not_of('X') == std::string::npos) brute.push_back(w);
  }
  std::sort(brute.begin(), brute.end(), ShortlexLess{});
  CHECK(coset.enumerate(5) == brute);
}

TEST_CASE("reduced_product agrees with pairwise products") {
  std::mt19937 rng(223);
  const auto ball5 = oracle::ball(2, 5);
  const auto ball4 = oracle::ball(2, 4);
  const auto ball8 = oracle::ball(2, 8);
  for (int trial = 0; trial < 30; ++trial) {
    const auto a = random_rational(rng);
    const auto b = random_rational(rng);
    const auto p = reduced_product(a, b);
    const auto in_a = accepted_in(a, ball5);
    const auto in_b = accepted_in(b, ball5);
    for (const auto& x : in_a) {
      for (const auto& y : in_b) CHECK(p.accepts(oracle::mul(x, y)));
    }
    // Conversely each short member w factors as x (x^-1 w) with x in A; the
    // search widens to A ∩ ball(12) since cancellation can be long.
    const auto near_a = accepted_in(a, ball8);
    std::optional<std::vector<ReducedWord>> far_a;
    auto factors_through = [&](const std::vector<ReducedWord>& candidates, const ReducedWord& w) {
      return std::any_of(candidates.begin(), candidates.end(),
                         [&](const ReducedWord& x) { return b.accepts(oracle::mul(oracle::inv(x), w)); });
    };
    for (const auto& w : ball4) {
      bool factors = factors_through(near_a, w);
      if (!factors && p.accepts(w)) {
        if (!far_a) far_a = a.enumerate(12);
        factors = factors_through(*far_a, w);
      }
      INFO("w = ", w.str());
      CHECK(p.accepts(w) == factors);
    }
  }
}

TEST_CASE("canonical form is minimal, trim and language-determined") {
  std::mt19937 rng(227);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_rational(rng);
    const auto b = random_rational(rng);
    for (std::int32_t s = 0; s < a.state_count(); ++s) {
      for (std::int32_t t = s + 1; t < a.state_count(); ++t) CHECK(distinguishable(a, s, t));
    }
    // Trim: every state is reached from 0 and reaches an accepting state.
    std::set<std::int32_t> reached{0};
    std::vector<std::int32_t> stack{0};
    while (!a.empty() && !stack.empty()) {
      const auto s = stack.back();
      stack.pop_back();
      for (int c = 0; c < a.alphabet(); ++c) {
        const auto t = a.target(s, static_cast<Letter>(c));
        if (t != ReducedAutomaton::kNone && reached.insert(t).second) stack.push_back(t);
      }
    }
    CHECK(static_cast<std::int32_t>(a.empty() ? 0 : reached.size()) == a.state_count());
    for (std::int32_t s = 0; s < a.state_count(); ++s) CHECK(distinguishable(a, s, ReducedAutomaton::kNone));

    // Same language reached by different constructions.
    CHECK(complement(complement(a)) == a);
    CHECK(inverse(inverse(a)) == a);
    CHECK(boolean(BoolOp::Union, a, a) == a);
    CHECK(boolean(BoolOp::Union, a, b) == boolean(BoolOp::Union, b, a));
    CHECK(reduced_product(a, single("")) == a);
    CHECK(reduced_product(single(""), a) == a);
    CHECK(boolean(BoolOp::Difference, boolean(BoolOp::Union, a, b), b) == boolean(BoolOp::Difference, a, b));
    CHECK(complement(boolean(BoolOp::Union, a, b)) ==
          boolean(BoolOp::Intersection, complement(a), complement(b)));
    CHECK(ReducedAutomaton::deserialize(a.serialize()) == a);
  }
}

TEST_CASE("serialization format") {
  const auto a = ReducedAutomaton::word_star(w2("xy"));
  const auto text = a.serialize();
  CHECK(text.rfind("rank: 2\n", 0) == 0);
  CHECK(ReducedAutomaton::deserialize(text) == a);
  CHECK(ReducedAutomaton::deserialize(ReducedAutomaton(2).serialize()).empty());
  CHECK_THROWS_AS(ReducedAutomaton::deserialize("rank: two\n"), ParseError);
  CHECK_THROWS_AS(ReducedAutomaton::deserialize("rank: 2\nstart: 0\nstates: 1\naccepting: 0\n0, q, 0\n"), ParseError);
}

TEST_CASE("closed-form test oracles match their membership tests") {
  for (const auto& o : {staircase(), parabola()}) {
    const auto listed = o.enumerate(7);
    std::vector<ReducedWord> brute;
    for (const auto& w : oracle::ball(2, 7)) {
      if (o.contains(w)) brute.push_back(w);
    }
    std::sort(brute.begin(), brute.end(), ShortlexLess{});
    CHECK(listed == brute);
  }
}

TEST_CASE("limit prefix examples") {
  const auto stars = ReducedAutomaton::word_star(w2("x"));
  for (int n = 1; n <= 8; ++n) {
    const auto expect = std::vector<ReducedWord>{power(w2("x"), n)};
    CHECK(limit_prefixes(stars, n).words == expect);
    CHECK(limit_prefixes(stars, n).exact);
    const auto b = limit_prefixes(staircase(), n, TruncationParams{24, 2});
    CHECK(b.words == expect);
    CHECK_FALSE(b.exact);
  }
  for (int n = 1; n <= 5; ++n) {
    const auto all = limit_prefixes(ReducedAutomaton::whole_group(2), n);
    CHECK(static_cast<long long>(all.words.size()) == sphere_size(2, n));
  }
  CHECK(limit_prefixes(single("xyx"), 3).empty());
  CHECK_THROWS(limit_prefixes(stars, 0));
}

TEST_CASE("limit prefixes: exact and truncated methods agree on thin sets") {
  const std::vector<ReducedAutomaton> sets = {
      ReducedAutomaton::word_star(w2("x")),
      sub({"x"}),
      sub({"xyXY"}),
      reduced_product(single("y"), sub({"x"})),
      reduced_product(sub({"x"}), sub({"y"})),
      boolean(BoolOp::Union, ReducedAutomaton::word_star(w2("xy")), ReducedAutomaton::word_star(w2("Y"))),
  };
  for (const auto& a : sets) {
    const auto truncated = without_residual(as_oracle(a, "a"));
    for (int n : {1, 3, 6}) {
      CHECK(limit_prefixes(truncated, n, TruncationParams{24, 2}).words == limit_prefixes(a, n).words);
    }
  }
}

TEST_CASE("limit prefix invariants") {
  std::mt19937 rng(229);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_rational(rng);
    const auto b = random_rational(rng);
    CHECK(limit_prefixes(a, 4).empty() == a.finite());
    for (int n = 1; n <= 5; ++n) {
      const auto la = limit_prefixes(a, n);
      CHECK(limit_prefixes(a, n + 1).project(n) == la);

      std::vector<ReducedWord> joined;
      const auto lb = limit_prefixes(b, n);
      std::set_union(la.words.begin(), la.words.end(), lb.words.begin(), lb.words.end(), std::back_inserter(joined),
                     ShortlexLess{});
      CHECK(limit_prefixes(boolean(BoolOp::Union, a, b), n).words == joined);

      const auto g = oracle::random_word(2, static_cast<int>(rng() % 4), rng);
      CHECK(limit_prefixes(reduced_product(a, ReducedAutomaton::from_words(2, {g})), n) == la);
      WordSet moved;
      for (const auto& p : limit_prefixes(a, n + g.length()).words) moved.insert((g * p).prefix(static_cast<std::size_t>(n)));
      CHECK(limit_prefixes(reduced_product(ReducedAutomaton::from_words(2, {g}), a), n).words ==
            std::vector<ReducedWord>(moved.begin(), moved.end()));
    }
  }
}

TEST_CASE("hull slice examples") {
  const auto axis = limit_prefixes(sub({"x"}), 7);
  const auto slice = convex_hull_slice(axis, 6);
  std::vector<ReducedWord> expect;
  for (int m = -6; m <= 6; ++m) expect.push_back(power(w2("x"), m));
  std::sort(expect.begin(), expect.end(), ShortlexLess{});
  CHECK(slice.vertices == expect);
  CHECK(slice.radius == 6);

  auto ball = oracle::ball(2, 4);
  std::sort(ball.begin(), ball.end(), ShortlexLess{});
  CHECK(convex_hull_slice(limit_prefixes(ReducedAutomaton::whole_group(2), 5), 4).vertices == ball);

  CHECK_THROWS_AS(convex_hull_slice(limit_prefixes(ReducedAutomaton::word_star(w2("x")), 5), 4), HullUndefined);
  CHECK_THROWS_WITH(convex_hull_slice(limit_prefixes(single("x"), 5), 4), "hull undefined");
  CHECK_THROWS(convex_hull_slice(axis, 7));
}

TEST_CASE("hull slice matches geodesics between end prefixes") {
  std::mt19937 rng(233);
  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_rational(rng);
    const int r = 2 + static_cast<int>(rng() % 4);
    const auto limits = limit_prefixes(a, r + 1 + static_cast<int>(rng() % 3));
    const auto ends = limits.project(r + 1).words;
    if (ends.size() < 2) {
      CHECK_THROWS_AS(convex_hull_slice(limits, r), HullUndefined);
      continue;
    }
    const auto slice = convex_hull_slice(limits, r);
    WordSet brute;
    // The pairwise oracle is quadratic in the number of ends.
    if (ends.size() > 150) continue;
    ++checked;
    for (std::size_t i = 0; i < ends.size(); ++i) {
      for (std::size_t j = i + 1; j < ends.size(); ++j) {
        for (const auto& v : oracle::geodesic_vertices(ends[i], ends[j])) {
          if (v.length() <= r) brute.insert(v);
        }
      }
    }
    CHECK(slice.vertices == std::vector<ReducedWord>(brute.begin(), brute.end()));
    // Closed under geodesics; contains meets of distinct directions.
    const WordSet in(slice.vertices.begin(), slice.vertices.end());
    const std::size_t stride = 1 + slice.vertices.size() / 30;
    for (std::size_t i = 0; i < slice.vertices.size(); i += stride) {
      for (std::size_t j = i + 1; j < slice.vertices.size(); j += stride) {
        for (const auto& m : oracle::geodesic_vertices(slice.vertices[i], slice.vertices[j])) {
          CHECK(in.count(m) == 1);
        }
      }
    }
    for (std::size_t i = 0; i + 1 < ends.size(); ++i) {
      const auto meet = ends[i].prefix(static_cast<std::size_t>(common_prefix_length(ends[i], ends[i + 1])));
      CHECK(in.count(meet) == 1);
    }
    // The slice's boundary sphere recovers the directions one level up.
    if (r >= 2 && limits.project(r).words.size() >= 2) {
      LimitPrefixSet rim{r, {}, true};
      for (const auto& v : slice.vertices) {
        if (v.length() == r) rim.words.push_back(v);
      }
      CHECK(rim == limits.project(r));
      std::vector<ReducedWord> inner;
      for (const auto& v : slice.vertices) {
        if (v.length() < r) inner.push_back(v);
      }
      CHECK(convex_hull_slice(rim, r - 1).vertices == inner);
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("hull of a subgroup's limit set is its readable core") {
  // With the basepoint inside the core, the hull vertices are the words
  // readable from the basepoint.
  const auto h = SubgroupGraph::build(2, ws({"x", "yxY"}));
  const int r = 6;
  std::vector<ReducedWord> readable;
  for (const auto& w : oracle::ball(2, r)) {
    if (h.read(w) != SubgroupGraph::kNone) readable.push_back(w);
  }
  std::sort(readable.begin(), readable.end(), ShortlexLess{});
  CHECK(convex_hull_slice(limit_prefixes(ReducedAutomaton::from_subgroup(h), r + 1), r).vertices == readable);

  auto member = [h](const ReducedWord& w) { return h.read(w) != SubgroupGraph::kNone; };
  const auto filtered = SetOracle::filtered(2, "hull", member);
  const SetOracle hull(
      2, "hull", member, [filtered](int radius, const SetOracle::Visitor& v) { filtered.for_each(radius, v); },
      member);
  const auto verdict = tame_check(hull, 0, TruncationParams{8, 2});
  CHECK(verdict.tame);
  CHECK(verdict.witness_distance == 0);
}

TEST_CASE("tame checks") {
  const auto h = as_oracle(sub({"x", "yy"}), "<x,yy>");
  const auto verdict = tame_check(h, 0, TruncationParams{8, 2});
  CHECK(verdict.tame);
  CHECK(verdict.witness_distance == 0);
  CHECK(verdict.hull.radius == 10);

  // The farthest member of the parabola set in ball(12) is x^3 y^9.
  const auto p = tame_check(parabola(), 4, TruncationParams{12, 2});
  CHECK_FALSE(p.tame);
  REQUIRE(p.witness);
  CHECK(p.witness->str() == "xxxyyyyyyyyy");
  CHECK(p.witness_distance == 9);
  const auto small = tame_check(parabola(), 4, TruncationParams{6, 2});
  REQUIRE(small.witness);
  CHECK(small.witness->str() == "xxyyyy");
  CHECK(small.witness_distance == 4);
  CHECK(small.tame);

  CHECK_THROWS_AS(tame_check(as_oracle(ReducedAutomaton::word_star(w2("x")), "x*"), 0, TruncationParams{6, 2}),
                  HullUndefined);

  // Unions and translates of subgroups stay tame.
  std::mt19937 rng(239);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<ReducedWord> gens{oracle::random_word(2, 1 + static_cast<int>(rng() % 3), rng),
                                  oracle::random_word(2, 1 + static_cast<int>(rng() % 3), rng)};
    const auto g = oracle::random_word(2, static_cast<int>(rng() % 3), rng);
    const auto base = ReducedAutomaton::from_subgroup(SubgroupGraph::build(2, gens));
    if (limit_prefixes(base, 1).words.size() < 2) continue;
    CHECK(tame_check(as_oracle(base, "H"), 0, TruncationParams{6, 2}).tame);
    const auto moved = reduced_product(ReducedAutomaton::from_words(2, {g}), base);
    CHECK(tame_check(as_oracle(moved, "gH"), g.length(), TruncationParams{6, 2}).tame);
  }
}

TEST_CASE("limit comparison") {
  for (int n = 1; n <= 8; ++n) {
    const auto a = limit_prefixes(ReducedAutomaton::word_star(w2("x")), n);
    const auto b = limit_prefixes(staircase(), n, TruncationParams{24, 2});
    const auto cmp = limit_compare(a, b);
    CHECK(cmp.relation == LimitRelation::Equal);
    CHECK_FALSE(cmp.exact);
    CHECK_FALSE(cmp.witness);
  }
  CHECK(limit_compare(limit_prefixes(sub({"x"}), 5), limit_prefixes(sub({"xx"}), 5)).relation == LimitRelation::Equal);
  const auto apart = limit_compare(limit_prefixes(sub({"x"}), 4), limit_prefixes(sub({"y"}), 4));
  CHECK(apart.relation == LimitRelation::Incomparable);
  REQUIRE(apart.witness);
  CHECK(apart.witness->str() == "xxxx");
  const auto inside = limit_compare(limit_prefixes(ReducedAutomaton::word_star(w2("x")), 3), limit_prefixes(sub({"x"}), 3));
  CHECK(inside.relation == LimitRelation::FirstInSecond);
  CHECK(inside.witness->str() == "XXX");
  CHECK(to_string(LimitRelation::SecondInFirst) == "second-in-first");
  CHECK_THROWS(limit_compare(limit_prefixes(sub({"x"}), 3), limit_prefixes(sub({"x"}), 4)));
}
