#include <algorithm>
#include <chrono>
#include <set>

#include "hypset/harness.hpp"
#include "hypset/prefix_trie.hpp"

namespace hypset {

namespace {

using WordSet = std::set<ReducedWord, ShortlexLess>;

template <class Body>
Report guarded(const std::string& name, const AuditConfig& cfg, Body&& body) {
  Report r(name);
  Budget budget(cfg.budget);
  const auto start = std::chrono::steady_clock::now();
  r.body()["schedule"] = Json{{"radii", cfg.radii}, {"slack", cfg.slack}, {"budget", cfg.budget}};
  try {
    body(r, budget);
  } catch (const BudgetExhausted& e) {
    r.verdict = Verdict::Inconclusive;
    r.status = e.what();
  }
  std::optional<double> seconds;
  if (cfg.timing) {
    seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
  r.finish(budget, seconds);
  return r;
}

const SubgroupGraph& need_subgroup(const SetValue& v, const std::string& role) {
  if (!v.subgroup) throw std::invalid_argument(role + " must be a subgroup, got '" + v.text + "'");
  return *v.subgroup;
}

TruncationParams at(const AuditConfig& cfg, int radius) { return TruncationParams{radius, cfg.slack}; }

ReducedWord x_pow(int n) {
  return ReducedWord::from_reduced(2, std::vector<Letter>(static_cast<std::size_t>(n < 0 ? -n : n), n < 0 ? 1 : 0));
}

ReducedWord xy_word(int n, int m) { return x_pow(n) * ReducedWord::from_reduced(2, std::vector<Letter>(static_cast<std::size_t>(m), 2)); }

// Some conjugate of w^m lies in H for an m in 1..|V(H)|, decided by reading
// rotations of the cyclic core as closed loops at every vertex.
bool some_power_loops(const SubgroupGraph& h, const ReducedWord& w) {
  const auto core = cyclic_reduce(w).core;
  for (int m = 1; m <= h.vertex_count(); ++m) {
    for (const auto& rot : cyclic_rotations(core)) {
      const auto p = power(rot, m);
      for (std::int32_t v = 0; v < h.vertex_count(); ++v) {
        if (h.read(p, v) == v) return true;
      }
    }
  }
  return false;
}

// Distinct right cosets of `sub` met by members of `k` within the radius.
std::size_t cosets_seen(const SubgroupGraph& k, const SubgroupGraph& sub, int radius, const Budget& b) {
  WordSet reps;
  b.wrap(subgroup_oracle(k)).for_each(radius, [&](const ReducedWord& w) {
    reps.insert(right_coset_representative(sub, w));
  });
  return reps.size();
}

// Depth-d limit prefixes of gA, read off the automaton of gA.
std::vector<ReducedWord> translated_directions(const ReducedWord& g, const ReducedAutomaton& a, int depth) {
  return limit_prefixes(reduced_product(ReducedAutomaton::from_words(a.rank(), {g}), a), depth).words;
}

struct IndexHit {
  std::size_t j = 0;
  ReducedWord g;
  std::int64_t index = 0;
};

// First (j, g) over double-coset representatives with |K : K ∩ g H_j g^-1| finite.
std::optional<IndexHit> finite_relative_index(const SubgroupGraph& k, const std::vector<SubgroupGraph>& hs, int radius,
                                              const Budget& b, Json* reps_used) {
  std::optional<IndexHit> hit;
  for (std::size_t j = 0; j < hs.size(); ++j) {
    const auto reps = double_cosets(k, hs[j], radius);
    b.spend(static_cast<long long>(reps.size()));
    if (reps_used) reps_used->push_back(Json{{"H", j + 1}, {"representatives", word_list(reps)}});
    for (const auto& g : reps) {
      if (hit) break;
      if (const auto idx = relative_index(k, conjugate(hs[j], g))) hit = IndexHit{j, g, *idx};
    }
  }
  return hit;
}

void check_index_hit(Report& r, const SubgroupGraph& k, const std::vector<SubgroupGraph>& hs, const IndexHit& hit,
                     int radius, const Budget& b) {
  const auto sub = intersect(k, conjugate(hs[hit.j], hit.g));
  const auto seen = cosets_seen(k, sub, radius, b);
  r.check(seen >= 1 && static_cast<std::int64_t>(seen) <= hit.index, "relative index bounds the cosets met in ball");
}

Json hit_json(const IndexHit& hit) {
  return Json{{"j", hit.j + 1}, {"g", word_text(hit.g)}, {"index", hit.index}};
}

}  // namespace

// ---------------------------------------------------------------------------

Report audit_theorem1(const SetValue& kv, const std::vector<SetValue>& hvs, const AuditConfig& cfg) {
  const auto& k = need_subgroup(kv, "K");
  std::vector<SubgroupGraph> hs;
  for (const auto& h : hvs) hs.push_back(need_subgroup(h, "H"));
  if (hs.empty()) throw std::invalid_argument("theorem1 needs at least one H");
  return guarded("theorem1", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["K"] = kv.text;
    Json hjson = Json::array();
    for (const auto& h : hvs) hjson.push_back(h.text);
    body["H"] = hjson;

    Json stages = Json::array();
    for (int radius : cfg.radii) {
      Json reps = Json::array();
      const auto hit = finite_relative_index(k, hs, radius, b, &reps);
      stages.push_back(Json{{"radius", radius}, {"double_coset_representatives", reps}});
      if (hit) {
        body["condition_a"] = stages;
        body["hypothesis"] = Json{{"holds", false}, {"offending", hit_json(*hit)}};
        check_index_hit(r, k, hs, *hit, radius, b);
        r.verdict = Verdict::Refuted;
        r.status = "hypothesis fails: |K : K ∩ gHg^-1| is finite";
        return;
      }
    }
    body["condition_a"] = stages;
    body["hypothesis"] = Json{{"holds", true}, {"scope", "double-coset representatives within radius " +
                                                             std::to_string(cfg.max_radius())}};

    auto valid = [&](const ReducedWord& x) {
      if (x.is_identity()) return false;
      return std::all_of(hs.begin(), hs.end(), [&](const SubgroupGraph& h) { return !power_conjugates_into(x, h); });
    };
    std::optional<ReducedWord> witness;
    std::string method = "shortlex scan of K ∩ ball(R)";
    b.wrap(subgroup_oracle(k)).for_each(cfg.max_radius(), [&](const ReducedWord& x) {
      if (!witness && valid(x)) witness = x;
    });
    if (!witness) {
      method = "product of basis powers";
      const auto basis = k.free_basis();
      for (int n = 1; n <= 8 && !witness; ++n) {
        ReducedWord z(k.rank());
        for (const auto& y : basis) z = z * power(y, n);
        b.spend();
        if (valid(z)) witness = z;
      }
    }
    if (!witness) {
      r.verdict = Verdict::Inconclusive;
      r.status = "no witness found at this scale";
      return;
    }
    r.check(contains(k, *witness), "witness lies in K");
    for (const auto& h : hs) r.check(!some_power_loops(h, *witness), "no power of the witness conjugates into H");
    body["witness"] = Json{{"x", word_text(*witness)}, {"method", method}};
    r.verdict = Verdict::VerifiedAtScale;
    r.status = "element of infinite order avoiding every H conjugate";
  });
}

// ---------------------------------------------------------------------------

Report audit_theorem2(const SetValue& kv, const SetValue& uv, const AuditConfig& cfg) {
  const auto& k = need_subgroup(kv, "K");
  if (!uv.automaton) throw std::invalid_argument("U must be rational, got '" + uv.text + "'");
  const auto& u = *uv.automaton;
  return guarded("theorem2", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["K"] = kv.text;
    body["U"] = uv.text;
    Json members = Json::array();
    for (const auto& h : uv.factors) members.push_back(describe_generators(h.free_basis()));
    body["U_subgroups"] = members;

    std::optional<ReducedWord> escape;
    Json stages = Json::array();
    for (int radius : cfg.radii) {
      std::size_t checked = 0;
      std::optional<ReducedWord> first;
      b.wrap(subgroup_oracle(k)).for_each(radius, [&](const ReducedWord& w) {
        ++checked;
        if (!first && !u.accepts(w)) first = w;
      });
      Json stage{{"radius", radius}, {"members_checked", checked}, {"contained", !first}};
      if (first) stage["escape"] = word_text(*first);
      stages.push_back(stage);
      if (first && !escape) escape = first;
    }
    body["containment"] = stages;

    if (escape) {
      r.check(contains(k, *escape) && !uv.oracle.contains(*escape), "escape witness lies in K and outside U");
      // U^-1 U misses some y, and ball(R) ⊆ U^(c) ∪ U^(c) y^-1 for the measured c.
      const auto diff = reduced_product(inverse(u), u);
      std::optional<ReducedWord> y;
      BallEnumerator::for_each(u.rank(), cfg.max_radius(), [&](const ReducedWord& w) {
        b.spend();
        if (!y && !diff.accepts(w)) y = w;
      });
      Json corollary{{"U_proper", true}};
      if (y) {
        bool factors = false;
        const auto near_u = u.enumerate(cfg.max_radius() + y->length());
        const PrefixTrie trie(u.rank(), near_u);
        for (const auto& a : u.enumerate(cfg.max_radius())) {
          if (trie.contains(a * *y)) factors = true;
        }
        r.check(!factors, "y is not a quotient of two members of U");
        corollary["y"] = word_text(*y);
        Json covers = Json::array();
        for (int radius : cfg.radii) {
          const PrefixTrie members(u.rank(), u.enumerate(radius + cfg.slack + y->length()));
          int c = 0;
          BallEnumerator::for_each(u.rank(), radius, [&](const ReducedWord& w) {
            b.spend();
            const int d0 = members.distance_to(w);
            const int d1 = members.distance_to(w * *y);
            const int m = d0 < 0 ? d1 : (d1 < 0 ? d0 : std::min(d0, d1));
            c = std::max(c, m);
          });
          covers.push_back(Json{{"radius", radius}, {"c", c}});
        }
        corollary["cover_constants"] = covers;
      } else {
        corollary["y"] = nullptr;
      }
      body["corollary"] = corollary;
      r.verdict = Verdict::VerifiedAtScale;
      r.status = "K is not contained in U";
      return;
    }

    const auto hit = finite_relative_index(k, uv.factors, cfg.max_radius(), b, nullptr);
    if (!hit) {
      r.verdict = Verdict::Inconclusive;
      r.status = "K ⊆ U at scale but no finite-index certificate among the representatives";
      return;
    }
    check_index_hit(r, k, uv.factors, *hit, cfg.max_radius(), b);
    body["certificate"] = hit_json(*hit);
    r.verdict = Verdict::VerifiedAtScale;
    r.status = "K ⊆ U at scale with a finite-index certificate";
  });
}

// ---------------------------------------------------------------------------

Report audit_theorem4(const std::vector<ReducedWord>& reps, const AuditConfig& cfg) {
  if (reps.empty()) throw std::invalid_argument("theorem4 needs class representatives");
  const int rank = reps.front().rank();
  if (rank < 2) throw std::invalid_argument("theorem4 needs rank >= 2");
  return guarded("theorem4", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["classes"] = word_list(reps);
    if (std::all_of(reps.begin(), reps.end(), [](const ReducedWord& w) { return w.is_identity(); })) {
      body["limit_set"] = "empty";
      r.verdict = Verdict::Inconclusive;
      r.status = "degenerate: the union of classes is finite";
      return;
    }
    const auto classes = SetOracle::conjugacy_classes(rank, reps);
    auto in_classes = [&](const ReducedWord& w) {
      return std::any_of(reps.begin(), reps.end(), [&](const ReducedWord& c) { return conjugate_test(w, c); });
    };
    Json stages = Json::array();
    std::vector<int> eps;
    for (int radius : cfg.radii) {
      const auto q = quasiconvexity_constant(b.wrap(classes), at(cfg, radius));
      eps.push_back(q.epsilon);
      // The measured point is on the geodesic and no class member of length
      // <= R + slack lies within epsilon - 1 of it.
      r.check(distance(q.from, q.point) + distance(q.point, q.to) == distance(q.from, q.to), "point on geodesic");
      bool closer = false;
      if (q.epsilon > 0) {
        BallEnumerator::for_each(rank, q.epsilon - 1, [&](const ReducedWord& step) {
          const auto v = q.point * step;
          if (v.length() <= radius + cfg.slack && in_classes(v)) closer = true;
        });
      }
      r.check(!closer, "no class member nearer than epsilon");

      const int gap_radius = std::min(radius, 8);
      const PrefixTrie members(rank, classes.enumerate(gap_radius + radius + cfg.slack));
      int gap = 0;
      BallEnumerator::for_each(rank, gap_radius, [&](const ReducedWord& w) {
        b.spend();
        gap = std::max(gap, members.distance_to(w));
      });
      stages.push_back(Json{{"radius", radius},
                            {"epsilon", q.epsilon},
                            {"from", word_text(q.from)},
                            {"to", word_text(q.to)},
                            {"point", word_text(q.point)},
                            {"members", q.members},
                            {"quasidensity_gap", Json{{"ball", gap_radius}, {"distance", gap}}}});
    }
    body["stages"] = stages;
    bool strict = true;
    for (std::size_t i = 1; i < eps.size(); ++i) strict = strict && eps[i] > eps[i - 1];
    const int span = cfg.radii.back() - cfg.radii.front();
    const int needed = (cfg.growth_floor * span + 3) / 4;
    const bool floor_met = eps.back() - eps.front() >= needed;
    body["growth"] = Json{{"strictly_increasing", strict}, {"floor_per_4", cfg.growth_floor},
                          {"required_gain", needed}, {"gain", eps.back() - eps.front()}};
    r.verdict = strict && floor_met ? Verdict::VerifiedAtScale : Verdict::Inconclusive;
    r.status = strict && floor_met ? "epsilon grows along the schedule" : "growth not observed at this scale";
  });
}

// ---------------------------------------------------------------------------

namespace {

void example1(Report& r, const Budget& b, const AuditConfig& cfg) {
  auto& body = r.body();
  const auto a_aut = ReducedAutomaton::word_star(ReducedWord::parse(2, "x"));
  const auto a = b.wrap(example1_a());
  const auto bset = b.wrap(example1_b());
  bool ok = true;
  Json limits = Json::array();
  for (int d = 1; d <= cfg.depth; ++d) {
    const auto la = limit_prefixes(a_aut, d);
    const auto lb = limit_prefixes(bset, d, at(cfg, cfg.max_radius()));
    const auto cmp = limit_compare(la, lb);
    const bool expected = la.words == std::vector<ReducedWord>{x_pow(d)} && cmp.relation == LimitRelation::Equal;
    ok = ok && expected;
    limits.push_back(Json{{"depth", d}, {"A", word_list(la.words)}, {"B", word_list(lb.words)},
                          {"relation", to_string(cmp.relation)}, {"exact", cmp.exact}});
  }
  body["limit_prefixes"] = limits;

  const auto a_members = example1_a().enumerate(cfg.max_radius() + cfg.slack);
  Json preceq = Json::array();
  for (int radius : cfg.radii) {
    Json rows = Json::array();
    for (int c = 0; c <= cfg.c; ++c) {
      const auto v = preceq_check(bset, a, c, at(cfg, radius));
      const bool visible = 2 * c + 2 <= radius;
      Json row{{"c", c}, {"holds", v.holds}};
      if (v.witness) {
        row["witness"] = word_text(*v.witness);
        row["distance"] = v.witness_distance;
        int dist = -1;
        for (const auto& m : a_members) {
          const int d = distance(*v.witness, m);
          if (dist < 0 || d < dist) dist = d;
        }
        r.check(example1_b().contains(*v.witness) && dist > c, "B-witness is farther than c from A");
      }
      if (visible) ok = ok && !v.holds && v.witness && *v.witness == xy_word(c + 1, c + 1);
      rows.push_back(row);
    }
    preceq.push_back(Json{{"radius", radius}, {"B_preceq_A", rows}});
  }
  body["preceq"] = preceq;
  r.verdict = ok ? Verdict::VerifiedAtScale : Verdict::Refuted;
  r.status = ok ? "equal limit sets while B is not covered by translates of A" : "example 1 not reproduced";
}

void example3(Report& r, const Budget& b, const AuditConfig& cfg) {
  auto& body = r.body();
  const auto a = b.wrap(example3_a());
  bool ok = true;
  Json stages = Json::array();
  for (int radius : cfg.radii) {
    Json rows = Json::array();
    for (int n = 2; n <= 5; ++n) {
      for (int k = 1; k < n; ++k) {
        const auto w = xy_word(n - k, n * n);
        if (w.length() > radius) continue;
        const int measured = distance_to_set(w, a, radius);
        const int expected = 2 * n * k - k * k;
        // Any member within `measured` of w has length <= |w| + measured.
        const bool exact = measured >= 0 && w.length() + measured <= radius;
        if (exact) ok = ok && measured == expected;
        r.check(example3_a().contains(x_pow(k) * w), "x^k w lies in A");
        const auto nearest = xy_word(n - k, (n - k) * (n - k));
        r.check(example3_a().contains(nearest) && distance(w, nearest) == expected, "nearest member realizes 2nk-k^2");
        rows.push_back(Json{{"n", n}, {"k", k}, {"word", word_text(w)}, {"measured", measured},
                            {"expected", expected}, {"exact", exact}});
      }
    }
    stages.push_back(Json{{"radius", radius}, {"distances", rows}});
  }
  body["h_growth"] = stages;

  const int radius = cfg.max_radius();
  const auto tame = tame_check(a, cfg.nu, at(cfg, radius));
  const PrefixTrie hull(2, tame.hull.vertices);
  r.check(std::all_of(tame.hull.vertices.begin(), tame.hull.vertices.end(),
                      [](const ReducedWord& v) { return v.str().find_first_of("yY") == std::string::npos; }),
          "hull slice lies on the x-axis");
  Json hull_rows = Json::array();
  for (int n = 1; n + n * n <= radius; ++n) {
    const auto w = xy_word(n, n * n);
    const int d = hull.distance_to(w);
    ok = ok && d == n * n;
    hull_rows.push_back(Json{{"n", n}, {"word", word_text(w)}, {"hull_distance", d}});
  }
  Json tame_json{{"nu", cfg.nu}, {"tame", tame.tame}, {"hull_radius", tame.hull.radius},
                 {"hull_vertices", tame.hull.vertices.size()}};
  if (tame.witness) {
    tame_json["witness"] = word_text(*tame.witness);
    tame_json["witness_distance"] = tame.witness_distance;
    r.check(example3_a().contains(*tame.witness) && hull.distance_to(*tame.witness) == tame.witness_distance,
            "tameness witness distance recomputed");
  }
  body["tameness"] = tame_json;
  body["hull_distances"] = hull_rows;
  ok = ok && !tame.tame;
  body["commensurator"] = "x^-k A is not within bounded distance of A for 1 <= k < 5 at this scale";
  r.verdict = ok ? Verdict::VerifiedAtScale : Verdict::Refuted;
  r.status = ok ? "2nk-k^2 growth reproduced; A is not tame" : "example 3 not reproduced";
}

void example5(Report& r, const Budget& b, const AuditConfig& cfg) {
  auto& body = r.body();
  const int n = cfg.example5_n > 0 ? cfg.example5_n : cfg.depth;
  const auto k = example5_k(n);
  const auto aut = ReducedAutomaton::from_subgroup(k);
  body["N"] = n;
  body["note"] = "limit prefixes up to depth N are exact for the truncated K";
  bool ok = true;
  Json rows = Json::array();
  for (int d = 1; d <= cfg.depth; ++d) {
    b.spend();
    const auto l = limit_prefixes(aut, d);
    const bool pos = l.contains(x_pow(d));
    const bool neg = l.contains(x_pow(-d));
    ok = ok && pos && !neg;
    if (d <= n) {
      const auto y = ReducedWord::parse(2, "y");
      bool loops = true;
      for (int j = 1; j <= 3; ++j) loops = loops && contains(k, x_pow(d) * power(y, j) * x_pow(-d));
      r.check(loops, "x^d y^j x^-d lies in K");
    }
    r.check(k.read(x_pow(-d)) == SubgroupGraph::kNone, "no member of K starts with x^-d");
    rows.push_back(Json{{"depth", d}, {"size", l.words.size()}, {"has_x^d", pos}, {"has_X^d", neg}});
  }
  body["limit_prefixes"] = rows;
  Json vn = Json::array();
  for (int m = 0; m <= n; ++m) {
    const auto g = x_pow(m) * ReducedWord::parse(2, "y") * x_pow(-m);
    const bool pass = virtually_normalizes(k, g);
    ok = ok && pass;
    vn.push_back(Json{{"g", word_text(g)}, {"virtually_normalizes", pass}});
  }
  body["commensurator_evidence"] = vn;
  r.verdict = ok ? Verdict::VerifiedAtScale : Verdict::Refuted;
  r.status = ok ? "x^inf in the limit set, x^-inf not" : "example 5 not reproduced";
}

void analytic_only(Report& r, int which) {
  auto& body = r.body();
  if (which == 2) {
    body["not_checked"] = "needs an infinite normal subgroup of infinite index, which has infinite rank in F_2";
  } else {
    body["not_checked"] = "needs preimages of subgroups of Z wr Z, which are not finitely generated";
  }
  body["checked"] = Json::array();
  r.verdict = Verdict::Inconclusive;
  r.status = "analytic only";
}

}  // namespace

Report audit_example(const AuditConfig& cfg) {
  if (cfg.example < 1 || cfg.example > 5) {
    throw std::invalid_argument("unknown example id " + std::to_string(cfg.example));
  }
  return guarded("example" + std::to_string(cfg.example), cfg, [&](Report& r, const Budget& b) {
    r.body()["example"] = cfg.example;
    switch (cfg.example) {
      case 1: example1(r, b, cfg); break;
      case 3: example3(r, b, cfg); break;
      case 5: example5(r, b, cfg); break;
      default: analytic_only(r, cfg.example);
    }
  });
}

// ---------------------------------------------------------------------------

Report audit_prop5(const SetValue& kv, const std::vector<SetValue>& hvs, const AuditConfig& cfg) {
  const auto& k = need_subgroup(kv, "K");
  std::vector<SubgroupGraph> hs;
  for (const auto& h : hvs) hs.push_back(need_subgroup(h, "H"));
  if (hs.empty()) throw std::invalid_argument("prop5 needs at least one H");
  return guarded("prop5", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["K"] = kv.text;
    Json hjson = Json::array();
    for (const auto& h : hvs) hjson.push_back(h.text);
    body["H"] = hjson;
    if (k.subgroup_rank() < 2) {
      r.verdict = Verdict::Inconclusive;
      r.status = "K is elementary";
      return;
    }
    auto member = [hs](const ReducedWord& w) {
      return std::any_of(hs.begin(), hs.end(), [&](const SubgroupGraph& h) { return conjugates_into(w, h); });
    };
    const auto conj_union = SetOracle::filtered(k.rank(), "union of H_j^G", member);
    const auto cover = preceq_check(b.wrap(subgroup_oracle(k)), b.wrap(conj_union), cfg.c, at(cfg, cfg.max_radius()));
    Json cover_json{{"c", cfg.c}, {"holds", cover.holds}, {"max_distance", cover.max_distance}};
    if (cover.holds) {
      cover_json["translates"] = word_list(cover.translates);
    } else if (cover.witness) {
      cover_json["witness"] = word_text(*cover.witness);
    }
    body["cover"] = cover_json;
    if (!cover.holds) {
      r.verdict = Verdict::Inconclusive;
      r.status = "K ≼ ∪ H_j^G not certified at this scale";
      return;
    }
    const auto hit = finite_relative_index(k, hs, cfg.max_radius(), b, nullptr);
    if (!hit) {
      r.verdict = Verdict::Inconclusive;
      r.status = "no finite-index pair among the representatives";
      return;
    }
    check_index_hit(r, k, hs, *hit, cfg.max_radius(), b);
    body["finite_index"] = hit_json(*hit);
    r.verdict = Verdict::VerifiedAtScale;
    r.status = "finite |K : K ∩ gH_kg^-1| found";
  });
}

Report audit_commeqstab(const SetValue& hv, const AuditConfig& cfg) {
  const auto& h = need_subgroup(hv, "H");
  return guarded("commeqstab", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["H"] = hv.text;
    const auto aut = ReducedAutomaton::from_subgroup(h);
    const auto directions = limit_prefixes(aut, cfg.depth);
    body["depth"] = cfg.depth;
    body["directions"] = directions.words.size();
    const auto comm = commensurator(h, cfg.max_radius());
    b.spend(static_cast<long long>(comm.accepted.size()));
    std::optional<ReducedWord> exception;
    for (const auto& g : comm.accepted) {
      b.spend();
      if (translated_directions(g, aut, cfg.depth) != directions.words && !exception) exception = g;
    }
    body["accepted"] = comm.accepted.size();
    if (exception) {
      body["exception"] = word_text(*exception);
      r.check(translated_directions(*exception, aut, cfg.depth) != limit_prefixes(aut, cfg.depth).words,
              "exception moves the limit prefixes");
      r.verdict = Verdict::Refuted;
      r.status = "a commensurating element moves the limit set";
      return;
    }
    r.verdict = Verdict::VerifiedAtScale;
    r.status = "every accepted element preserves the limit prefixes";
  });
}

Report audit_result3(const SetValue& hv, const AuditConfig& cfg) {
  const auto& h = need_subgroup(hv, "H");
  return guarded("result3", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["H"] = hv.text;
    Json stages = Json::array();
    std::vector<SubgroupGraph> comms;
    for (int radius : cfg.radii) {
      const auto comm = commensurator(h, radius);
      b.spend(static_cast<long long>(comm.accepted.size()));
      comms.push_back(comm.subgroup);
      stages.push_back(Json{{"radius", radius}, {"accepted", comm.accepted.size()},
                            {"generators", describe_generators(comm.subgroup.free_basis())},
                            {"closed", comm.closed}});
    }
    body["stages"] = stages;
    const bool stable = comms.size() < 2 || comms[comms.size() - 1] == comms[comms.size() - 2];
    body["stable"] = stable;
    const auto& comm = comms.back();
    const auto basis = h.free_basis();
    r.check(std::all_of(basis.begin(), basis.end(), [&](const ReducedWord& w) { return contains(comm, w); }),
            "H lies in its commensurator");
    int c = 0;
    subgroup_oracle(comm).for_each(cfg.max_radius(), [&](const ReducedWord& g) {
      b.spend();
      c = std::max(c, right_coset_representative(h, g).length());
    });
    c = std::min(c, cfg.c);
    const auto cover = preceq_check(b.wrap(subgroup_oracle(comm)), b.wrap(subgroup_oracle(h)), c,
                                    at(cfg, cfg.max_radius()));
    Json cover_json{{"c", c}, {"holds", cover.holds}};
    if (cover.witness) cover_json["witness"] = word_text(*cover.witness);
    body["comm_preceq_H"] = cover_json;
    const bool ok = stable && cover.holds;
    r.verdict = ok ? Verdict::VerifiedAtScale : Verdict::Inconclusive;
    r.status = ok ? "commensurator stable and covered by translates of H" : "not stable or not covered at this scale";
  });
}

Report audit_brigid(const SetValue& av, const SetValue& bv, const AuditConfig& cfg) {
  return guarded("brigid", cfg, [&](Report& r, const Budget& b) {
    auto& body = r.body();
    body["A"] = av.text;
    body["B"] = bv.text;
    const auto p = at(cfg, cfg.max_radius());
    const auto la = av.automaton ? limit_prefixes(*av.automaton, cfg.depth) : limit_prefixes(b.wrap(av.oracle), cfg.depth, p);
    const auto lb = bv.automaton ? limit_prefixes(*bv.automaton, cfg.depth) : limit_prefixes(b.wrap(bv.oracle), cfg.depth, p);
    const auto cmp = limit_compare(la, lb);
    Json limits{{"depth", cfg.depth}, {"relation", to_string(cmp.relation)}, {"exact", cmp.exact}};
    if (cmp.witness) {
      limits["witness"] = word_text(*cmp.witness);
      r.check(la.contains(*cmp.witness) != lb.contains(*cmp.witness), "limit witness is on one side only");
    }
    body["limits"] = limits;
    auto tame = [&](const SetOracle& s) {
      try {
        return tame_check(b.wrap(s), cfg.nu, p).tame;
      } catch (const HullUndefined&) {
        return false;
      }
    };
    const bool tame_a = tame(av.oracle);
    const bool tame_b = tame(bv.oracle);
    const auto ab = preceq_check(b.wrap(av.oracle), b.wrap(bv.oracle), cfg.c, p);
    const auto ba = preceq_check(b.wrap(bv.oracle), b.wrap(av.oracle), cfg.c, p);
    body["tame"] = Json{{"A", tame_a}, {"B", tame_b}, {"nu", cfg.nu}};
    body["preceq"] = Json{{"c", cfg.c}, {"A_in_B", ab.holds}, {"B_in_A", ba.holds}};
    const bool equivalent = ab.holds && ba.holds;
    const bool equal = cmp.relation == LimitRelation::Equal;
    if (!(tame_a && tame_b)) {
      r.verdict = Verdict::Inconclusive;
      r.status = "tameness hypothesis not met";
    } else if (equal == equivalent) {
      r.verdict = Verdict::VerifiedAtScale;
      r.status = equal ? "equal limit sets and finite Hausdorff distance" : "different limit sets and not equivalent";
    } else {
      r.verdict = Verdict::Refuted;
      r.status = "limit-set equality disagrees with equivalence";
    }
  });
}

}  // namespace hypset
