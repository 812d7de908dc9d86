#include "hypset/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <unordered_map>

namespace hypset {

QcEstimate quasiconvexity_constant(const SetOracle& a, const TruncationParams& p) {
  auto members = a.enumerate(p.radius);
  if (members.size() < 2) {
    throw DegenerateSet("degenerate set: fewer than 2 members of " + a.descriptor() +
                        " within radius " + std::to_string(p.radius));
  }
  const PrefixTrie inner(a.rank(), members);
  const PrefixTrie outer(a.rank(), a.enumerate(p.radius + p.slack));

  // Geodesics between members only visit prefixes: [u, v] runs through the
  // prefixes of u and of v down to lcp(u, v). So every geodesic vertex is a
  // prefix of some member a at depth >= min_{b != a} lcp(a, b).
  QcEstimate best;
  best.params = p;
  best.members = inner.size();
  best.epsilon = -1;
  std::unordered_map<ReducedWord, int, ReducedWordHash> memo;
  for (const auto& m : inner.members()) {
    const auto div = inner.min_divergence(m);
    for (int len = div.depth; len <= m.length(); ++len) {
      auto point = m.prefix(static_cast<std::size_t>(len));
      int d;
      if (auto it = memo.find(point); it != memo.end()) {
        d = it->second;
      } else {
        d = outer.distance_to(point);
        memo.emplace(point, d);
      }
      if (d > best.epsilon) {
        best.epsilon = d;
        best.from = m;
        best.to = inner.members()[static_cast<std::size_t>(div.partner)];
        best.point = std::move(point);
      }
    }
  }
  return best;
}

int distance_to_set(const ReducedWord& w, const SetOracle& s, int radius) {
  const PrefixTrie trie(s.rank(), s.enumerate(radius));
  return trie.distance_to(w);
}

namespace {

void one_sided(const SetOracle& from, const PrefixTrie& to, const TruncationParams& p,
               bool first, HausdorffResult& out) {
  from.for_each(p.radius, [&](const ReducedWord& w) {
    const int d = to.distance_to(w);
    if (d < 0 || d > p.slack) out.bounded = false;
    const int value = d < 0 ? std::numeric_limits<int>::max() : d;
    if (value > out.value) {
      out.value = value;
      out.witness = w;
      out.witness_in_first = first;
    }
  });
}

}  // namespace

HausdorffResult hausdorff_truncated(const SetOracle& a, const SetOracle& b,
                                    const TruncationParams& p) {
  const auto a_small = a.enumerate(p.radius);
  const auto b_small = b.enumerate(p.radius);
  if (a_small.empty() || b_small.empty()) {
    throw DegenerateSet("hausdorff distance of an empty truncation");
  }
  const PrefixTrie a_trie(a.rank(), a.enumerate(p.radius + p.slack));
  const PrefixTrie b_trie(b.rank(), b.enumerate(p.radius + p.slack));
  HausdorffResult out;
  out.params = p;
  out.value = -1;
  one_sided(a, b_trie, p, true, out);
  one_sided(b, a_trie, p, false, out);
  return out;
}

namespace {

// Above this many target members the cover is decided by membership queries
// around each point instead of a materialized trie.
constexpr std::size_t kDenseTarget = std::size_t{1} << 20;

struct TooMany {};

std::optional<std::vector<ReducedWord>> enumerate_at_most(const SetOracle& s, int radius, std::size_t cap) {
  std::vector<ReducedWord> out;
  try {
    s.for_each(radius, [&](const ReducedWord& w) {
      if (out.size() == cap) throw TooMany{};
      out.push_back(w);
    });
  } catch (const TooMany&) {
    return std::nullopt;
  }
  return out;
}

CoverVerdict cover_by_trie(const SetOracle& points, std::vector<ReducedWord> target, int c,
                           const TruncationParams& p) {
  const PrefixTrie trie(points.rank(), std::move(target));
  CoverVerdict out;
  out.c = c;
  out.params = p;
  std::set<ReducedWord, ShortlexLess> translates;
  points.for_each(p.radius, [&](const ReducedWord& w) {
    const auto near = trie.nearest(w);
    const int d = near.distance < 0 ? std::numeric_limits<int>::max() : near.distance;
    out.max_distance = std::max(out.max_distance, d);
    if (d > c) {
      if (!out.witness) {
        out.witness = w;
        out.witness_distance = d;
      }
      return;
    }
    if (!out.witness) {
      const auto& anchor = trie.members()[static_cast<std::size_t>(near.member)];
      translates.insert(inverse(anchor) * w);
    }
  });
  out.holds = !out.witness.has_value();
  if (out.holds) out.translates.assign(translates.begin(), translates.end());
  return out;
}

// Offsets t are tried by length, then shortlex; the anchor is w t. Distances
// beyond `reach` are reported as reach + 1. Stops at the first uncovered point.
CoverVerdict cover_by_search(const SetOracle& points, const SetOracle& target, int c,
                             const TruncationParams& p) {
  const int reach = c + std::min(p.slack, 2);
  std::vector<ReducedWord> offsets;
  for (BallEnumerator e(points.rank(), reach); !e.done(); e.advance()) offsets.push_back(e.current());
  const int limit = p.radius + p.slack;
  CoverVerdict out;
  out.c = c;
  out.params = p;
  std::set<ReducedWord, ShortlexLess> translates;
  struct Stop {};
  try {
    points.for_each(p.radius, [&](const ReducedWord& w) {
      int d = reach + 1;
      for (const auto& t : offsets) {
        if (t.length() >= d) break;
        const auto anchor = w * t;
        if (anchor.length() <= limit && target.contains(anchor)) {
          d = t.length();
          if (d <= c) translates.insert(inverse(t));
          break;
        }
      }
      out.max_distance = std::max(out.max_distance, d);
      if (d > c) {
        out.witness = w;
        out.witness_distance = d;
        throw Stop{};
      }
    });
  } catch (const Stop&) {
  }
  out.holds = !out.witness.has_value();
  if (out.holds) out.translates.assign(translates.begin(), translates.end());
  return out;
}

CoverVerdict cover(const SetOracle& points, const SetOracle& target, int c,
                   const TruncationParams& p) {
  if (ball_size(points.rank(), c + std::min(p.slack, 2)) <= static_cast<long long>(kDenseTarget)) {
    if (auto members = enumerate_at_most(target, p.radius + p.slack, kDenseTarget)) {
      return cover_by_trie(points, std::move(*members), c, p);
    }
    return cover_by_search(points, target, c, p);
  }
  return cover_by_trie(points, target.enumerate(p.radius + p.slack), c, p);
}

}  // namespace

CoverVerdict preceq_check(const SetOracle& b, const SetOracle& a, int c,
                          const TruncationParams& p) {
  return cover(b, a, c, p);
}

CoverVerdict quasidense_check(const SetOracle& q, int alpha, const TruncationParams& p) {
  return cover(SetOracle::whole_group(q.rank()), q, alpha, p);
}

std::vector<ReducedWord> path_of_word(int rank, const std::vector<Letter>& letters) {
  std::vector<ReducedWord> path;
  path.reserve(letters.size() + 1);
  path.emplace_back(rank);
  for (Letter c : letters) {
    path.push_back(path.back() * ReducedWord::from_reduced(rank, {c}));
  }
  return path;
}

QuasigeodesicVerdict quasigeodesic_check(std::span<const ReducedWord> path, Ratio lambda,
                                         Ratio c) {
  if (lambda.num <= 0 || lambda.den <= 0 || lambda.num > lambda.den) {
    throw std::invalid_argument("lambda must lie in (0, 1]");
  }
  if (c.num < 0 || c.den <= 0) throw std::invalid_argument("c must be non-negative");
  for (std::size_t i = 1; i < path.size(); ++i) {
    if (distance(path[i - 1], path[i]) != 1) {
      throw std::invalid_argument("non-unit step in path at vertex " + std::to_string(i));
    }
  }
  QuasigeodesicVerdict out;
  // Scaled by lambda.den * c.den: lambda.num*c.den*len - c.num*lambda.den <= d*lambda.den*c.den.
  long long worst = std::numeric_limits<long long>::max();
  for (std::size_t i = 0; i < path.size(); ++i) {
    for (std::size_t j = i; j < path.size(); ++j) {
      const long long len = static_cast<long long>(j - i);
      const long long d = distance(path[i], path[j]);
      const long long lhs = lambda.num * c.den * len - c.num * lambda.den;
      const long long rhs = d * lambda.den * c.den;
      if (lhs > rhs) out.holds = false;
      const long long slackness = d * lambda.den - lambda.num * len;
      if (slackness < worst) {
        worst = slackness;
        out.begin = i;
        out.end = j;
        out.worst_distance = static_cast<int>(d);
        out.worst_length = static_cast<int>(len);
      }
    }
  }
  return out;
}

int distance_to_geodesic(const ReducedWord& v, const ReducedWord& u, const ReducedWord& w) {
  return static_cast<int>(gromov_product(u, w, v).doubled / 2);
}

BrokenLineVerdict broken_line_check(std::span<const ReducedWord> corners, int c0, int c1) {
  if (corners.size() < 2) throw std::invalid_argument("broken line needs n >= 1 segments");
  BrokenLineVerdict out;
  out.min_segment = std::numeric_limits<int>::max();
  for (std::size_t i = 1; i < corners.size(); ++i) {
    const int len = distance(corners[i - 1], corners[i]);
    out.total_length += len;
    out.min_segment = std::min(out.min_segment, len);
  }
  for (std::size_t i = 1; i + 1 < corners.size(); ++i) {
    out.max_corner = std::max(out.max_corner,
                              gromov_product(corners[i - 1], corners[i + 1], corners[i]));
  }
  // delta = 0 in a tree: C0 >= 14 delta and C1 > 12 (C0 + delta).
  if (c0 < 0) {
    out.failed_hypothesis = "C0 >= 14*delta";
  } else if (!(c1 > 12 * c0)) {
    out.failed_hypothesis = "C1 > 12*(C0+delta)";
  } else if (out.min_segment <= c1) {
    out.failed_hypothesis = "segment length > C1";
  } else if (out.max_corner > HalfInteger::from_int(c0)) {
    out.failed_hypothesis = "corner Gromov product <= C0 (measured " + out.max_corner.str() + ")";
  }
  out.hypotheses_hold = out.failed_hypothesis.empty();

  const auto& x0 = corners.front();
  const auto& xn = corners.back();
  out.endpoint_distance = distance(x0, xn);
  for (std::size_t i = 1; i < corners.size(); ++i) {
    for (const auto& v : geodesic(corners[i - 1], corners[i]).vertices) {
      out.max_deviation = std::max(out.max_deviation, distance_to_geodesic(v, x0, xn));
    }
  }
  out.neighborhood_holds = out.max_deviation <= 2 * c0;
  out.length_holds = 2 * out.endpoint_distance >= out.total_length;
  return out;
}

ConjWitness conj_witness(const SetOracle& a, const ReducedWord& g, int epsilon,
                         const TruncationParams& p, const ConjOptions& options) {
  auto members = a.enumerate(p.radius);
  if (members.empty()) throw PreconditionFailed("intersection too small at this radius");
  const auto g_inv = inverse(g);
  const int long_enough = (p.radius + 1) / 2;
  int shared = 0;
  for (const auto& w : members) {
    if (w.length() >= long_enough && a.contains(g_inv * w * g)) ++shared;
  }
  if (shared < options.threshold) {
    throw PreconditionFailed("intersection too small at this radius (" + std::to_string(shared) +
                             " < " + std::to_string(options.threshold) + ")");
  }
  ConjWitness out;
  out.shared = shared;
  out.epsilon = epsilon;
  out.kappa = members.front().length();
  out.bound = 2 * epsilon + 2 * out.kappa;

  const PrefixTrie trie(a.rank(), members);
  bool found = false;
  // g = a r b^-1  <=>  r = a^-1 (g b); for fixed b the best a is the member
  // nearest to g b.
  for (const auto& b : trie.members()) {
    const auto target = g * b;
    const auto near = trie.nearest(target);
    const auto& anchor = trie.members()[static_cast<std::size_t>(near.member)];
    auto r = inverse(anchor) * target;
    if (!found || shortlex_compare(r, out.r) < 0) {
      found = true;
      out.r = std::move(r);
      out.a = anchor;
      out.b = b;
    }
  }
  if (out.a * out.r * inverse(out.b) != g) {
    throw std::logic_error("conj_witness factorization does not reduce to g");
  }
  return out;
}

double delta_four_point(std::span<const std::array<int, 4>> sample,
                        const std::function<double(int, int)>& dist) {
  constexpr double kTol = 1e-12;
  double delta = 0.0;
  for (const auto& q : sample) {
    double d[4][4];
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) d[i][j] = dist(q[static_cast<std::size_t>(i)], q[static_cast<std::size_t>(j)]);
    }
    for (int i = 0; i < 4; ++i) {
      if (std::abs(d[i][i]) > kTol) throw std::invalid_argument("metric axiom violated: d(x,x) != 0");
      for (int j = 0; j < 4; ++j) {
        if (d[i][j] < -kTol || std::abs(d[i][j] - d[j][i]) > kTol) {
          throw std::invalid_argument("metric axiom violated: symmetry/non-negativity");
        }
        for (int k = 0; k < 4; ++k) {
          if (d[i][k] > d[i][j] + d[j][k] + kTol) {
            throw std::invalid_argument("metric axiom violated: triangle inequality");
          }
        }
      }
    }
    auto gp = [&](int x, int y, int w) { return 0.5 * (d[x][w] + d[y][w] - d[x][y]); };
    for (int w = 0; w < 4; ++w) {
      int others[3];
      int n = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != w) others[n++] = i;
      }
      for (int zi = 0; zi < 3; ++zi) {
        const int z = others[zi];
        const int x = others[(zi + 1) % 3];
        const int y = others[(zi + 2) % 3];
        delta = std::max(delta, std::min(gp(x, z, w), gp(y, z, w)) - gp(x, y, w));
      }
    }
  }
  return delta;
}

HalfInteger delta_four_point_words(std::span<const std::array<ReducedWord, 4>> sample) {
  HalfInteger delta{0};
  for (const auto& q : sample) {
    for (int w = 0; w < 4; ++w) {
      int others[3];
      int n = 0;
      for (int i = 0; i < 4; ++i) {
        if (i != w) others[n++] = i;
      }
      for (int zi = 0; zi < 3; ++zi) {
        const auto& z = q[static_cast<std::size_t>(others[zi])];
        const auto& x = q[static_cast<std::size_t>(others[(zi + 1) % 3])];
        const auto& y = q[static_cast<std::size_t>(others[(zi + 2) % 3])];
        const auto& base = q[static_cast<std::size_t>(w)];
        const auto deficit =
            std::min(gromov_product(x, z, base), gromov_product(y, z, base)) -
            gromov_product(x, y, base);
        delta = std::max(delta, deficit);
      }
    }
  }
  return delta;
}

int triangle_thinness(const ReducedWord& a, const ReducedWord& b, const ReducedWord& c) {
  int worst = 0;
  const std::array<const ReducedWord*, 3> pts{&a, &b, &c};
  for (int v = 0; v < 3; ++v) {
    const auto& apex = *pts[static_cast<std::size_t>(v)];
    const auto& p = *pts[static_cast<std::size_t>((v + 1) % 3)];
    const auto& q = *pts[static_cast<std::size_t>((v + 2) % 3)];
    const auto side1 = geodesic(apex, p).vertices;
    const auto side2 = geodesic(apex, q).vertices;
    const auto alpha = gromov_product(p, q, apex).doubled / 2;
    for (long long t = 0; t <= alpha; ++t) {
      worst = std::max(worst, distance(side1[static_cast<std::size_t>(t)],
                                       side2[static_cast<std::size_t>(t)]));
    }
  }
  return worst;
}

}  // namespace hypset
