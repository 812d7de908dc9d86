#include "hypset/set_oracle.hpp"

#include <algorithm>
#include <memory>

namespace hypset {

SetOracle::SetOracle(int rank, std::string descriptor, Membership membership,
                     Enumerator enumerator, ResidualInfinite residual_infinite)
    : rank_(rank),
      descriptor_(std::move(descriptor)),
      membership_(std::move(membership)),
      enumerator_(std::move(enumerator)),
      residual_infinite_(std::move(residual_infinite)) {}

std::vector<ReducedWord> SetOracle::enumerate(int radius) const {
  std::vector<ReducedWord> out;
  enumerator_(radius, [&](const ReducedWord& w) { out.push_back(w); });
  return out;
}

SetOracle SetOracle::filtered(int rank, std::string descriptor, Membership membership) {
  auto enumerate = [rank, membership](int radius, const Visitor& visit) {
    for (BallEnumerator e(rank, radius); !e.done(); e.advance()) {
      if (membership(e.current())) visit(e.current());
    }
  };
  return SetOracle(rank, std::move(descriptor), membership, enumerate);
}

SetOracle SetOracle::whole_group(int rank) {
  auto enumerate = [rank](int radius, const Visitor& visit) {
    for (BallEnumerator e(rank, radius); !e.done(); e.advance()) visit(e.current());
  };
  return SetOracle(
      rank, "G", [](const ReducedWord&) { return true; }, enumerate,
      [](const ReducedWord&) { return true; });
}

SetOracle SetOracle::finite(int rank, std::string descriptor, std::vector<ReducedWord> members) {
  std::sort(members.begin(), members.end(), ShortlexLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  auto shared = std::make_shared<const std::vector<ReducedWord>>(std::move(members));
  auto contains = [shared](const ReducedWord& w) {
    return std::binary_search(shared->begin(), shared->end(), w, ShortlexLess{});
  };
  auto enumerate = [shared](int radius, const Visitor& visit) {
    for (const auto& w : *shared) {
      if (w.length() > radius) break;
      visit(w);
    }
  };
  return SetOracle(rank, std::move(descriptor), contains, enumerate,
                   [](const ReducedWord&) { return false; });
}

SetOracle SetOracle::conjugacy_classes(int rank, std::vector<ReducedWord> reps) {
  // Class of w = { u c' u^-1 : c' a rotation of the cyclic core, u reduced and
  // not cancelling against c' on either side }.
  std::vector<ReducedWord> rotations;
  std::string descriptor = "classes(";
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (i) descriptor += ",";
    descriptor += reps[i].str();
    for (auto& r : cyclic_rotations(cyclic_reduce(reps[i]).core)) rotations.push_back(r);
  }
  descriptor += ")";
  std::sort(rotations.begin(), rotations.end(), ShortlexLess{});
  rotations.erase(std::unique(rotations.begin(), rotations.end()), rotations.end());
  auto rots = std::make_shared<const std::vector<ReducedWord>>(std::move(rotations));

  auto contains = [rots](const ReducedWord& w) {
    const auto core = cyclic_reduce(w).core;
    return std::binary_search(rots->begin(), rots->end(), core, ShortlexLess{});
  };
  auto enumerate = [rank, rots](int radius, const Visitor& visit) {
    std::vector<ReducedWord> found;
    for (const auto& c : *rots) {
      if (c.length() > radius) continue;
      if (c.is_identity()) {
        found.push_back(c);
        continue;
      }
      const int max_u = (radius - c.length()) / 2;
      for (BallEnumerator e(rank, max_u); !e.done(); e.advance()) {
        const auto& u = e.current();
        if (!u.is_identity()) {
          if (u.back() == inverse_letter(c[0]) || u.back() == c.back()) continue;
        }
        found.push_back(conjugate_by(u, c));
      }
    }
    std::sort(found.begin(), found.end(), ShortlexLess{});
    found.erase(std::unique(found.begin(), found.end()), found.end());
    for (const auto& w : found) visit(w);
  };
  return SetOracle(rank, std::move(descriptor), contains, enumerate);
}

SetOracle SetOracle::even_length(int rank) {
  return SetOracle::filtered(rank, "even-length",
                             [](const ReducedWord& w) { return w.length() % 2 == 0; });
}

SetOracle SetOracle::set_union(const SetOracle& a, const SetOracle& b) {
  auto contains = [a, b](const ReducedWord& w) { return a.contains(w) || b.contains(w); };
  auto enumerate = [a, b](int radius, const Visitor& visit) {
    auto left = a.enumerate(radius);
    auto right = b.enumerate(radius);
    std::vector<ReducedWord> merged;
    merged.reserve(left.size() + right.size());
    std::set_union(left.begin(), left.end(), right.begin(), right.end(),
                   std::back_inserter(merged), ShortlexLess{});
    for (const auto& w : merged) visit(w);
  };
  SetOracle::ResidualInfinite residual;
  if (a.has_exact_limits() && b.has_exact_limits()) {
    residual = [a, b](const ReducedWord& p) {
      return a.residual_infinite(p) || b.residual_infinite(p);
    };
  }
  return SetOracle(a.rank(), a.descriptor() + " | " + b.descriptor(), contains, enumerate,
                   residual);
}

SetOracle SetOracle::left_translate(const ReducedWord& g, const SetOracle& a) {
  const auto g_inv = inverse(g);
  auto contains = [a, g_inv](const ReducedWord& w) { return a.contains(g_inv * w); };
  // |g a| <= R forces |a| <= R + |g|.
  auto enumerate = [a, g](int radius, const Visitor& visit) {
    std::vector<ReducedWord> found;
    a.for_each(radius + g.length(), [&](const ReducedWord& w) {
      auto t = g * w;
      if (t.length() <= radius) found.push_back(std::move(t));
    });
    std::sort(found.begin(), found.end(), ShortlexLess{});
    for (const auto& w : found) visit(w);
  };
  return SetOracle(a.rank(), g.str() + "." + a.descriptor(), contains, enumerate);
}

SetOracle SetOracle::conjugated(const ReducedWord& g, const SetOracle& a) {
  const auto g_inv = inverse(g);
  auto contains = [a, g, g_inv](const ReducedWord& w) { return a.contains(g_inv * w * g); };
  auto enumerate = [a, g, g_inv](int radius, const Visitor& visit) {
    std::vector<ReducedWord> found;
    a.for_each(radius + 2 * g.length(), [&](const ReducedWord& w) {
      auto t = g * w * g_inv;
      if (t.length() <= radius) found.push_back(std::move(t));
    });
    std::sort(found.begin(), found.end(), ShortlexLess{});
    for (const auto& w : found) visit(w);
  };
  return SetOracle(a.rank(), "conj(" + g.str() + "," + a.descriptor() + ")", contains, enumerate);
}

}  // namespace hypset
