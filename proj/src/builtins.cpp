#include <algorithm>
#include <sstream>

#include "hypset/harness.hpp"

namespace hypset {

namespace {

constexpr Letter kX = 0;
constexpr Letter kXInv = 1;
constexpr Letter kY = 2;

ReducedWord xy(std::size_t n, std::size_t m) {
  std::vector<Letter> letters(n, kX);
  letters.insert(letters.end(), m, kY);
  return ReducedWord::from_reduced(2, std::move(letters));
}

ReducedWord x_power(long long n) {
  return ReducedWord::from_reduced(2, std::vector<Letter>(static_cast<std::size_t>(n < 0 ? -n : n), n < 0 ? kXInv : kX));
}

// w = x^n y^m with n, m >= 0; returns (n, m).
std::optional<std::pair<std::size_t, std::size_t>> split_xy(const ReducedWord& w) {
  if (w.rank() != 2) return std::nullopt;
  std::size_t i = 0;
  while (i < w.size() && w[i] == kX) ++i;
  const std::size_t n = i;
  while (i < w.size() && w[i] == kY) ++i;
  if (i != w.size()) return std::nullopt;
  return std::make_pair(n, w.size() - n);
}

bool is_x_power(const ReducedWord& w, Letter letter) {
  return std::all_of(w.letters().begin(), w.letters().end(), [letter](Letter c) { return c == letter; });
}

using Bound = std::size_t (*)(std::size_t);

// { x^n y^m : m <= bound(n) }; infinitely many members extend exactly the
// prefixes x^n.
SetOracle staircase(std::string name, Bound bound) {
  auto member = [bound](const ReducedWord& w) {
    const auto s = split_xy(w);
    return s && s->second <= bound(s->first);
  };
  // Within one length, x^n y^m precedes x^n' y^m' in shortlex iff n > n'.
  auto enumerate = [bound](int radius, const SetOracle::Visitor& visit) {
    for (std::size_t len = 0; len <= static_cast<std::size_t>(std::max(radius, 0)); ++len) {
      for (std::size_t n = len + 1; n-- > 0;) {
        if (len - n <= bound(n)) visit(xy(n, len - n));
      }
    }
  };
  auto residual = [](const ReducedWord& p) { return p.rank() == 2 && is_x_power(p, kX); };
  return SetOracle(2, std::move(name), member, enumerate, residual);
}

}  // namespace

SetOracle example1_a() {
  return as_oracle(ReducedAutomaton::word_star(ReducedWord::parse(2, "x")), "ex1A");
}

SetOracle example1_b() {
  return staircase("ex1B", [](std::size_t n) { return n; });
}

SetOracle example3_b() {
  return staircase("ex3B", [](std::size_t n) { return n * n; });
}

SetOracle example3_c() {
  auto member = [](const ReducedWord& w) { return w.rank() == 2 && !w.is_identity() && is_x_power(w, kXInv); };
  auto enumerate = [](int radius, const SetOracle::Visitor& visit) {
    for (int n = 1; n <= radius; ++n) visit(x_power(-n));
  };
  auto residual = [](const ReducedWord& p) { return p.rank() == 2 && is_x_power(p, kXInv); };
  return SetOracle(2, "ex3C", member, enumerate, residual);
}

SetOracle example3_a() {
  const auto u = SetOracle::set_union(example3_b(), example3_c());
  return SetOracle(
      2, "ex3A", [u](const ReducedWord& w) { return u.contains(w); },
      [u](int r, const SetOracle::Visitor& v) { u.for_each(r, v); },
      [u](const ReducedWord& p) { return u.residual_infinite(p); });
}

SubgroupGraph example5_k(int n) {
  if (n < 0) throw std::invalid_argument("example 5 needs N >= 0");
  std::vector<ReducedWord> gens;
  const auto y = ReducedWord::parse(2, "y");
  for (int i = 0; i <= n; ++i) gens.push_back(x_power(i) * y * x_power(-i));
  return SubgroupGraph::build(2, gens);
}

// ---------------------------------------------------------------------------
// Budget

void Budget::spend(long long n) const {
  state_->used += n;
  if (state_->used > state_->limit) throw BudgetExhausted(state_->limit);
}

SetOracle Budget::wrap(const SetOracle& a) const {
  const Budget self = *this;
  auto member = [self, a](const ReducedWord& w) {
    self.spend();
    return a.contains(w);
  };
  auto enumerate = [self, a](int r, const SetOracle::Visitor& visit) {
    a.for_each(r, [&](const ReducedWord& w) {
      self.spend();
      visit(w);
    });
  };
  SetOracle::ResidualInfinite residual;
  if (a.has_exact_limits()) {
    residual = [self, a](const ReducedWord& p) {
      self.spend();
      return a.residual_infinite(p);
    };
  }
  return SetOracle(a.rank(), a.descriptor(), member, enumerate, residual);
}

// ---------------------------------------------------------------------------
// Reports

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::VerifiedAtScale: return "verified-at-scale";
    case Verdict::Refuted: return "refuted";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "?";
}

int exit_code(Verdict v) {
  switch (v) {
    case Verdict::VerifiedAtScale: return 0;
    case Verdict::Refuted: return 2;
    case Verdict::Inconclusive: return 3;
  }
  return 3;
}

std::string word_text(const ReducedWord& w) { return w.is_identity() ? "1" : w.str(); }

Json word_list(const std::vector<ReducedWord>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(word_text(w));
  return out;
}

Report::Report(std::string audit) { body_["audit"] = std::move(audit); }

void Report::check(bool ok, const std::string& what) {
  ++checks_;
  if (!ok) failures_.push_back(what);
}

void Report::finish(const Budget& budget, std::optional<double> seconds) {
  body_["verdict"] = to_string(verdict);
  body_["status"] = status;
  body_["self_check"] = Json{{"checks", checks_}, {"failures", failures_.size()}};
  body_["nodes"] = budget.used();
  if (seconds) body_["seconds"] = *seconds;
  if (!failures_.empty()) throw SelfCheckFailed("report self-check failed: " + failures_.front());
}

namespace {

bool scalar(const Json& j) { return !j.is_object() && !j.is_array(); }

std::string scalar_text(const Json& j) {
  if (j.is_string()) {
    const auto& s = j.get_ref<const std::string&>();
    return s.empty() ? "\"\"" : s;
  }
  if (j.is_boolean()) return j.get<bool>() ? "yes" : "no";
  if (j.is_null()) return "-";
  return j.dump();
}

void render(const Json& j, int indent, std::ostringstream& out) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  for (const auto& [key, value] : j.items()) {
    if (scalar(value)) {
      out << pad << key << ": " << scalar_text(value) << '\n';
    } else if (value.is_array() && std::all_of(value.begin(), value.end(), scalar)) {
      out << pad << key << ":";
      if (value.empty()) out << " (none)";
      for (std::size_t i = 0; i < value.size(); ++i) out << (i ? ", " : " ") << scalar_text(value[i]);
      out << '\n';
    } else if (value.is_array()) {
      out << pad << key << ":\n";
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (scalar(value[i])) {
          out << pad << "  - " << scalar_text(value[i]) << '\n';
        } else {
          out << pad << "  - #" << (i + 1) << '\n';
          render(value[i], indent + 4, out);
        }
      }
    } else if (value.empty()) {
      out << pad << key << ": (none)\n";
    } else {
      out << pad << key << ":\n";
      render(value, indent + 2, out);
    }
  }
}

}  // namespace

std::string render_text(const Json& object) {
  std::ostringstream out;
  render(object, 0, out);
  return out.str();
}

std::string Report::text() const { return render_text(body_); }

std::string Report::json() const { return body_.dump(2) + "\n"; }

}  // namespace hypset
