#include <algorithm>
#include <cctype>

#include "hypset/harness.hpp"

namespace hypset {

namespace {

bool is_letter(const Alphabet& alphabet, char ch) {
  try {
    alphabet.parse(ch);
    return true;
  } catch (const ParseError&) {
    return false;
  }
}

SetValue from_automaton(ReducedAutomaton a, std::string text) {
  SetValue v{as_oracle(a, text), std::move(a), std::nullopt, {}, std::nullopt, text};
  return v;
}

SetValue from_subgroup_graph(SubgroupGraph h, std::string text) {
  auto v = from_automaton(ReducedAutomaton::from_subgroup(h), text);
  // Closed-form enumeration is cheaper than walking the automaton.
  v.oracle = subgroup_oracle(h, text);
  v.factors.push_back(h);
  v.subgroup = std::move(h);
  return v;
}

class Parser {
 public:
  Parser(int rank, std::string_view text, const ActorTable& actors)
      : rank_(rank), alphabet_(rank), text_(text), actors_(actors) {}

  SetValue parse() {
    auto v = expr();
    skip();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    v.text = std::string(text_);
    v.oracle = rename(v.oracle, v.text);
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("set expression column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool eat(char ch) {
    skip();
    if (pos_ < text_.size() && text_[pos_] == ch) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char ch) {
    if (!eat(ch)) fail(std::string("expected '") + ch + "'");
  }

  bool at_word() {
    skip();
    return pos_ < text_.size() && (text_[pos_] == '1' || is_letter(alphabet_, text_[pos_]));
  }

  ReducedWord word() {
    skip();
    if (pos_ < text_.size() && text_[pos_] == '1') {
      ++pos_;
      return ReducedWord(rank_);
    }
    const auto start = pos_;
    while (pos_ < text_.size() && is_letter(alphabet_, text_[pos_])) ++pos_;
    if (start == pos_) fail("expected a word");
    return normalize(rank_, text_.substr(start, pos_ - start));
  }

  std::vector<ReducedWord> word_list(char close) {
    std::vector<ReducedWord> out;
    skip();
    if (eat(close)) return out;
    do {
      out.push_back(word());
    } while (eat(','));
    expect(close);
    return out;
  }

  std::string identifier() {
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    if (start == pos_) fail("expected a name");
    return std::string(text_.substr(start, pos_ - start));
  }

  static SetOracle rename(const SetOracle& a, const std::string& name) {
    return SetOracle(
        a.rank(), name, [a](const ReducedWord& w) { return a.contains(w); },
        [a](int r, const SetOracle::Visitor& v) { a.for_each(r, v); },
        a.has_exact_limits() ? SetOracle::ResidualInfinite([a](const ReducedWord& p) { return a.residual_infinite(p); })
                             : SetOracle::ResidualInfinite{});
  }

  SetValue expr() {
    auto v = term();
    while (eat('|')) {
      auto rhs = term();
      SetValue out{SetOracle::set_union(v.oracle, rhs.oracle), std::nullopt, std::nullopt, v.factors, std::nullopt,
                   v.text + " | " + rhs.text};
      if (v.automaton && rhs.automaton) {
        out.automaton = boolean(BoolOp::Union, *v.automaton, *rhs.automaton);
        out.oracle = as_oracle(*out.automaton, out.text);
      }
      out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
      if (v.class_reps && rhs.class_reps) {
        out.class_reps = *v.class_reps;
        out.class_reps->insert(out.class_reps->end(), rhs.class_reps->begin(), rhs.class_reps->end());
      }
      v = std::move(out);
    }
    return v;
  }

  SetValue term() {
    auto v = factor();
    while (eat('.')) {
      const auto at = pos_;
      auto rhs = factor();
      SetValue out{v.oracle, std::nullopt, std::nullopt, v.factors, std::nullopt, v.text + "." + rhs.text};
      out.factors.insert(out.factors.end(), rhs.factors.begin(), rhs.factors.end());
      if (v.automaton && rhs.automaton) {
        out.automaton = reduced_product(*v.automaton, *rhs.automaton);
        out.oracle = as_oracle(*out.automaton, out.text);
      } else if (v.automaton && v.automaton->finite() && v.automaton->enumerate(v.automaton->state_count()).size() == 1) {
        const auto g = v.automaton->enumerate(v.automaton->state_count()).front();
        out.oracle = SetOracle::left_translate(g, rhs.oracle);
      } else {
        pos_ = at;
        fail("a product with a non-rational set needs a single word on the left");
      }
      v = std::move(out);
    }
    return v;
  }

  SetValue factor() {
    skip();
    const auto start = pos_;
    if (at_word()) {
      const auto w = word();
      const auto text = std::string(text_.substr(start, pos_ - start));
      if (eat('*')) return from_automaton(ReducedAutomaton::word_star(w), text + "*");
      return from_automaton(ReducedAutomaton::from_words(rank_, {w}), text);
    }
    auto v = atom();
    if (eat('*')) fail("'*' applies to a single word only");
    return v;
  }

  SetValue atom() {
    skip();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const auto start = pos_;
    const char ch = text_[pos_];
    auto text_here = [&] { return std::string(text_.substr(start, pos_ - start)); };
    if (ch == '<') {
      ++pos_;
      const auto gens = word_list('>');
      return from_subgroup_graph(SubgroupGraph::build(rank_, gens), text_here());
    }
    if (ch == '{') {
      ++pos_;
      const auto words = word_list('}');
      return from_automaton(ReducedAutomaton::from_words(rank_, words), text_here());
    }
    if (ch == '(') {
      ++pos_;
      auto v = expr();
      expect(')');
      v.text = text_here();
      return v;
    }
    if (ch == 'G') {
      ++pos_;
      return from_subgroup_graph(SubgroupGraph::build(rank_, [&] {
                                   std::vector<ReducedWord> gens;
                                   for (int i = 0; i < rank_; ++i) {
                                     gens.push_back(ReducedWord::from_reduced(rank_, {static_cast<Letter>(2 * i)}));
                                   }
                                   return gens;
                                 }()),
                                 "G");
    }
    if (ch == '$') {
      ++pos_;
      const auto name = identifier();
      const auto it = actors_.find(name);
      if (it == actors_.end()) throw UnknownActor(name);
      if (it->second.rank() != rank_) fail("actor '" + name + "' has a different rank");
      auto v = it->second;
      v.text = "$" + name;
      return v;
    }
    if (ch == '@') {
      ++pos_;
      const auto name = identifier();
      return builtin(name, start);
    }
    if (text_.substr(pos_, 6) == "class(") {
      pos_ += 6;
      const auto reps = word_list(')');
      SetValue v{SetOracle::conjugacy_classes(rank_, reps), std::nullopt, std::nullopt, {}, reps, text_here()};
      return v;
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  SetValue builtin(const std::string& name, std::size_t start) {
    if (rank_ != 2) fail("builtin @" + name + " needs rank 2");
    auto text = [&] { return std::string(text_.substr(start, pos_ - start)); };
    auto oracle_value = [&](SetOracle o) {
      return SetValue{std::move(o), std::nullopt, std::nullopt, {}, std::nullopt, text()};
    };
    if (name == "ex1A") return from_automaton(ReducedAutomaton::word_star(ReducedWord::parse(2, "x")), text());
    if (name == "ex1B") return oracle_value(example1_b());
    if (name == "ex3A") return oracle_value(example3_a());
    if (name == "ex3B") return oracle_value(example3_b());
    if (name == "ex3C") return oracle_value(example3_c());
    if (name == "ex5K") {
      int n = 8;
      if (eat('(')) {
        skip();
        const auto digits = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (digits == pos_) fail("expected a number");
        n = std::stoi(std::string(text_.substr(digits, pos_ - digits)));
        expect(')');
      }
      return from_subgroup_graph(example5_k(n), text());
    }
    pos_ = start;
    fail("unknown builtin '@" + name + "'");
  }

  int rank_;
  Alphabet alphabet_;
  std::string_view text_;
  const ActorTable& actors_;
  std::size_t pos_ = 0;
};

}  // namespace

SetValue parse_set(int rank, std::string_view text, const ActorTable& actors) {
  return Parser(rank, text, actors).parse();
}

}  // namespace hypset
