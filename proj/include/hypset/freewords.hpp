#ifndef HYPSET_FREEWORDS_HPP_
#define HYPSET_FREEWORDS_HPP_

// Free group F_k as a tree: reduced words, the word metric, Gromov products,
// geodesics, balls, conjugacy and roots.
//
// Letters are stored as codes 0 .. 2k-1: code 2i is generator i and code
// 2i+1 its inverse, so inversion is `code ^ 1` and the natural code order is
// the canonical shortlex letter order (x < X < y < Y < ...).

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hypset {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class AlphabetMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Letter = std::uint8_t;

constexpr Letter inverse_letter(Letter c) noexcept { return c ^ 1U; }

/// Symmetrized generating set of F_k. Rank 2 uses x,y to match the usual
/// notation; other ranks use a,b,c,... (rank 1 uses x). Inverses are the
/// uppercase letters.
class Alphabet {
 public:
  static constexpr int kMaxRank = 26;

  explicit Alphabet(int rank);

  int rank() const noexcept { return rank_; }
  int size() const noexcept { return 2 * rank_; }

  char symbol(Letter c) const;
  Letter parse(char ch) const;  // throws ParseError

 private:
  int rank_;
  std::string lower_;
};

/// A freely reduced word; the canonical representative of a group element.
class ReducedWord {
 public:
  ReducedWord() = default;
  explicit ReducedWord(int rank) : rank_(static_cast<std::uint8_t>(rank)) {}

  /// Reduces `letters` (any sequence of codes) freely.
  static ReducedWord from_letters(int rank, const std::vector<Letter>& letters);
  /// Parses and reduces a string over the rank's alphabet.
  static ReducedWord parse(int rank, std::string_view text);
  /// Wraps letters already known to be reduced (checked in debug builds).
  static ReducedWord from_reduced(int rank, std::vector<Letter> letters);

  int rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return letters_.size(); }
  int length() const noexcept { return static_cast<int>(letters_.size()); }
  bool is_identity() const noexcept { return letters_.empty(); }
  const std::vector<Letter>& letters() const noexcept { return letters_; }
  Letter operator[](std::size_t i) const { return letters_[i]; }
  Letter back() const { return letters_.back(); }

  ReducedWord prefix(std::size_t n) const;
  ReducedWord suffix_from(std::size_t n) const;

  std::string str() const;

  friend bool operator==(const ReducedWord&, const ReducedWord&) = default;

 private:
  std::uint8_t rank_ = 2;
  std::vector<Letter> letters_;
};

/// Shortlex: shorter first, then lexicographic on letter codes.
std::strong_ordering shortlex_compare(const ReducedWord& a, const ReducedWord& b);

struct ShortlexLess {
  bool operator()(const ReducedWord& a, const ReducedWord& b) const {
    return shortlex_compare(a, b) < 0;
  }
};

struct ReducedWordHash {
  std::size_t operator()(const ReducedWord& w) const noexcept;
};

ReducedWord normalize(int rank, std::string_view raw);
ReducedWord inverse(const ReducedWord& w);
ReducedWord product(const ReducedWord& u, const ReducedWord& v);
ReducedWord power(const ReducedWord& w, long long n);
ReducedWord conjugate_by(const ReducedWord& g, const ReducedWord& w);  // g w g^-1

inline ReducedWord operator*(const ReducedWord& u, const ReducedWord& v) {
  return product(u, v);
}

int common_prefix_length(const ReducedWord& u, const ReducedWord& v);

/// d(u, v) = |u^-1 v|.
int distance(const ReducedWord& u, const ReducedWord& v);

/// Exact half-integer stored as twice its value.
struct HalfInteger {
  long long doubled = 0;

  static constexpr HalfInteger from_int(long long v) { return {2 * v}; }
  bool is_integer() const noexcept { return doubled % 2 == 0; }
  std::string str() const;

  friend auto operator<=>(const HalfInteger&, const HalfInteger&) = default;
  friend HalfInteger operator-(HalfInteger a, HalfInteger b) {
    return {a.doubled - b.doubled};
  }
};

/// (x|y)_w = (d(x,w) + d(y,w) - d(x,y)) / 2.
HalfInteger gromov_product(const ReducedWord& x, const ReducedWord& y,
                           const ReducedWord& w);

struct GeodesicPath {
  std::vector<ReducedWord> vertices;

  int length() const noexcept { return static_cast<int>(vertices.size()) - 1; }
};

/// The unique tree geodesic u -> (meet) -> v.
GeodesicPath geodesic(const ReducedWord& u, const ReducedWord& v);

long long sphere_size(int rank, int radius);
long long ball_size(int rank, int radius);

/// Streams every reduced word of length <= radius exactly once, in shortlex
/// order. Nothing is materialized.
class BallEnumerator {
 public:
  BallEnumerator(int rank, int radius, int min_length = 0);

  /// Current word; valid until the next call to advance().
  const ReducedWord& current() const noexcept { return word_; }
  bool done() const noexcept { return done_; }
  void advance();

  template <typename Fn>
  static void for_each(int rank, int radius, Fn&& fn) {
    for (BallEnumerator e(rank, radius); !e.done(); e.advance()) fn(e.current());
  }

 private:
  bool first_of_length(int length);
  bool increment();

  int rank_;
  int radius_;
  bool done_ = false;
  std::vector<Letter> buf_;
  ReducedWord word_;
};

struct CyclicReduction {
  ReducedWord core;
  ReducedWord conjugator;  // w = conjugator * core * conjugator^-1
};

CyclicReduction cyclic_reduce(const ReducedWord& w);

/// Exact conjugacy decision: cyclic cores are rotations of each other.
bool conjugate_test(const ReducedWord& u, const ReducedWord& v);

/// Distinct cyclic rotations of a cyclically reduced word, shortlex sorted.
std::vector<ReducedWord> cyclic_rotations(const ReducedWord& core);

struct ElementaryData {
  ReducedWord root;        // primitive r with g = r^n
  long long exponent = 1;  // n >= 1
  ReducedWord conjugator;  // g = w c^n w^-1 with c cyclically reduced
  ReducedWord cyclic_root; // c
};

/// Root data of g != 1. In F_k the maximal elementary subgroup E(g) is the
/// cyclic group generated by the root.
ElementaryData primitive_root(const ReducedWord& g);

}  // namespace hypset

#endif  // HYPSET_FREEWORDS_HPP_
