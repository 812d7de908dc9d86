#include "hypset/freewords.hpp"

#include <algorithm>
#include <cassert>
#include <cctype>
#include <functional>

namespace hypset {

namespace {

void check_same_rank(const ReducedWord& u, const ReducedWord& v) {
  if (u.rank() != v.rank()) {
    throw AlphabetMismatch("alphabet mismatch: rank " + std::to_string(u.rank()) +
                           " vs rank " + std::to_string(v.rank()));
  }
}

// Appends `c` to a reduced buffer, cancelling when it meets its inverse.
inline void push_reduced(std::vector<Letter>& buf, Letter c) {
  if (!buf.empty() && buf.back() == inverse_letter(c)) {
    buf.pop_back();
  } else {
    buf.push_back(c);
  }
}

}  // namespace

Alphabet::Alphabet(int rank) : rank_(rank) {
  if (rank < 1 || rank > kMaxRank) {
    throw std::invalid_argument("rank must be in 1..26, got " + std::to_string(rank));
  }
  if (rank == 1) {
    lower_ = "x";
  } else if (rank == 2) {
    lower_ = "xy";
  } else {
    for (int i = 0; i < rank; ++i) lower_.push_back(static_cast<char>('a' + i));
  }
}

char Alphabet::symbol(Letter c) const {
  const int gen = c >> 1;
  if (gen >= rank_) throw std::out_of_range("letter code out of range");
  const char ch = lower_[static_cast<std::size_t>(gen)];
  return (c & 1U) ? static_cast<char>(std::toupper(static_cast<unsigned char>(ch))) : ch;
}

Letter Alphabet::parse(char ch) const {
  const bool upper = std::isupper(static_cast<unsigned char>(ch)) != 0;
  const char lower = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  const auto pos = lower_.find(lower);
  if (!std::isalpha(static_cast<unsigned char>(ch)) || pos == std::string::npos) {
    throw ParseError(std::string("unknown symbol '") + ch + "' for rank " +
                     std::to_string(rank_) + " alphabet");
  }
  return static_cast<Letter>(2 * pos + (upper ? 1 : 0));
}

ReducedWord ReducedWord::from_letters(int rank, const std::vector<Letter>& letters) {
  ReducedWord w(rank);
  w.letters_.reserve(letters.size());
  for (Letter c : letters) {
    if (c >= 2 * rank) throw std::out_of_range("letter code out of range");
    push_reduced(w.letters_, c);
  }
  return w;
}

ReducedWord ReducedWord::parse(int rank, std::string_view text) {
  const Alphabet alphabet(rank);
  ReducedWord w(rank);
  w.letters_.reserve(text.size());
  for (char ch : text) push_reduced(w.letters_, alphabet.parse(ch));
  return w;
}

ReducedWord ReducedWord::from_reduced(int rank, std::vector<Letter> letters) {
  ReducedWord w(rank);
  w.letters_ = std::move(letters);
#ifndef NDEBUG
  for (std::size_t i = 1; i < w.letters_.size(); ++i) {
    assert(w.letters_[i] != inverse_letter(w.letters_[i - 1]));
  }
#endif
  return w;
}

ReducedWord ReducedWord::prefix(std::size_t n) const {
  ReducedWord w(rank_);
  w.letters_.assign(letters_.begin(),
                    letters_.begin() + static_cast<std::ptrdiff_t>(std::min(n, letters_.size())));
  return w;
}

ReducedWord ReducedWord::suffix_from(std::size_t n) const {
  ReducedWord w(rank_);
  if (n < letters_.size()) {
    w.letters_.assign(letters_.begin() + static_cast<std::ptrdiff_t>(n), letters_.end());
  }
  return w;
}

std::string ReducedWord::str() const {
  const Alphabet alphabet(rank_);
  std::string out;
  out.reserve(letters_.size());
  for (Letter c : letters_) out.push_back(alphabet.symbol(c));
  return out;
}

std::strong_ordering shortlex_compare(const ReducedWord& a, const ReducedWord& b) {
  if (auto c = a.size() <=> b.size(); c != 0) return c;
  return std::lexicographical_compare_three_way(a.letters().begin(), a.letters().end(),
                                                b.letters().begin(), b.letters().end());
}

std::size_t ReducedWordHash::operator()(const ReducedWord& w) const noexcept {
  std::size_t h = 1469598103934665603ULL ^ static_cast<std::size_t>(w.rank());
  for (Letter c : w.letters()) {
    h ^= c + 1U;
    h *= 1099511628211ULL;
  }
  return h;
}

ReducedWord normalize(int rank, std::string_view raw) { return ReducedWord::parse(rank, raw); }

ReducedWord inverse(const ReducedWord& w) {
  std::vector<Letter> out(w.letters().rbegin(), w.letters().rend());
  for (auto& c : out) c = inverse_letter(c);
  return ReducedWord::from_reduced(w.rank(), std::move(out));
}

ReducedWord product(const ReducedWord& u, const ReducedWord& v) {
  check_same_rank(u, v);
  const auto& a = u.letters();
  const auto& b = v.letters();
  std::size_t cancel = 0;
  while (cancel < a.size() && cancel < b.size() &&
         a[a.size() - 1 - cancel] == inverse_letter(b[cancel])) {
    ++cancel;
  }
  std::vector<Letter> out;
  out.reserve(a.size() + b.size() - 2 * cancel);
  out.insert(out.end(), a.begin(), a.end() - static_cast<std::ptrdiff_t>(cancel));
  out.insert(out.end(), b.begin() + static_cast<std::ptrdiff_t>(cancel), b.end());
  return ReducedWord::from_reduced(u.rank(), std::move(out));
}

ReducedWord power(const ReducedWord& w, long long n) {
  if (n < 0) return power(inverse(w), -n);
  if (n == 0 || w.is_identity()) return ReducedWord(w.rank());
  // w^n = c (core^n) c^-1, so the reduced form is built without repeated products.
  const auto [core, conj] = cyclic_reduce(w);
  std::vector<Letter> out(conj.letters());
  out.reserve(conj.size() * 2 + core.size() * static_cast<std::size_t>(n));
  for (long long i = 0; i < n; ++i) {
    out.insert(out.end(), core.letters().begin(), core.letters().end());
  }
  const auto tail = inverse(conj);
  out.insert(out.end(), tail.letters().begin(), tail.letters().end());
  return ReducedWord::from_reduced(w.rank(), std::move(out));
}

ReducedWord conjugate_by(const ReducedWord& g, const ReducedWord& w) {
  return product(product(g, w), inverse(g));
}

int common_prefix_length(const ReducedWord& u, const ReducedWord& v) {
  check_same_rank(u, v);
  const auto n = std::min(u.size(), v.size());
  std::size_t i = 0;
  while (i < n && u[i] == v[i]) ++i;
  return static_cast<int>(i);
}

int distance(const ReducedWord& u, const ReducedWord& v) {
  const int lcp = common_prefix_length(u, v);
  return u.length() + v.length() - 2 * lcp;
}

std::string HalfInteger::str() const {
  if (is_integer()) return std::to_string(doubled / 2);
  const long long whole = doubled / 2;
  std::string s = (doubled < 0 && whole == 0) ? "-0" : std::to_string(whole);
  return s + ".5";
}

HalfInteger gromov_product(const ReducedWord& x, const ReducedWord& y, const ReducedWord& w) {
  check_same_rank(x, y);
  check_same_rank(x, w);
  return {static_cast<long long>(distance(x, w)) + distance(y, w) - distance(x, y)};
}

GeodesicPath geodesic(const ReducedWord& u, const ReducedWord& v) {
  const int lcp = common_prefix_length(u, v);
  GeodesicPath path;
  path.vertices.reserve(static_cast<std::size_t>(u.length() + v.length() - 2 * lcp + 1));
  for (int i = u.length(); i >= lcp; --i) path.vertices.push_back(u.prefix(static_cast<std::size_t>(i)));
  for (int i = lcp + 1; i <= v.length(); ++i) path.vertices.push_back(v.prefix(static_cast<std::size_t>(i)));
  return path;
}

long long sphere_size(int rank, int radius) {
  if (radius == 0) return 1;
  long long s = 2LL * rank;
  for (int m = 1; m < radius; ++m) s *= (2LL * rank - 1);
  return s;
}

long long ball_size(int rank, int radius) {
  long long total = 0;
  for (int m = 0; m <= radius; ++m) total += sphere_size(rank, m);
  return total;
}

BallEnumerator::BallEnumerator(int rank, int radius, int min_length)
    : rank_(rank), radius_(radius), word_(rank) {
  (void)Alphabet(rank);
  if (radius < 0 || min_length > radius) {
    done_ = true;
    return;
  }
  if (!first_of_length(std::max(0, min_length))) done_ = true;
}

bool BallEnumerator::first_of_length(int length) {
  if (length > radius_) return false;
  buf_.assign(static_cast<std::size_t>(length), 0);
  // Least reduced word: all letters code 0 (x x x ...).
  word_ = ReducedWord::from_reduced(rank_, buf_);
  return true;
}

bool BallEnumerator::increment() {
  const int alphabet = 2 * rank_;
  int i = static_cast<int>(buf_.size()) - 1;
  while (i >= 0) {
    const auto prev = i > 0 ? std::optional<Letter>(buf_[static_cast<std::size_t>(i - 1)])
                            : std::nullopt;
    int next = buf_[static_cast<std::size_t>(i)] + 1;
    if (prev && next == inverse_letter(*prev)) ++next;
    if (next < alphabet) {
      buf_[static_cast<std::size_t>(i)] = static_cast<Letter>(next);
      for (std::size_t j = static_cast<std::size_t>(i) + 1; j < buf_.size(); ++j) {
        // Least code allowed after buf_[j-1].
        buf_[j] = (buf_[j - 1] == 1) ? 1 : 0;
      }
      return true;
    }
    --i;
  }
  return false;
}

void BallEnumerator::advance() {
  if (done_) return;
  if (!increment()) {
    if (!first_of_length(static_cast<int>(buf_.size()) + 1)) {
      done_ = true;
      return;
    }
    return;
  }
  word_ = ReducedWord::from_reduced(rank_, buf_);
}

CyclicReduction cyclic_reduce(const ReducedWord& w) {
  const auto& a = w.letters();
  std::size_t lo = 0;
  std::size_t hi = a.size();
  while (hi - lo >= 2 && a[lo] == inverse_letter(a[hi - 1])) {
    ++lo;
    --hi;
  }
  CyclicReduction out;
  out.core = ReducedWord::from_reduced(
      w.rank(), std::vector<Letter>(a.begin() + static_cast<std::ptrdiff_t>(lo),
                                    a.begin() + static_cast<std::ptrdiff_t>(hi)));
  out.conjugator = w.prefix(lo);
  return out;
}

std::vector<ReducedWord> cyclic_rotations(const ReducedWord& core) {
  std::vector<ReducedWord> out;
  const auto& a = core.letters();
  for (std::size_t s = 0; s < std::max<std::size_t>(1, a.size()); ++s) {
    std::vector<Letter> r(a.begin() + static_cast<std::ptrdiff_t>(s), a.end());
    r.insert(r.end(), a.begin(), a.begin() + static_cast<std::ptrdiff_t>(s));
    out.push_back(ReducedWord::from_reduced(core.rank(), std::move(r)));
  }
  std::sort(out.begin(), out.end(), ShortlexLess{});
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool conjugate_test(const ReducedWord& u, const ReducedWord& v) {
  check_same_rank(u, v);
  const auto cu = cyclic_reduce(u).core.letters();
  const auto cv = cyclic_reduce(v).core.letters();
  if (cu.size() != cv.size()) return false;
  if (cu.empty()) return true;
  std::vector<Letter> doubled(cu);
  doubled.insert(doubled.end(), cu.begin(), cu.end());
  return std::search(doubled.begin(), doubled.end(), cv.begin(), cv.end()) != doubled.end();
}

ElementaryData primitive_root(const ReducedWord& g) {
  if (g.is_identity()) throw std::invalid_argument("no elementary data for 1_G");
  const auto [core, conj] = cyclic_reduce(g);
  const auto& c = core.letters();
  const std::size_t n = c.size();
  std::size_t period = n;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool ok = true;
    for (std::size_t i = p; i < n && ok; ++i) ok = c[i] == c[i - p];
    if (ok) {
      period = p;
      break;
    }
  }
  ElementaryData out;
  out.exponent = static_cast<long long>(n / period);
  out.cyclic_root = core.prefix(period);
  out.conjugator = conj;
  out.root = conjugate_by(conj, out.cyclic_root);
  return out;
}

}  // namespace hypset
