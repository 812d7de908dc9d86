#ifndef HYPSET_GEOMETRY_HPP_
#define HYPSET_GEOMETRY_HPP_

// Radius-truncated coarse geometry in F_k: quasiconvexity constants,
// Hausdorff distance, the covering preorder, quasidensity, and checkers for
// quasigeodesics, broken lines, conjugation witnesses and four-point delta.
//
// Every asymptotic relation is reported AT an observation radius R: points are
// drawn from ball(R) and their witnesses from ball(R + slack).

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "hypset/freewords.hpp"
#include "hypset/prefix_trie.hpp"
#include "hypset/set_oracle.hpp"

namespace hypset {

class DegenerateSet : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class PreconditionFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TruncationParams {
  int radius = 8;
  int slack = 2;

  /// slack = c + epsilon + 2 (c: covering constant, epsilon: measured qc constant).
  static int default_slack(int c, int epsilon) { return c + epsilon + 2; }
};

struct QcEstimate {
  int epsilon = 0;
  // The pair whose geodesic carries the farthest point, and that point.
  ReducedWord from;
  ReducedWord to;
  ReducedWord point;
  TruncationParams params;
  std::size_t members = 0;
};

/// Exact maximum, over pairs in A ∩ ball(R), of the distance from a geodesic
/// vertex to A ∩ ball(R + slack). Throws DegenerateSet with fewer than two
/// members.
QcEstimate quasiconvexity_constant(const SetOracle& a, const TruncationParams& p);

struct HausdorffResult {
  bool bounded = true;  // false: some point found no witness within slack
  int value = 0;        // largest measured point-to-set distance
  ReducedWord witness;  // point realizing `value`
  bool witness_in_first = true;
  TruncationParams params;
};

HausdorffResult hausdorff_truncated(const SetOracle& a, const SetOracle& b,
                                    const TruncationParams& p);

/// d(w, S) for a point and the members of S within `radius`; -1 if S∩ball is empty.
int distance_to_set(const ReducedWord& w, const SetOracle& s, int radius);

struct CoverVerdict {
  bool holds = false;
  int c = 0;
  std::vector<ReducedWord> translates;  // covering x_i with |x_i| <= c when holds
  std::optional<ReducedWord> witness;   // shortlex-least uncovered point otherwise
  int witness_distance = 0;
  int max_distance = 0;                 // largest point-to-set distance seen
  TruncationParams params;
};

/// B ≼ A at constant c: B ∩ ball(R) ⊆ O_c(A ∩ ball(R + slack)). When A ∩ ball(R + slack)
/// is too large to store, A is probed by membership around each point and
/// distances beyond c + min(slack, 2) are reported as that bound plus one.
CoverVerdict preceq_check(const SetOracle& b, const SetOracle& a, int c,
                          const TruncationParams& p);

/// ball(R) ⊆ O_alpha(Q ∩ ball(R + slack)).
CoverVerdict quasidense_check(const SetOracle& q, int alpha, const TruncationParams& p);

/// Exact non-negative rational used for quasigeodesic constants.
struct Ratio {
  long long num = 1;
  long long den = 1;
};

struct QuasigeodesicVerdict {
  bool holds = true;
  // Subpath [begin, end] minimizing d(p-, p+) - lambda * ||p||.
  std::size_t begin = 0;
  std::size_t end = 0;
  int worst_distance = 0;
  int worst_length = 0;
};

/// lambda * ||p|| - c <= d(p-, p+) over every subpath. Throws on non-unit steps.
QuasigeodesicVerdict quasigeodesic_check(std::span<const ReducedWord> path, Ratio lambda,
                                         Ratio c);

/// Vertex path spelling `w` from the identity.
std::vector<ReducedWord> path_of_word(int rank, const std::vector<Letter>& letters);

struct BrokenLineVerdict {
  bool hypotheses_hold = false;
  std::string failed_hypothesis;  // empty when they hold
  bool neighborhood_holds = false;   // broken line inside O_{2 C0}([X0, Xn])
  bool length_holds = false;         // d(X0, Xn) >= ||p|| / 2
  int max_deviation = 0;             // max distance of a broken-line vertex to [X0, Xn]
  int total_length = 0;              // ||p||
  int endpoint_distance = 0;         // d(X0, Xn)
  HalfInteger max_corner;            // largest corner Gromov product
  int min_segment = 0;
};

BrokenLineVerdict broken_line_check(std::span<const ReducedWord> corners, int c0, int c1);

/// Distance from v to the geodesic [u, w]; in a tree this is (u|w)_v.
int distance_to_geodesic(const ReducedWord& v, const ReducedWord& u, const ReducedWord& w);

struct ConjWitness {
  ReducedWord r;
  ReducedWord a;  // g = a r b^-1
  ReducedWord b;
  int bound = 0;  // 4 delta + 2 eps + 2 kappa with delta = 0
  int kappa = 0;
  int epsilon = 0;
  int shared = 0;  // members counted by the infinite-intersection proxy
};

struct ConjOptions {
  int threshold = 3;  // distinct shared members of length >= R/2
};

/// Minimal r with g in A r A^-1, searching a, b in A ∩ ball(R). Throws
/// PreconditionFailed("intersection too small at this radius") when
/// A ∩ gAg^-1 ∩ ball(R) has fewer than `threshold` long members.
ConjWitness conj_witness(const SetOracle& a, const ReducedWord& g, int epsilon,
                         const TruncationParams& p, const ConjOptions& options = {});

/// Least delta making (x|y)_w >= min{(x|z)_w, (y|z)_w} - delta hold on every
/// sampled quadruple under every role assignment. `dist(i, j)` gives distances
/// between point ids. Throws std::invalid_argument on a metric-axiom violation.
double delta_four_point(std::span<const std::array<int, 4>> sample,
                        const std::function<double(int, int)>& dist);

/// Exact integer version for words.
HalfInteger delta_four_point_words(std::span<const std::array<ReducedWord, 4>> sample);

/// Largest d(O, O') over equidistant pairs on two sides of the geodesic
/// triangle abc (0 for a tree).
int triangle_thinness(const ReducedWord& a, const ReducedWord& b, const ReducedWord& c);

}  // namespace hypset

#endif  // HYPSET_GEOMETRY_HPP_
