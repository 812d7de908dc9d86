#ifndef HYPSET_HARNESS_HPP_
#define HYPSET_HARNESS_HPP_

// Set expressions, scenario files, budgets, self-checking reports and the
// audits built on top of the library.

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "hypset/freewords.hpp"
#include "hypset/geometry.hpp"
#include "hypset/ratsets.hpp"
#include "hypset/set_oracle.hpp"
#include "hypset/stallings.hpp"

namespace hypset {

// ---------------------------------------------------------------------------
// Set expressions
//
//   expr   := term ('|' term)*
//   term   := factor ('.' factor)*
//   factor := atom ['*']              star only applies to a single word
//   atom   := word | '1' | 'G' | '<' words '>' | '{' words '}' | '(' expr ')'
//           | 'class(' words ')' | '@' builtin | '$' actor
//
// Words are letter strings over the rank's alphabet; lists are comma
// separated. Builtins: ex1A ex1B ex3A ex3B ex3C ex5K (ex5K takes an optional
// "(N)", default 8).

struct SetValue {
  SetOracle oracle;
  std::optional<ReducedAutomaton> automaton;
  std::optional<SubgroupGraph> subgroup;  // the value is exactly this subgroup
  std::vector<SubgroupGraph> factors;     // subgroup literals inside the expression
  std::optional<std::vector<ReducedWord>> class_reps;  // value is a union of classes
  std::string text;

  int rank() const { return oracle.rank(); }
};

using ActorTable = std::map<std::string, SetValue>;

/// Throws ParseError (with the column) on malformed input and
/// std::invalid_argument naming the actor for an unknown `$name`.
SetValue parse_set(int rank, std::string_view text, const ActorTable& actors = {});

class UnknownActor : public std::invalid_argument {
 public:
  explicit UnknownActor(const std::string& name)
      : std::invalid_argument("unknown actor '" + name + "'"), name_(name) {}
  const std::string& name() const noexcept { return name_; }

 private:
  std::string name_;
};

// Built-in example sets over F(x, y). Non-rational ones carry exact
// residual hooks and closed-form shortlex enumerators.
SetOracle example1_a();  // { x^n : n >= 0 }
SetOracle example1_b();  // { x^n y^m : 0 <= m <= n }
SetOracle example3_b();  // { x^n y^m : 0 <= m <= n^2 }
SetOracle example3_c();  // { x^-n : n >= 1 }
SetOracle example3_a();  // B ∪ C
/// < x^n y x^-n : 0 <= n <= N >.
SubgroupGraph example5_k(int n);

// ---------------------------------------------------------------------------
// Budgets

class BudgetExhausted : public std::runtime_error {
 public:
  explicit BudgetExhausted(long long limit)
      : std::runtime_error("node budget of " + std::to_string(limit) + " exhausted") {}
};

/// Counts words touched through wrapped oracles.
class Budget {
 public:
  explicit Budget(long long limit) : state_(std::make_shared<State>(State{limit, 0})) {}
  void spend(long long n = 1) const;
  long long used() const { return state_->used; }
  long long limit() const { return state_->limit; }
  SetOracle wrap(const SetOracle& a) const;

 private:
  struct State {
    long long limit;
    long long used;
  };
  std::shared_ptr<State> state_;
};

// ---------------------------------------------------------------------------
// Reports

enum class Verdict { VerifiedAtScale, Refuted, Inconclusive };

std::string to_string(Verdict v);
/// 0 verified, 2 refuted, 3 inconclusive.
int exit_code(Verdict v);

class SelfCheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::ordered_json;

/// Field order is insertion order, so renderings are stable.
class Report {
 public:
  explicit Report(std::string audit);

  Json& body() { return body_; }
  const Json& body() const { return body_; }

  /// Records a witness re-validation. Failures abort finish().
  void check(bool ok, const std::string& what);

  Verdict verdict = Verdict::Inconclusive;
  std::string status;

  /// Appends verdict, status and self-check summary; throws SelfCheckFailed.
  void finish(const Budget& budget, std::optional<double> seconds = std::nullopt);

  std::string text() const;
  std::string json() const;

  std::size_t checks() const { return checks_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  Json body_;
  std::size_t checks_ = 0;
  std::vector<std::string> failures_;
};

/// Indented key: value rendering of a JSON object, in field order.
std::string render_text(const Json& object);

/// Report spelling of a word: the identity is "1".
std::string word_text(const ReducedWord& w);
Json word_list(const std::vector<ReducedWord>& words);

// ---------------------------------------------------------------------------
// Audits

struct AuditConfig {
  std::vector<int> radii{4, 6};  // strictly increasing
  int slack = 2;
  long long budget = 5'000'000;
  int c = 4;            // covering constant for preceq checks
  int nu = 0;           // tameness bound
  int depth = 8;        // limit-prefix depth
  int growth_floor = 1;  // theorem4: eps gains this per 4 units of radius
  int example = 1;
  int example5_n = 0;   // 0: use `depth`
  bool timing = false;

  int max_radius() const { return radii.back(); }
};

Report audit_theorem1(const SetValue& k, const std::vector<SetValue>& hs, const AuditConfig& cfg);
Report audit_theorem2(const SetValue& k, const SetValue& u, const AuditConfig& cfg);
Report audit_theorem4(const std::vector<ReducedWord>& reps, const AuditConfig& cfg);
Report audit_example(const AuditConfig& cfg);
Report audit_prop5(const SetValue& k, const std::vector<SetValue>& hs, const AuditConfig& cfg);
Report audit_commeqstab(const SetValue& h, const AuditConfig& cfg);
Report audit_result3(const SetValue& h, const AuditConfig& cfg);
Report audit_brigid(const SetValue& a, const SetValue& b, const AuditConfig& cfg);

// ---------------------------------------------------------------------------
// Scenarios

struct Scenario {
  int rank = 2;
  std::string audit;
  std::vector<std::pair<std::string, std::string>> actor_texts;  // file order
  ActorTable actors;
  std::map<std::string, std::vector<std::string>> inputs;        // role -> actor names
  AuditConfig config;
};

/// Parses and validates; errors are ParseError "line N: ...".
Scenario parse_scenario(const std::string& text);

/// Runs the scenario's audit and echoes the scenario into the report.
Report run_scenario(const Scenario& s);

/// Audit names accepted by run_scenario, in a stable order.
const std::vector<std::string>& audit_names();

}  // namespace hypset

#endif  // HYPSET_HARNESS_HPP_
