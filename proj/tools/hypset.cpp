// Command-line front end: raw tools plus audits and scenario runs.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "hypset/harness.hpp"
#include "hypset/prefix_trie.hpp"

using namespace hypset;

namespace {

struct Output {
  bool json = false;
  std::string out_file;

  void emit(const std::string& text) const {
    if (out_file.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream f(out_file);
    if (!f) throw std::runtime_error("cannot write '" + out_file + "'");
    f << text;
  }
  void emit(const Json& j) const { emit(json ? j.dump(2) + "\n" : render_text(j)); }
  void emit(const Report& r) const { emit(json ? r.json() : r.text()); }
};

std::vector<ReducedWord> parse_words(int rank, const std::vector<std::string>& items) {
  std::vector<ReducedWord> out;
  for (const auto& item : items) {
    std::stringstream in(item);
    std::string piece;
    while (std::getline(in, piece, ',')) {
      piece.erase(std::remove_if(piece.begin(), piece.end(), ::isspace), piece.end());
      if (piece.empty()) continue;
      out.push_back(piece == "1" ? ReducedWord(rank) : normalize(rank, piece));
    }
  }
  return out;
}

ReducedWord one_word(int rank, const std::string& s) { return s == "1" ? ReducedWord(rank) : normalize(rank, s); }

std::vector<int> parse_radii(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string piece;
  while (std::getline(in, piece, ',')) out.push_back(std::stoi(piece));
  if (out.empty()) throw std::invalid_argument("empty radii list");
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i] <= out[i - 1]) throw std::invalid_argument("radii must be strictly increasing");
  }
  return out;
}

Json cover_json(const CoverVerdict& v) {
  Json j{{"holds", v.holds}, {"c", v.c}, {"radius", v.params.radius}, {"slack", v.params.slack}};
  if (v.holds) j["translates"] = word_list(v.translates);
  if (v.witness) {
    j["witness"] = word_text(*v.witness);
    j["witness_distance"] = v.witness_distance;
  }
  j["max_distance"] = v.max_distance;
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hypset: subsets of free groups, limit sets and audits"};
  app.require_subcommand(1);
  app.fallthrough();
  Output out;
  int rank = 2;
  app.add_flag("--json", out.json, "JSON output");
  app.add_option("--out", out.out_file, "Write output to a file");
  app.add_option("--rank", rank, "Free group rank")->check(CLI::Range(1, Alphabet::kMaxRank));

  // word
  auto* word_cmd = app.add_subcommand("word", "Word operations");
  std::string word_op;
  std::vector<std::string> word_args;
  std::string base = "1";
  word_cmd->add_option("op", word_op, "reduce|product|inverse|distance|gromov|conjugate|root")->required()
      ->check(CLI::IsMember({"reduce", "product", "inverse", "distance", "gromov", "conjugate", "root"}));
  word_cmd->add_option("words", word_args, "Operands");
  word_cmd->add_option("--base", base, "Basepoint for gromov");

  // subgroup
  auto* sub_cmd = app.add_subcommand("subgroup", "Stallings graph of a subgroup");
  std::vector<std::string> gens;
  std::string member_word, intersect_with;
  bool show_graph = false;
  int members_radius = -1;
  sub_cmd->add_option("generators", gens, "Generators (comma or space separated)");
  sub_cmd->add_option("--contains", member_word, "Membership test");
  sub_cmd->add_option("--intersect", intersect_with, "Intersect with <gens>");
  sub_cmd->add_option("--members", members_radius, "List members up to this length");
  sub_cmd->add_flag("--graph", show_graph, "Print the folded graph");

  // set
  auto* set_cmd = app.add_subcommand("set", "Evaluate a set expression");
  std::string set_expr, accepts_word;
  int set_radius = 4;
  bool show_automaton = false;
  set_cmd->add_option("expr", set_expr, "Set expression")->required();
  set_cmd->add_option("--R", set_radius, "Enumeration radius");
  set_cmd->add_option("--accepts", accepts_word, "Membership test");
  set_cmd->add_flag("--automaton", show_automaton, "Print the automaton");

  // limit
  auto* limit_cmd = app.add_subcommand("limit", "Limit-set prefixes");
  std::string limit_expr;
  int depth = 4, limit_radius = 12, slack = 2;
  limit_cmd->add_option("expr", limit_expr, "Set expression")->required();
  limit_cmd->add_option("--depth", depth, "Prefix depth")->check(CLI::PositiveNumber);
  limit_cmd->add_option("--R", limit_radius, "Truncation radius for non-rational sets");
  limit_cmd->add_option("--slack", slack, "Truncation slack");

  // check
  auto* check_cmd = app.add_subcommand("check", "Geometric checks");
  std::string check_kind, set_a, set_b;
  int c = 2, alpha = 2, nu = 0, check_radius = 8;
  check_cmd->add_option("kind", check_kind, "preceq|quasiconvex|quasidense|tame|hull")->required()
      ->check(CLI::IsMember({"preceq", "quasiconvex", "quasidense", "tame", "hull"}));
  check_cmd->add_option("--A", set_a, "Set A");
  check_cmd->add_option("--B", set_b, "Set B");
  check_cmd->add_option("--c", c, "Covering constant");
  check_cmd->add_option("--alpha", alpha, "Quasidensity constant");
  check_cmd->add_option("--nu", nu, "Tameness bound");
  check_cmd->add_option("--R", check_radius, "Radius");
  check_cmd->add_option("--slack", slack, "Slack");

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "Run one audit");
  std::string audit_name, k_text, u_text, radii_text;
  std::vector<std::string> h_texts;
  AuditConfig cfg;
  audit_cmd->add_option("name", audit_name, "Audit")->required()->check(CLI::IsMember(audit_names()));
  audit_cmd->add_option("--K", k_text, "Subgroup K");
  audit_cmd->add_option("--H", h_texts, "Subgroups H_j (repeatable)");
  audit_cmd->add_option("--U", u_text, "Rational set U");
  audit_cmd->add_option("--A", set_a, "Set A");
  audit_cmd->add_option("--B", set_b, "Set B");
  audit_cmd->add_option("--radii", radii_text, "Comma-separated increasing radii");
  audit_cmd->add_option("--slack", cfg.slack, "Slack");
  audit_cmd->add_option("--c", cfg.c, "Covering constant");
  audit_cmd->add_option("--nu", cfg.nu, "Tameness bound");
  audit_cmd->add_option("--depth", cfg.depth, "Limit-prefix depth");
  audit_cmd->add_option("--example", cfg.example, "Example id 1..5");
  audit_cmd->add_option("--n", cfg.example5_n, "Example 5 truncation N");
  audit_cmd->add_option("--budget", cfg.budget, "Node budget");
  audit_cmd->add_flag("--timing", cfg.timing, "Include wall-clock time");

  // run
  auto* run_cmd = app.add_subcommand("run", "Run a scenario file");
  std::string scenario_file;
  bool timing = false;
  run_cmd->add_option("file", scenario_file, "Scenario")->required()->check(CLI::ExistingFile);
  run_cmd->add_flag("--timing", timing, "Include wall-clock time");

  CLI11_PARSE(app, argc, argv);

  try {
    if (word_cmd->parsed()) {
      const auto ws = parse_words(rank, word_args);
      auto need = [&](std::size_t n) {
        if (ws.size() != n) throw std::invalid_argument(word_op + " takes " + std::to_string(n) + " word(s)");
      };
      Json j{{"op", word_op}};
      if (word_op == "reduce") {
        need(1);
        j["result"] = word_text(ws[0]);
      } else if (word_op == "product") {
        ReducedWord p(rank);
        for (const auto& w : ws) p = p * w;
        j["result"] = word_text(p);
      } else if (word_op == "inverse") {
        need(1);
        j["result"] = word_text(inverse(ws[0]));
      } else if (word_op == "distance") {
        need(2);
        j["result"] = distance(ws[0], ws[1]);
      } else if (word_op == "gromov") {
        need(2);
        j["result"] = gromov_product(ws[0], ws[1], one_word(rank, base)).str();
      } else if (word_op == "conjugate") {
        need(2);
        j["result"] = conjugate_test(ws[0], ws[1]);
      } else {
        need(1);
        const auto e = primitive_root(ws[0]);
        j["root"] = word_text(e.root);
        j["exponent"] = e.exponent;
      }
      out.emit(j);
      return 0;
    }
    if (sub_cmd->parsed()) {
      const auto h = SubgroupGraph::build(rank, parse_words(rank, gens));
      Json j{{"basis", word_list(h.free_basis())}, {"vertices", h.vertex_count()}, {"edges", h.edge_count()},
             {"rank", h.subgroup_rank()}};
      const auto idx = index(h);
      j["index"] = idx.index ? Json(*idx.index) : Json("infinite");
      if (!member_word.empty()) j["contains"] = contains(h, one_word(rank, member_word));
      if (!intersect_with.empty()) {
        const auto k = SubgroupGraph::build(rank, parse_words(rank, {intersect_with}));
        j["intersection"] = word_list(intersect(h, k).free_basis());
      }
      if (members_radius >= 0) j["members"] = word_list(subgroup_oracle(h).enumerate(members_radius));
      if (show_graph) j["graph"] = h.serialize();
      out.emit(j);
      return 0;
    }
    if (set_cmd->parsed()) {
      const auto v = parse_set(rank, set_expr);
      Json j{{"set", v.text}, {"rational", v.automaton.has_value()}, {"subgroup", v.subgroup.has_value()}};
      if (v.automaton) j["states"] = v.automaton->state_count();
      j["radius"] = set_radius;
      j["members"] = word_list(v.oracle.enumerate(set_radius));
      if (!accepts_word.empty()) j["accepts"] = v.oracle.contains(one_word(rank, accepts_word));
      if (show_automaton && v.automaton) j["automaton"] = v.automaton->serialize();
      out.emit(j);
      return 0;
    }
    if (limit_cmd->parsed()) {
      const auto v = parse_set(rank, limit_expr);
      const auto l = v.automaton ? limit_prefixes(*v.automaton, depth)
                                 : limit_prefixes(v.oracle, depth, TruncationParams{limit_radius, slack});
      out.emit(Json{{"set", v.text}, {"depth", l.depth}, {"exact", l.exact}, {"prefixes", word_list(l.words)}});
      return 0;
    }
    if (check_cmd->parsed()) {
      const TruncationParams p{check_radius, slack};
      auto need_set = [&](const std::string& text, const char* flag) {
        if (text.empty()) throw std::invalid_argument(std::string("check ") + check_kind + " needs " + flag);
        return parse_set(rank, text);
      };
      Json j{{"check", check_kind}};
      bool ok = true;
      if (check_kind == "preceq") {
        const auto a = need_set(set_a, "--A");
        const auto b = need_set(set_b, "--B");
        const auto v = preceq_check(b.oracle, a.oracle, c, p);
        j["B"] = b.text;
        j["A"] = a.text;
        j.update(cover_json(v));
        ok = v.holds;
      } else if (check_kind == "quasidense") {
        const auto a = need_set(set_a, "--A");
        const auto v = quasidense_check(a.oracle, alpha, p);
        j["A"] = a.text;
        j.update(cover_json(v));
        ok = v.holds;
      } else if (check_kind == "quasiconvex") {
        const auto a = need_set(set_a, "--A");
        const auto q = quasiconvexity_constant(a.oracle, p);
        j["A"] = a.text;
        j["epsilon"] = q.epsilon;
        j["from"] = word_text(q.from);
        j["to"] = word_text(q.to);
        j["point"] = word_text(q.point);
        j["members"] = q.members;
      } else if (check_kind == "tame") {
        const auto a = need_set(set_a, "--A");
        const auto t = tame_check(a.oracle, nu, p);
        j["A"] = a.text;
        j["holds"] = t.tame;
        j["nu"] = nu;
        if (t.witness) {
          j["farthest"] = word_text(*t.witness);
          j["farthest_distance"] = t.witness_distance;
        }
        ok = t.tame;
      } else {
        const auto a = need_set(set_a, "--A");
        const auto l = a.automaton ? limit_prefixes(*a.automaton, check_radius + 1)
                                   : limit_prefixes(a.oracle, check_radius + 1, p);
        const auto h = convex_hull_slice(l, check_radius);
        j["A"] = a.text;
        j["radius"] = h.radius;
        j["vertices"] = word_list(h.vertices);
      }
      out.emit(j);
      return ok ? 0 : 2;
    }
    if (audit_cmd->parsed()) {
      if (!radii_text.empty()) cfg.radii = parse_radii(radii_text);
      auto set_of = [&](const std::string& text, const char* flag) {
        if (text.empty()) throw std::invalid_argument("audit " + audit_name + " needs " + flag);
        return parse_set(rank, text);
      };
      auto sets_of = [&] {
        if (h_texts.empty()) throw std::invalid_argument("audit " + audit_name + " needs --H");
        std::vector<SetValue> out_sets;
        for (const auto& t : h_texts) out_sets.push_back(parse_set(rank, t));
        return out_sets;
      };
      std::optional<Report> r;
      if (audit_name == "theorem1") r = audit_theorem1(set_of(k_text, "--K"), sets_of(), cfg);
      else if (audit_name == "theorem2") r = audit_theorem2(set_of(k_text, "--K"), set_of(u_text, "--U"), cfg);
      else if (audit_name == "theorem4") {
        const auto a = set_of(set_a, "--A");
        if (!a.class_reps) throw std::invalid_argument("theorem4 needs --A \"class(...)\"");
        r = audit_theorem4(*a.class_reps, cfg);
      } else if (audit_name == "example") r = audit_example(cfg);
      else if (audit_name == "prop5") r = audit_prop5(set_of(k_text, "--K"), sets_of(), cfg);
      else if (audit_name == "commeqstab") r = audit_commeqstab(sets_of().front(), cfg);
      else if (audit_name == "result3") r = audit_result3(sets_of().front(), cfg);
      else r = audit_brigid(set_of(set_a, "--A"), set_of(set_b, "--B"), cfg);
      out.emit(*r);
      return exit_code(r->verdict);
    }
    std::ifstream f(scenario_file);
    std::stringstream text;
    text << f.rdbuf();
    auto s = parse_scenario(text.str());
    s.config.timing = timing;
    const auto r = run_scenario(s);
    out.emit(r);
    return exit_code(r.verdict);
  } catch (const SelfCheckFailed& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
