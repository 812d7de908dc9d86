#include <algorithm>
#include <sstream>

#include "hypset/harness.hpp"
#include "text_format.hpp"

namespace hypset {

namespace {

struct Roles {
  std::vector<std::string> single;  // exactly one actor
  std::vector<std::string> many;    // one or more actors
};

const std::map<std::string, Roles>& audit_roles() {
  static const std::map<std::string, Roles> roles = {
      {"theorem1", {{"K"}, {"H"}}},  {"theorem2", {{"K", "U"}, {}}}, {"theorem4", {{"A"}, {}}},
      {"example", {{}, {}}},         {"prop5", {{"K"}, {"H"}}},      {"commeqstab", {{"H"}, {}}},
      {"result3", {{"H"}, {}}},      {"brigid", {{"A", "B"}, {}}},
  };
  return roles;
}

[[noreturn]] void fail(int line, const std::string& what) {
  throw ParseError("line " + std::to_string(line) + ": " + what);
}

int to_int(int line, const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(value, &used);
    if (used != value.size() || v < 0 || v > 1'000'000'000) throw std::invalid_argument(value);
    return static_cast<int>(v);
  } catch (const std::exception&) {
    fail(line, "'" + key + "' needs a non-negative integer, got '" + value + "'");
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::stringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& audit_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, roles] : audit_roles()) out.push_back(name);
    return out;
  }();
  return names;
}

Scenario parse_scenario(const std::string& text) {
  Scenario s;
  std::string section;
  std::map<std::string, int> input_lines;
  bool saw_rank = false;
  bool saw_actor = false;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const auto content = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (content.empty()) continue;
    if (content.front() == '[') {
      if (content.back() != ']') fail(line, "unterminated section header");
      section = trim(content.substr(1, content.size() - 2));
      if (section != "actors" && section != "inputs" && section != "schedule" && section != "params") {
        fail(line, "unknown section '" + section + "'");
      }
      continue;
    }
    if (section == "actors") {
      const auto eq = content.find('=');
      if (eq == std::string::npos) fail(line, "actor lines look like 'name = expression'");
      const auto name = trim(content.substr(0, eq));
      const auto expr = trim(content.substr(eq + 1));
      if (name.empty() || !std::all_of(name.begin(), name.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; })) {
        fail(line, "bad actor name '" + name + "'");
      }
      if (s.actors.count(name)) fail(line, "actor '" + name + "' defined twice");
      try {
        s.actors.emplace(name, parse_set(s.rank, expr, s.actors));
      } catch (const UnknownActor& e) {
        fail(line, e.what());
      } catch (const std::exception& e) {
        fail(line, "actor '" + name + "': " + e.what());
      }
      s.actor_texts.emplace_back(name, expr);
      saw_actor = true;
      continue;
    }
    const auto colon = content.find(':');
    if (colon == std::string::npos) fail(line, "expected 'key: value'");
    const auto key = trim(content.substr(0, colon));
    const auto value = trim(content.substr(colon + 1));
    if (section.empty()) {
      if (key == "rank") {
        if (saw_actor) fail(line, "rank must precede the actors");
        s.rank = to_int(line, key, value);
        if (s.rank < 1 || s.rank > Alphabet::kMaxRank) fail(line, "rank out of range");
        saw_rank = true;
      } else if (key == "audit") {
        if (!audit_roles().count(value)) fail(line, "unknown audit '" + value + "'");
        s.audit = value;
      } else {
        fail(line, "unknown key '" + key + "'");
      }
    } else if (section == "inputs") {
      const auto names = split_list(value);
      if (names.empty()) fail(line, "input '" + key + "' names no actor");
      for (const auto& n : names) {
        if (!s.actors.count(n)) fail(line, "unknown actor '" + n + "'");
      }
      s.inputs[key] = names;
      input_lines[key] = line;
    } else if (section == "schedule") {
      if (key == "radii") {
        s.config.radii.clear();
        for (const auto& item : split_list(value)) s.config.radii.push_back(to_int(line, key, item));
        if (s.config.radii.empty()) fail(line, "radii must not be empty");
        for (std::size_t i = 1; i < s.config.radii.size(); ++i) {
          if (s.config.radii[i] <= s.config.radii[i - 1]) fail(line, "radii must be strictly increasing");
        }
      } else if (key == "slack") {
        s.config.slack = to_int(line, key, value);
      } else {
        fail(line, "unknown schedule key '" + key + "'");
      }
    } else {
      if (key == "c") s.config.c = to_int(line, key, value);
      else if (key == "nu") s.config.nu = to_int(line, key, value);
      else if (key == "depth") s.config.depth = std::max(1, to_int(line, key, value));
      else if (key == "growth_floor") s.config.growth_floor = to_int(line, key, value);
      else if (key == "example") s.config.example = to_int(line, key, value);
      else if (key == "n") s.config.example5_n = to_int(line, key, value);
      else if (key == "budget") s.config.budget = to_int(line, key, value);
      else fail(line, "unknown parameter '" + key + "'");
    }
  }
  (void)saw_rank;
  if (s.audit.empty()) fail(line, "missing 'audit:'");
  const auto& roles = audit_roles().at(s.audit);
  for (const auto& [role, names] : s.inputs) {
    const bool single = std::count(roles.single.begin(), roles.single.end(), role) > 0;
    const bool many = std::count(roles.many.begin(), roles.many.end(), role) > 0;
    if (!single && !many) fail(input_lines[role], "audit '" + s.audit + "' takes no input '" + role + "'");
    if (single && names.size() != 1) fail(input_lines[role], "input '" + role + "' takes exactly one actor");
  }
  for (const auto& role : roles.single) {
    if (!s.inputs.count(role)) fail(line, "audit '" + s.audit + "' needs input '" + role + "'");
  }
  for (const auto& role : roles.many) {
    if (!s.inputs.count(role)) fail(line, "audit '" + s.audit + "' needs input '" + role + "'");
  }
  return s;
}

Report run_scenario(const Scenario& s) {
  auto one = [&](const std::string& role) -> const SetValue& { return s.actors.at(s.inputs.at(role).front()); };
  auto many = [&](const std::string& role) {
    std::vector<SetValue> out;
    for (const auto& n : s.inputs.at(role)) out.push_back(s.actors.at(n));
    return out;
  };
  std::optional<Report> r;
  if (s.audit == "theorem1") {
    r = audit_theorem1(one("K"), many("H"), s.config);
  } else if (s.audit == "theorem2") {
    r = audit_theorem2(one("K"), one("U"), s.config);
  } else if (s.audit == "theorem4") {
    const auto& a = one("A");
    if (!a.class_reps) throw std::invalid_argument("theorem4 needs A = class(...), got '" + a.text + "'");
    r = audit_theorem4(*a.class_reps, s.config);
  } else if (s.audit == "example") {
    r = audit_example(s.config);
  } else if (s.audit == "prop5") {
    r = audit_prop5(one("K"), many("H"), s.config);
  } else if (s.audit == "commeqstab") {
    r = audit_commeqstab(one("H"), s.config);
  } else if (s.audit == "result3") {
    r = audit_result3(one("H"), s.config);
  } else {
    r = audit_brigid(one("A"), one("B"), s.config);
  }
  // Echo the scenario right after the audit name.
  Json echo{{"rank", s.rank}};
  Json actors = Json::object();
  for (const auto& [name, text] : s.actor_texts) actors[name] = text;
  echo["actors"] = actors;
  Json inputs = Json::object();
  for (const auto& [role, names] : s.inputs) inputs[role] = names;
  echo["inputs"] = inputs;
  Json body = Json::object();
  for (const auto& [key, value] : r->body().items()) {
    body[key] = value;
    if (key == "audit") body["scenario"] = echo;
  }
  r->body() = std::move(body);
  return *r;
}

}  // namespace hypset
