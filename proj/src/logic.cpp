#include "mucalc/logic.hpp"

#include <cctype>

#include "mucalc/error.hpp"

namespace mucalc {

char cond_char(Cond c) {
  switch (c) {
    case Cond::D: return 'D';
    case Cond::T: return 'T';
    case Cond::B: return 'B';
    case Cond::Four: return '4';
    case Cond::Five: return '5';
  }
  return '?';
}

Cond cond_from_char(char c) {
  switch (c) {
    case 'D': return Cond::D;
    case 'T': return Cond::T;
    case 'B': return Cond::B;
    case '4': return Cond::Four;
    case '5': return Cond::Five;
    default: throw Error(std::string("unknown frame condition '") + c + "'");
  }
}

CondSet parse_conds(std::string_view name) {
  std::string s;
  for (char c : name)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw Error("empty logic name");
  if (s == "S4") return parse_conds("T4");
  if (s == "S5") return parse_conds("T45");
  CondSet out;
  std::size_t i = 0;
  if (s[0] == 'K') i = 1;
  if (i == s.size()) return out;
  for (; i < s.size(); ++i) {
    if (s[i] == 'K') throw Error("'K' may only start a logic name: " + std::string(name));
    out = out.with(cond_from_char(s[i]));
  }
  return out;
}

CondSet implied_conds(CondSet c) {
  for (;;) {
    CondSet n = c;
    if (n.has(Cond::T)) n = n.with(Cond::D);
    if (n.has(Cond::B) && n.has(Cond::Five)) n = n.with(Cond::Four);
    if (n.has(Cond::B) && n.has(Cond::Four)) n = n.with(Cond::Five);
    if (n.has(Cond::T) && n.has(Cond::Five)) n = n.with(Cond::B).with(Cond::Four);
    if (n == c) return c;
    c = n;
  }
}

std::string conds_name(CondSet c) {
  std::string s = "K";
  for (Cond x : kAllConds)
    if (c.has(x)) s += cond_char(x);
  return s;
}

CondSet LogicSpec::of(const std::string& agent) const {
  auto it = agents.find(agent);
  return it == agents.end() ? fallback : it->second;
}

bool LogicSpec::any(Cond c) const {
  if (fallback.has(c)) return true;
  for (const auto& [a, cs] : agents)
    if (cs.has(c)) return true;
  return false;
}

LogicSpec parse_logic(std::string_view text) {
  LogicSpec spec;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find_first_of(";,", start);
    if (end == std::string_view::npos) end = text.size();
    std::string item(text.substr(start, end - start));
    start = end + 1;
    std::string t;
    for (char c : item)
      if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) {
      if (end == text.size()) break;
      continue;
    }
    auto eq = t.find('=');
    if (eq == std::string::npos || eq == 0)
      throw Error("logic entry must look like agent=NAME: '" + item + "'");
    std::string agent = t.substr(0, eq);
    CondSet c = parse_conds(t.substr(eq + 1));
    if (agent == "*") {
      spec.fallback = c;
    } else {
      for (char ch : agent)
        if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '_')
          throw Error("bad agent name '" + agent + "'");
      spec.agents[agent] = c;
    }
    if (end == text.size()) break;
  }
  return spec;
}

std::string logic_name(const LogicSpec& s) {
  std::string out;
  for (const auto& [a, c] : s.agents) {
    if (!out.empty()) out += ';';
    out += a + "=" + conds_name(c);
  }
  if (!s.fallback.empty()) {
    if (!out.empty()) out += ';';
    out += "*=" + conds_name(s.fallback);
  }
  return out.empty() ? "*=K" : out;
}

}  // namespace mucalc
