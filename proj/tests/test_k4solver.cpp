#include <set>
#include <sstream>

#include "doctest.h"
#include "mucalc/error.hpp"
#include "mucalc/k4solver.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/oracle.hpp"

using namespace mucalc;

namespace {

LogicSpec spec_of(K4Logic l) {
  LogicSpec s;
  s.set("a", k4_conds(l));
  return s;
}

std::vector<std::string> split_prefix(const std::string& p) {
  std::vector<std::string> out;
  if (p == "ε") return out;
  // components are "a<...>" joined by '.', brackets may nest
  int level = 0;
  std::string cur;
  for (char c : p) {
    if (c == '<') ++level;
    if (c == '>') --level;
    if (c == '.' && level == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

TEST_CASE("least fixed point of box") {
  Formula f = parse("mu X.[a]X");
  Verdict k4 = solve_k4(f, K4Logic::K4);
  REQUIRE(k4.sat());
  CHECK(k4.witness.model.size() == 1);
  CHECK(k4.witness.model.edges("a").empty());
  CHECK(check(k4.witness, f));
  CHECK(solve_k4(f, K4Logic::S4).unsat());
  CHECK(solve_k4(f, K4Logic::D4).unsat());
}

TEST_CASE("greatest fixed point of diamond") {
  Formula f = parse("nu X.(p & <a>X)");
  for (K4Logic l : {K4Logic::K4, K4Logic::D4, K4Logic::S4}) {
    Verdict v = solve_k4(f, l);
    REQUIRE(v.sat());
    CHECK(check(v.witness, f));
    CHECK(satisfies_spec(v.witness.model, spec_of(l)));
  }
  OracleResult o = sat_bounded(f, spec_of(K4Logic::K4), 2);
  REQUIRE(o.found());
  CHECK(o.witness.model.size() == 1);
  CHECK(o.witness.model.has_edge("a", 0, 0));
}

TEST_CASE("propositional contradiction") {
  for (K4Logic l : {K4Logic::K4, K4Logic::D4, K4Logic::S4})
    CHECK(solve_k4(parse("p & ~p"), l).unsat());
}

TEST_CASE("transitivity-specific verdicts") {
  // valid in K4 but not in K
  CHECK(solve_k4(parse("[a]p & <a><a>~p"), K4Logic::K4).unsat());
  CHECK(solve_k4(parse("[a]p & ~p"), K4Logic::S4).unsat());
  CHECK(solve_k4(parse("[a]p & ~p"), K4Logic::D4).sat());
  CHECK(solve_k4(parse("[a][a]p"), K4Logic::D4).sat());
  CHECK(solve_k4(parse("[a]ff"), K4Logic::D4).unsat());
  CHECK(solve_k4(parse("[a]ff"), K4Logic::K4).sat());
  // an infinite ascending chain is not needed for nu, forbidden for mu
  CHECK(solve_k4(parse("mu X.<a>X"), K4Logic::K4).unsat());
  CHECK(solve_k4(parse("nu X.<a>X"), K4Logic::K4).sat());
  CHECK(solve_k4(parse("<a>p & [a](mu X.(~p | <a>X))"), K4Logic::K4).sat());
}

TEST_CASE("logic names") {
  CHECK(parse_k4_logic("K4") == K4Logic::K4);
  CHECK(parse_k4_logic("D4") == K4Logic::D4);
  CHECK(parse_k4_logic("S4") == K4Logic::S4);
  CHECK(parse_k4_logic("KT4") == K4Logic::S4);
  CHECK(parse_k4_logic("DT4") == K4Logic::S4);
  CHECK(parse_k4_logic("a=D4") == K4Logic::D4);
  CHECK_THROWS_AS(parse_k4_logic("K5"), Error);
  CHECK_THROWS_AS(parse_k4_logic("S5"), Error);
  CHECK(k4_logic_name(K4Logic::D4) == "D4");
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(solve_k4(parse("<a>p & <b>p"), K4Logic::K4), Error);
  CHECK_NOTHROW(solve_k4(parse("<b>p"), K4Logic::K4));
  CHECK(solve_k4(parse("p"), K4Logic::K4).sat());
}

TEST_CASE("small model bound") {
  CHECK(small_model_bound(std::size_t{1}) == 1);
  CHECK(small_model_bound(std::size_t{2}) == 3);
  CHECK(small_model_bound(std::size_t{3}) == 11);
  CHECK(small_model_bound(parse("p")) == 1);
  std::ostringstream os;
  os << small_model_bound(std::size_t{25});
  CHECK(os.str() == "31022420086661971967999999");  // 2 * 25! - 1
}

TEST_CASE("agreement with the oracle and the tableau") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 8;
  for (K4Logic l : {K4Logic::K4, K4Logic::D4, K4Logic::S4}) {
    FormulaGen gen(4000 + static_cast<int>(l), go);
    const LogicSpec spec = spec_of(l);
    for (int i = 0; i < 200; ++i) {
      Formula f = gen.next();
      K4Stats st;
      Verdict v = solve_k4(f, l, &st);
      INFO(print(f), " ", k4_logic_name(l), " ", verdict_name(v.kind));
      REQUIRE(v.kind != Verdict::Kind::Unknown);
      OracleResult o = sat_bounded(f, spec, 4);
      if (o.found()) CHECK(v.sat());
      TableauConfig cfg;
      cfg.kappa = 4;
      Verdict t = solve(f, spec, cfg);
      if (t.sat()) CHECK(v.sat());
      if (t.unsat()) CHECK(v.unsat());
      if (v.sat()) {
        CHECK(check(v.witness, f));
        CHECK(has_condition(v.witness.model, "a", Cond::Four));
        if (l != K4Logic::K4) CHECK(has_condition(v.witness.model, "a", Cond::D));
        if (l == K4Logic::S4) CHECK(has_condition(v.witness.model, "a", Cond::T));
      }
      CHECK(st.max_depth <= size(f) * std::max<std::size_t>(st.distinct_sets, 1));
    }
  }
}

TEST_CASE("witness prefixes never repeat a step") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 10;
  FormulaGen gen(99, go);
  for (int i = 0; i < 150; ++i) {
    Formula f = gen.next();
    Verdict v = solve_k4(f, static_cast<K4Logic>(i % 3));
    if (!v.sat()) continue;
    REQUIRE(v.state_prefixes.size() == v.witness.model.size());
    for (const auto& p : v.state_prefixes) {
      auto parts = split_prefix(p);
      std::set<std::string> seen(parts.begin(), parts.end());
      INFO(print(f), " ", p);
      CHECK(seen.size() == parts.size());
      CHECK(parts.size() <= size(f));
    }
  }
}
