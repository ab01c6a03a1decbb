#include "doctest.h"
#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/oracle.hpp"
#include "mucalc/translate.hpp"

using namespace mucalc;

namespace {

Formula R(const char* s) {
  ParseOptions o;
  o.allow_reserved = true;
  return parse(s, o);
}

bool reparses(Formula g) {
  ParseOptions o;
  o.allow_reserved = true;
  return parse(print(g), o) == rename_binders(g) && is_closed(g);
}

// Both sides decided by the oracle must agree.
void agree(Formula f, const LogicSpec& l1, Formula g, const LogicSpec& l2, std::size_t c1,
           std::size_t c2) {
  OracleResult a = sat_bounded(f, l1, c1);
  OracleResult b = sat_bounded(g, l2, c2);
  INFO(print(f), "  =>  ", print(g));
  if (a.found()) CHECK_FALSE(b.none());
  if (b.found()) CHECK_FALSE(a.none());
}

}  // namespace

TEST_CASE("axioms") {
  CHECK(axiom(Cond::D, "a", prop("p")) == parse("<a> tt"));
  CHECK(axiom(Cond::T, "a", prop("q")) == parse("<a> ~q | q"));
  CHECK(axiom(Cond::B, "a", prop("p")) == disj(negate(parse("<a>[a]p")), prop("p")));
  CHECK(axiom(Cond::Four, "a", prop("p")) == parse("<a>~p | [a][a]p"));
  CHECK(axiom(Cond::Five, "a", prop("p")) == parse("[a]<a>~p | [a]p"));
}

TEST_CASE("onestep examples") {
  CHECK(translate_onestep(prop("p"), {"a"}, Cond::D) == conj(prop("p"), parse("<a>tt")));
  CHECK(translate_onestep(tt(), {}, Cond::T) == conj(tt(), inv_d(tt(), 0, {})));
  CHECK_THROWS_AS(translate_onestep(parse("mu X. [a] X"), {"a"}, Cond::T), Error);
  // depth scales with |f| for 4 and 5
  Formula f = parse("[a] p");
  Formula g = translate_onestep(f, {"a"}, Cond::Four);
  // deepest axiom instance [a][a][a]p has depth 3, plus d = md(f)*|f| = 2
  CHECK(modal_depth(g) == 5);
  CHECK(modal_depth(translate_onestep(f, {"a"}, Cond::T)) == 2 + 1);
}

TEST_CASE("D_mu / T_mu / 4_mu examples") {
  CHECK(translate_D_mu(prop("p"), {"a"}) == R("p & nu _Z0. <a> tt & [a] _Z0"));
  CHECK(translate_D_mu(prop("p"), {}) == R("p & nu _Z0. tt & tt"));
  CHECK(translate_T_mu(parse("[a] p"), {"a"}) == parse("[a] p & p"));
  CHECK(translate_T_mu(prop("p"), {"a"}) == prop("p"));
  CHECK(translate_T_mu(parse("mu X. [a] X"), {"a"}) == parse("mu X. [a] X & X"));
  CHECK(translate_T_mu(parse("<b> p"), {"a"}) == parse("<b> p"));
  CHECK(translate_4_mu(parse("[a] p"), {"a"}) == R("nu _Z0. [a] p & [a] _Z0"));
  CHECK(translate_4_mu(parse("<a> p"), {"a"}) == R("mu _Z0. <a> p | <a> _Z0"));
  CHECK(translate_4_mu(prop("p"), {"a"}) == prop("p"));
}

TEST_CASE("homomorphic on non-modal structure") {
  FormulaGen gen(8);
  for (int i = 0; i < 60; ++i) {
    Formula f = gen.next();
    for (auto t : {translate_T_mu, translate_4_mu}) {
      Formula g = t(f, {"b"});
      if (f.kind() == Kind::And || f.kind() == Kind::Or) CHECK(g.kind() == f.kind());
      if (f.is_literal()) CHECK(g == f);
      if (f.is_fixpoint()) CHECK(g.kind() == f.kind());
      CHECK(reparses(g));
    }
  }
}

TEST_CASE("B_mu shape") {
  Formula g = translate_B_mu(prop("q"), {"a"});
  REQUIRE(g.kind() == Kind::And);
  CHECK(g.left() == prop("q"));
  CHECK(g.right().kind() == Kind::Nu);
  CHECK(reparses(g));
  // props _p appears; no A-diamonds in q so two conjunct families only
  CHECK(props_of(g) == std::vector<std::string>{"_p", "q"});
  CHECK_THROWS_AS(translate_B_mu(parse("mu X. [a] X"), {"a"}), Error);
  CHECK_THROWS_AS(translate_B_mu(R("_p"), {"a"}), Error);
  Formula h = translate_B_mu(parse("<a> p"), {"b"});
  CHECK(h.kind() == Kind::And);
}

TEST_CASE("K_mu markers") {
  auto v = marker_vectors();
  CHECK(marker_next(v[0]) == v[1]);
  CHECK(marker_next(v[1]) == v[2]);
  CHECK(marker_next(v[2]) == v[0]);
  CHECK(translate_K_mu(prop("q"), {"a"}) == prop("q"));
  CHECK_THROWS_AS(translate_K_mu(R("_q & <a> p"), {"a"}), Error);
  Formula g = translate_K_mu(parse("<a> tt"), {"a"});
  CHECK(reparses(g));
  agree(parse("<a> tt"), parse_logic("a=K"), g, parse_logic("a=T"), 2, 2);
  // a vacuous root would make <a>ff satisfiable
  CHECK(sat_bounded(translate_K_mu(parse("<a> ff"), {"a"}), parse_logic("a=T"), 3).none());
}

TEST_CASE("pipeline") {
  Formula f = parse("nu X. [a] X & <a> p");
  CHECK(pipeline(f, parse_logic("a=T"), parse_logic("a=T")) == f);
  CHECK(pipeline(f, parse_logic("a=TB"), parse_logic("a=K")) ==
        translate_B_mu(translate_T_mu(f, {"a"}), {"a"}));
  CHECK_THROWS_AS(pipeline(parse("mu X. [a] X"), parse_logic("a=K5"), parse_logic("a=K")), Error);
  std::vector<PipelineStep> steps;
  pipeline(parse("[a] p"), parse_logic("a=S5"), parse_logic("a=K"), {}, &steps);
  REQUIRE(steps.size() == 3);
  CHECK(steps[0].name == "onestep5{a}");
  CHECK(steps[1].name == "onestep4{a}");
  CHECK(steps[2].name == "onestepT{a}");
  CHECK(pipeline(parse("<a> p"), parse_logic("a=K"), parse_logic("a=DT")) ==
        translate_K_mu(parse("<a> p"), {"a"}));
  CHECK_THROWS_AS(pipeline(parse("<a> p"), parse_logic("a=T"), parse_logic("a=D")), Error);
}

TEST_CASE("small differential sample") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 5;
  FormulaGen gen(31, go);
  for (int i = 0; i < 25; ++i) {
    Formula f = gen.next();
    agree(f, parse_logic("a=T"), translate_T_mu(f, {"a"}), parse_logic("a=K"), 3, 3);
    agree(f, parse_logic("a=D"), translate_D_mu(f, {"a"}), parse_logic("a=K"), 3, 3);
    agree(f, parse_logic("a=K4"), translate_4_mu(f, {"a"}), parse_logic("a=K"), 3, 3);
  }
}

TEST_CASE("output size growth") {
  FormulaGen gen(77);
  for (int i = 0; i < 60; ++i) {
    Formula f = gen.next();
    double n = static_cast<double>(size(f));
    CHECK(size(translate_T_mu(f, {"a", "b"})) <= 4 * n);
    CHECK(size(translate_4_mu(f, {"a", "b"})) <= 5 * n);
    CHECK(size(translate_D_mu(f, {"a", "b"})) <= n + 20);
    CHECK(size(translate_K_mu(f, {"a", "b"})) <= 20 * n + 10);
    if (!has_mu(f)) CHECK(size(translate_B_mu(f, {"a", "b"})) <= 16 * n * n + 60);
  }
  GenOptions rf;
  rf.allow_mu = rf.allow_nu = false;
  FormulaGen g2(78, rf);
  for (int i = 0; i < 60; ++i) {
    Formula f = g2.next();
    double n = static_cast<double>(size(f));
    for (Cond x : kAllConds) CHECK(size(translate_onestep(f, {"a", "b"}, x)) <= 16 * n * n + 60);
  }
}
