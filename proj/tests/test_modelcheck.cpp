#include "doctest.h"
#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/oracle.hpp"

using namespace mucalc;

namespace {

KripkeModel chain_st() {
  KripkeModel m;
  m.add_state("s");
  m.add_state("t");
  m.add_edge("a", 0, 1);
  m.set_prop("p", 1);
  return m;
}

KripkeModel single(bool loop) {
  KripkeModel m;
  m.add_state("s");
  m.add_agent("a");
  if (loop) m.add_edge("a", 0, 0);
  return m;
}

StateSet all(std::size_t n) {
  StateSet s(n);
  s.set();
  return s;
}

}  // namespace

TEST_CASE("eval examples") {
  KripkeModel m = chain_st();
  CHECK(eval(m, tt()) == all(2));
  StateSet s(2);
  s.set(0);
  CHECK(eval(m, parse("<a> p")) == s);
  CHECK(eval(single(true), parse("mu X. [a] X")).none());
  CHECK(eval(single(false), parse("mu X. [a] X")).all());
}

TEST_CASE("check examples") {
  CHECK(check({chain_st(), 1}, tt()));
  KripkeModel m;
  m.add_state("s");
  m.add_state("t");
  m.add_edge("a", 0, 1);
  m.set_prop("p", 0);
  m.set_prop("p", 1);
  CHECK(check({m, 0}, parse("(p & <a>p) & mu X.(~p | [a]X)")));
  CHECK_FALSE(check({single(true), 0}, parse("mu X. [a] X")));
  ParseOptions open;
  open.allow_open = true;
  CHECK_THROWS_AS(eval(m, parse("[a] X", open)), Error);
  Environment env{{"X", StateSet(2, 2)}};
  CHECK(eval(m, parse("<a> X", open), env).test(0));
}

TEST_CASE("iteration equals subset semantics on random models") {
  std::mt19937_64 rng(11);
  GenOptions go;
  go.agents = {"a"};
  go.props = {"p"};
  go.max_size = 7;
  FormulaGen gen(3, go);
  for (int i = 0; i < 200; ++i) {
    Formula f = gen.next();
    PointedModel pm = random_model(rng, 1 + i % 4, {"a"}, {"p"});
    CHECK_MESSAGE(eval(pm.model, f) == eval_by_subsets(pm.model, f), print(f));
  }
}

TEST_CASE("negate complements on models up to 4 states") {
  std::mt19937_64 rng(5);
  FormulaGen gen(17);
  for (int i = 0; i < 300; ++i) {
    Formula f = gen.next();
    PointedModel pm = random_model(rng, 1 + i % 4, {"a", "b"}, {"p", "q"});
    StateSet e = eval(pm.model, f);
    CHECK_MESSAGE(eval(pm.model, negate(f)) == ~e, print(f));
  }
  // the worked example
  for (bool loop : {false, true}) {
    KripkeModel m = single(loop);
    CHECK(eval(m, parse("nu X. <a> X")) == ~eval(m, parse("mu X. [a] X")));
  }
}

TEST_CASE("monotonicity in the environment") {
  std::mt19937_64 rng(23);
  ParseOptions open;
  open.allow_open = true;
  std::vector<Formula> fs{parse("[a] X | p", open), parse("mu Y. X | <a> Y", open),
                          parse("nu Y. (X & [a] Y) | <b> X", open), parse("<a>(X & ~p)", open)};
  for (int i = 0; i < 100; ++i) {
    PointedModel pm = random_model(rng, 4, {"a", "b"}, {"p"});
    std::size_t n = pm.model.size();
    StateSet small(n, rng() % 16), big = small;
    big |= StateSet(n, rng() % 16);
    for (Formula f : fs)
      CHECK(eval(pm.model, f, {{"X", small}}).is_subset_of(eval(pm.model, f, {{"X", big}})));
  }
}

TEST_CASE("inv matches reachability") {
  std::mt19937_64 rng(29);
  for (int i = 0; i < 100; ++i) {
    PointedModel pm = random_model(rng, 1 + i % 5, {"a", "b"}, {"p"});
    const KripkeModel& m = pm.model;
    std::size_t n = m.size();
    StateSet got = eval(m, inv(prop("p"), {"a", "b"}));
    for (std::size_t s = 0; s < n; ++s) {
      StateSet seen(n), frontier(n);
      seen.set(s);
      frontier.set(s);
      while (frontier.any()) {
        StateSet next(n);
        for (auto u = frontier.find_first(); u != StateSet::npos; u = frontier.find_next(u))
          next |= m.succ("a")[u] | m.succ("b")[u];
        next -= seen;
        seen |= next;
        frontier = next;
      }
      CHECK(got.test(s) == seen.is_subset_of(m.prop_set("p")));
    }
  }
}
