#include <set>

#include "doctest.h"
#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/oracle.hpp"

using namespace mucalc;

namespace {

// Independent reference: plain enumeration of all models, least n first.
std::optional<std::size_t> brute_min(Formula f, const LogicSpec& spec, std::size_t cap) {
  auto agents = agents_of(f);
  auto props = props_of(f);
  for (std::size_t n = 1; n <= cap; ++n) {
    bool found = false;
    enumerate_models(n, agents, props, spec, [&](const KripkeModel& m) {
      if (eval(m, f).any()) found = true;
      return !found;
    });
    if (found) return n;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("sat_bounded examples") {
  Formula f = parse("mu X. [a] X");
  OracleResult k = sat_bounded(f, parse_logic("a=K"), 1);
  REQUIRE(k.found());
  CHECK(k.n_states == 1);
  CHECK(k.witness.model.edges("a").empty());
  OracleResult t = sat_bounded(f, parse_logic("a=T"), 3);
  CHECK(t.none());
  CHECK(t.n_states == 3);
  OracleResult d = sat_bounded(tt(), parse_logic("a=D"), 1);
  REQUIRE(d.found());
  CHECK(d.witness.model.has_edge("a", 0, 0));
  CHECK_THROWS_AS(sat_bounded(tt(), {}, 9), Error);
}

TEST_CASE("oracle agrees with plain enumeration, including minimal size") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 6;
  FormulaGen gen(99, go);
  const char* specs[] = {"a=K", "a=T", "a=D", "a=K4", "a=B", "a=K5", "a=S5", "a=KB4"};
  for (int i = 0; i < 160; ++i) {
    Formula f = gen.next();
    LogicSpec spec = parse_logic(specs[i % 8]);
    auto expect = brute_min(f, spec, 3);
    OracleResult r = sat_bounded(f, spec, 3);
    INFO(print(f), " ", specs[i % 8]);
    REQUIRE(r.status != OracleResult::Status::Budget);
    CHECK(r.found() == expect.has_value());
    if (r.found()) {
      CHECK(r.n_states == *expect);
      CHECK(check(r.witness, f));
      CHECK(satisfies_spec(r.witness.model, spec));
    }
  }
}

TEST_CASE("two-agent agreement") {
  GenOptions go;
  go.max_size = 5;
  FormulaGen gen(4242, go);
  for (int i = 0; i < 40; ++i) {
    Formula f = gen.next();
    LogicSpec spec = parse_logic(i % 2 ? "a=T;b=K4" : "a=D;b=B");
    auto expect = brute_min(f, spec, 2);
    OracleResult r = sat_bounded(f, spec, 2);
    INFO(print(f));
    CHECK(r.found() == expect.has_value());
    if (r.found()) CHECK(r.n_states == *expect);
  }
}

TEST_CASE("generator determinism and shape") {
  FormulaGen a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    Formula x = a.next(), y = b.next();
    CHECK(x == y);
    CHECK(is_closed(x));
    CHECK(size(x) <= 8);
    // round trip through the concrete syntax
    ParseOptions o;
    o.allow_reserved = true;
    CHECK(parse(print(x), o) == x);
  }
  GenOptions rf;
  rf.allow_mu = rf.allow_nu = false;
  FormulaGen g(1, rf);
  for (int i = 0; i < 30; ++i) CHECK(is_recursion_free(g.next()));
  GenOptions nu_only;
  nu_only.allow_mu = false;
  FormulaGen h(2, nu_only);
  for (int i = 0; i < 30; ++i) CHECK_FALSE(has_mu(h.next()));
}

TEST_CASE("shrink keeps the failure") {
  Formula f = parse("(p & <a>(q | [b]p)) & mu X. (~p | [a] X)");
  Formula s = shrink(f, [](Formula g) { return !props_of(g).empty() && props_of(g)[0] == "p" &&
                                                  agents_of(g).size() >= 1; });
  CHECK(tree_size(s) < tree_size(f));
  CHECK(agents_of(s).size() >= 1);
}
