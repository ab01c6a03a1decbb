#include <cmath>
#include <random>

#include "doctest.h"
#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/muencode.hpp"
#include "mucalc/oracle.hpp"
#include "mucalc/tableau.hpp"

using namespace mucalc;

namespace {

const char* kPhi1 = "(p & <a>p) & mu X.(~p | [a]X)";
const std::vector<std::string> kSuite = {"tt", "p", "p & ~p", "<a>p", "[a]p & <a>q", "mu X.[a]X"};

LogicSpec spec_of(const std::string& conds) {
  LogicSpec s;
  s.set("a", parse_conds(conds));
  return s;
}

EncodeOptions cap(std::size_t n) {
  EncodeOptions o;
  o.graph_cap = n;
  return o;
}

// The graph whose vertex set is exactly the given formulas (first match).
const DepGraph* graph_with(const Encoder& e, const std::vector<std::string>& fs) {
  std::vector<int> phi;
  for (const auto& s : fs) phi.push_back(e.index_of(parse(s)));
  std::sort(phi.begin(), phi.end());
  for (const auto& g : e.graphs())
    if (g.phi == phi) return &g;
  return nullptr;
}

bool f_satisfiable(Formula f, const LogicSpec& spec) {
  TableauConfig c;
  c.kappa = 4;
  Verdict v = solve(f, spec, c);
  REQUIRE(v.kind != Verdict::Kind::Unknown);
  return v.sat();
}

}  // namespace

TEST_CASE("enumerate_graphs examples") {
  {
    Encoder e(parse("p & ~p"), spec_of("K"));
    const int root = e.index_of(e.root());
    for (const auto& g : e.graphs()) CHECK_FALSE(g.has(root));
  }
  {
    Encoder e(parse("tt"), spec_of("K"));
    CHECK(graph_with(e, {"tt"}) != nullptr);
  }
  {
    Encoder e(parse("<a>p"), spec_of("K"));
    const int d = e.index_of(parse("<a>p"));
    int seen = 0;
    for (const auto& g : e.graphs())
      if (g.has(d)) {
        ++seen;
        CHECK((g.label[d] & kOutBot) != 0);
      }
    CHECK(seen > 0);
  }
}

TEST_CASE("graph invariants") {
  for (const std::string lg : {"K", "T", "D", "B", "TB", "K4", "S4"}) {
    Encoder e(parse(kPhi1), spec_of(lg), cap(9));
    std::set<std::string> names;
    for (const auto& g : e.graphs()) {
      CHECK(names.insert(g.name).second);
      CHECK(g.name.rfind("g_", 0) == 0);
      CHECK(e.find_graph(g.name) == &g);
      for (const auto& ex : g.edges)
        for (auto [u, v] : ex) {
          CHECK(g.has(u));
          CHECK(g.has(v));
        }
      for (int i : g.phi) {
        Formula f = e.universe()[i];
        CHECK(f.kind() != Kind::Ff);
        const int n = e.index_of(negate(f));
        if (is_closed(f) && n >= 0) CHECK_FALSE(g.has(n));
      }
    }
  }
}

TEST_CASE("child examples") {
  {
    Encoder e(parse("<a>p"), spec_of("K"));
    const DepGraph* h = graph_with(e, {"<a>p"});
    const DepGraph* g = graph_with(e, {"p"});
    REQUIRE(h);
    REQUIRE(g);
    REQUIRE((g->label[e.index_of(parse("p"))] & kInTop) != 0);
    CHECK(e.child(*h, *g, "a", parse("p")));
    // no boxes in h
    CHECK(e.child(*h, *g, "a", std::nullopt));
    CHECK_FALSE(e.child(*h, *h, "a", parse("p")));
  }
  {
    Encoder e(parse("[a]q & <a>p"), spec_of("K"), cap(5));
    const DepGraph* h = graph_with(e, {"[a]q & <a>p", "[a]q", "<a>p"});
    const DepGraph* g1 = graph_with(e, {"p"});
    const DepGraph* g2 = graph_with(e, {"p", "q"});
    REQUIRE(h);
    REQUIRE(g1);
    REQUIRE(g2);
    CHECK_FALSE(e.child(*h, *g1, "a", parse("p")));
    CHECK(e.child(*h, *g2, "a", parse("p")));
    CHECK_FALSE(e.child(*h, *g1, "a", std::nullopt));
  }
  {
    // backward transfer under B
    Encoder e(parse("[a]p & <a>q"), spec_of("B"), cap(5));
    const DepGraph* h = graph_with(e, {"[a]p & <a>q", "[a]p", "<a>q"});
    const DepGraph* g = graph_with(e, {"q", "p"});
    REQUIRE(h);
    REQUIRE(g);
    CHECK(e.child(*h, *g, "a", parse("q")));
  }
}

TEST_CASE("build_rules examples") {
  {
    OracleResult o = sat_bounded(build_rules(parse("tt"), spec_of("K")), LogicSpec{}, 1);
    REQUIRE(o.found());
    CHECK(o.witness.model.size() == 1);
  }
  {
    Formula f = parse("<a>p");
    Encoder e(f, spec_of("K"));
    Formula r = conj(e.rules(), prop(graph_with(e, {"<a>p"})->name));
    OracleResult o1 = sat_bounded(r, LogicSpec{}, 1);
    CHECK(o1.none());
    OracleResult o2 = sat_bounded(r, LogicSpec{}, 2);
    REQUIRE(o2.found());
    CHECK(o2.witness.model.size() == 2);
    CHECK(e.agents() == std::vector<std::string>{e.agent_name("a", parse("p"))});
    CHECK(agents_of(r) == e.agents());
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS(Encoder(parse("[a]p & <a>q"), spec_of("K"), cap(4)), Error);
  CHECK_NOTHROW(Encoder(parse("[a]p & <a>q"), spec_of("K"), cap(5)));
  CHECK_THROWS_AS(Encoder(parse("<a>p"), spec_of("K5")), Error);
  CHECK_THROWS_AS(Encoder(parse("<a>p"), spec_of("S5")), Error);
  CHECK_THROWS_AS(Encoder(parse("<a>p"), spec_of("KB4")), Error);
  CHECK_THROWS_AS(Encoder(parse("X"), spec_of("K")), Error);
  // refused even for an agent that f never mentions
  LogicSpec s = spec_of("K");
  s.set("b", parse_conds("K5"));
  CHECK_THROWS_AS(Encoder(parse("<a>p"), s), Error);
}

TEST_CASE("contradiction encodes to a literal ff start") {
  Formula r = encode(parse("p & ~p"), spec_of("K"));
  REQUIRE(r.kind() == Kind::And);
  CHECK(r.right() == ff());
  CHECK(sat_bounded(r, LogicSpec{}, 3).none());
}

TEST_CASE("tiny suite: encode preserves satisfiability") {
  for (const std::string lg : {"K", "T", "D"}) {
    for (const auto& s : kSuite) {
      Formula f = parse(s);
      const LogicSpec spec = spec_of(lg);
      Formula r = encode(f, spec, cap(5));
      INFO(s, " under ", lg);
      CHECK(is_closed(r));
      OracleResult o = sat_bounded(r, LogicSpec{}, 3);
      REQUIRE(o.status != OracleResult::Status::Budget);
      CHECK(o.found() == f_satisfiable(f, spec));
      CHECK(o.found() == sat_bounded(f, spec, 3).found());
    }
  }
}

TEST_CASE("exactly one graph per reachable state") {
  for (const std::string lg : {"K", "T", "D", "B"}) {
    for (const auto& s : kSuite) {
      Encoder e(parse(s), spec_of(lg), cap(5));
      Formula r = e.rules();
      for (std::size_t n = 1; n <= 3; ++n) {
        OracleOptions oo;
        oo.node_budget = 200'000;
        OracleResult o = sat_bounded(r, LogicSpec{}, n, oo);
        if (!o.found()) continue;
        PointedModel pm = generated_submodel(o.witness);
        std::vector<StateSet> vals;
        for (const auto& g : e.graphs()) vals.push_back(eval(pm.model, prop(g.name)));
        for (std::size_t w = 0; w < pm.model.size(); ++w) {
          int count = 0;
          for (const auto& v : vals) count += v.test(w) ? 1 : 0;
          INFO(s, " ", lg, " state ", w);
          CHECK(count == 1);
        }
        break;
      }
    }
  }
}

TEST_CASE("fp substitution identity") {
  std::mt19937_64 rng(17);
  for (const std::string lg : {"K", "B", "TB"}) {
    Encoder e(parse("mu X.[a]X"), spec_of(lg));
    REQUIRE(e.universe().size() <= 3);
    REQUIRE(e.least_vars().size() == 1);
    const int n = static_cast<int>(e.universe().size());
    std::vector<std::string> props;
    for (const auto& g : e.graphs()) props.push_back(g.name);
    std::vector<PointedModel> models;
    for (int i = 0; i < 12; ++i) models.push_back(random_model(rng, 1 + i % 4, e.agents(), props, 0.4));
    for (bool need_x : {false, true})
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) {
              const Encoder::Pair t{a, b};
              const Encoder::Pair t2{c, d};
              if (t == t2) continue;
              Formula plain = e.fp(0, t, need_x);
              Formula open = e.fp(0, t, need_x, {t2});
              Formula inner = e.fp(0, t2, need_x);
              const std::string z = e.fp_binder(0, t2, need_x);
              Formula subst = substitute(open, z, inner);
              for (const auto& pm : models) {
                StateSet lhs = eval(pm.model, plain);
                CHECK(lhs == eval(pm.model, subst));
                CHECK(lhs == eval(pm.model, open, {{z, eval(pm.model, inner)}}));
              }
            }
  }
}

TEST_CASE("memo strings stay within their bounds") {
  for (const std::string lg : {"K", "T", "D", "B", "TB", "DB", "K4", "S4"}) {
    for (const std::string s : {"mu X.[a]X", "mu X.(p | <a>X)", "nu Y.mu X.[a](X & Y)",
                                "mu X.(p | [a]<a>X)", "[a]p & <a>q"}) {
      EncodeOptions o = cap(6);
      o.max_excursion_pairs = 10;
      Encoder e(parse(s), spec_of(lg), o);
      e.encode();
      const std::size_t n = e.universe().size();
      INFO(s, " ", lg);
      CHECK(e.stats().max_fp_memo <= n * n + 1);
      CHECK(e.stats().max_ip_memo <= n + 1);
    }
  }
}

TEST_CASE("encode size grows at most exponentially in |sub(f)|") {
  // measured on the suite: log2(size)/|sub| stays below 4
  double worst = 0;
  for (const std::string lg : {"K", "T", "D"})
    for (const auto& s : kSuite) {
      Formula f = parse(s);
      const double n = static_cast<double>(subformulas(f).size());
      const double sz = static_cast<double>(size(encode(f, spec_of(lg), cap(5))));
      worst = std::max(worst, std::log2(sz) / n);
      CHECK(sz <= std::pow(2.0, 4.0 * n));
    }
  MESSAGE("measured c = ", worst);
  // growth is visible: a bigger formula gives a bigger encoding
  CHECK(size(encode(parse("[a]p & <a>q"), spec_of("K"), cap(5))) >
        size(encode(parse("<a>p"), spec_of("K"))));
}

TEST_CASE("branch_to_model") {
  {
    Formula f = parse(kPhi1);
    const LogicSpec spec = spec_of("K");
    Tableau t(f, spec);
    auto b = open_branch(t, 4, 10'000);
    REQUIRE(b);
    Encoder e(f, spec, cap(9));
    PointedModel pm = e.branch_to_model(t, *b);
    CHECK(pm.model.size() == 2);
    CHECK(check(pm, e.rules()));
    CHECK(check(pm, e.encode()));
  }
  {
    Formula f = parse("tt");
    Tableau t(f, spec_of("K"));
    auto b = open_branch(t, 4, 100);
    REQUIRE(b);
    Encoder e(f, spec_of("K"));
    PointedModel pm = e.branch_to_model(t, *b);
    REQUIRE(pm.model.size() == 1);
    DepGraph g = e.branch_to_graph(t, *b, 0);
    CHECK(g.phi == std::vector<int>{e.index_of(f)});
    CHECK(eval(pm.model, prop(g.name)).test(0));
    int true_props = 0;
    for (const auto& h : e.graphs()) true_props += eval(pm.model, prop(h.name)).test(0) ? 1 : 0;
    CHECK(true_props == 1);
  }
  {
    Formula f = parse("p & ~p");
    Tableau t(f, spec_of("K"));
    Branch b = t.start();
    while (!t.is_prop_closed(b)) {
      auto rs = t.applicable_rules(b);
      REQUIRE_FALSE(rs.empty());
      b = t.apply(b, rs.front()).front();
    }
    Encoder e(f, spec_of("K"));
    CHECK_THROWS_AS(e.branch_to_model(t, b), Error);
    CHECK_THROWS_AS(e.branch_to_graph(t, b, 0), Error);
  }
}

TEST_CASE("open branches model the rules") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 6;
  FormulaGen gen(808, go);
  int checked = 0;
  for (int i = 0; i < 60; ++i) {
    Formula f = gen.next();
    const std::string lg = std::vector<std::string>{"K", "T", "D", "B", "K4"}[i % 5];
    const LogicSpec spec = spec_of(lg);
    Tableau t(f, spec);
    auto b = open_branch(t, 4, 20'000);
    if (!b) continue;
    EncodeOptions o = cap(6);
    o.max_excursion_pairs = 16;
    Encoder e(f, spec, o);
    PointedModel pm = e.branch_to_model(t, *b);
    INFO(print(f), " ", lg);
    CHECK(check(pm, e.rules()));
    ++checked;
  }
  CHECK(checked > 20);
}

TEST_CASE("random differential against the tableau") {
  GenOptions go;
  go.agents = {"a"};
  go.props = {"p"};
  go.max_size = 4;
  go.min_size = 2;
  FormulaGen gen(5150, go);
  const std::vector<std::string> logics = {"K", "T", "D", "B", "TB", "DB", "K4", "D4", "S4"};
  int decided = 0;
  for (int i = 0; i < 90; ++i) {
    Formula f = gen.next();
    const LogicSpec spec = spec_of(logics[i % logics.size()]);
    EncodeOptions o = cap(6);
    o.max_excursion_pairs = 10;
    Formula r = encode(f, spec, o);
    OracleOptions oo;
    oo.node_budget = 20'000;
    OracleResult res = sat_bounded(r, LogicSpec{}, 3, oo);
    if (res.status == OracleResult::Status::Budget) continue;
    INFO(print(f), " under ", logics[i % logics.size()]);
    const bool sat = f_satisfiable(f, spec);
    // a found model is a proof; none within 3 states is only evidence
    if (res.found()) CHECK(sat);
    if (res.none() && sat) CHECK(sat_bounded(f, spec, 3).none());
    ++decided;
  }
  CHECK(decided > 60);
}

TEST_CASE("open branches model the whole encoding") {
  GenOptions go;
  go.agents = {"a"};
  go.max_size = 5;
  FormulaGen gen(2024, go);
  const std::vector<std::string> logics = {"K", "T", "D", "B", "TB", "DB", "K4", "S4"};
  int checked = 0;
  for (int i = 0; i < 64; ++i) {
    Formula f = gen.next();
    const std::string lg = logics[i % logics.size()];
    const LogicSpec spec = spec_of(lg);
    Tableau t(f, spec);
    auto b = open_branch(t, 4, 1'500);
    if (!b) continue;
    EncodeOptions o = cap(5);
    o.max_excursion_pairs = 12;
    Encoder e(f, spec, o);
    INFO(print(f), " ", lg);
    CHECK(check(e.branch_to_model(t, *b), e.encode()));
    ++checked;
  }
  CHECK(checked > 30);
  // an unsatisfiable least fixed point leaves no open branch
  Tableau t(parse("mu X.X"), spec_of("K"));
  CHECK_FALSE(open_branch(t, 4, 100));
}
