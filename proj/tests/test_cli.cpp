#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mucalc/cli.hpp"
#include "mucalc/formula.hpp"
#include "mucalc/kripke.hpp"
#include "mucalc/modelcheck.hpp"

using namespace mucalc;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run invoke(const std::vector<std::string>& args, const std::string& stdin_text = "") {
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path dir;
  TempDir() {
    dir = fs::temp_directory_path() / ("mucalc_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~TempDir() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string read(const std::string& path) {
  std::ifstream f(path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

const char* kModel = "states: s t u\nrel a: s t ; t u\nval p: t\npoint: s\n";

}  // namespace

TEST_CASE("fmt prints canonically and round-trips") {
  Run r = invoke({"fmt", "mu X.[a]X"});
  CHECK(r.code == cli::kOk);
  CHECK(r.out == "mu X. [a] X\n");
  for (const char* src : {"(p & <a>p) & mu X.(~p | [a]X)", "nu Y. <b> (q | Y) & [a] ff", "tt"}) {
    Run a = invoke({"fmt", src});
    REQUIRE(a.code == cli::kOk);
    std::string text = a.out.substr(0, a.out.size() - 1);
    CHECK(parse(text) == parse(src));
    CHECK(invoke({"fmt", text}).out == a.out);
  }
  CHECK(invoke({"fmt", "-"}, "<b> p\n").out == "<b> p\n");
}

TEST_CASE("exit codes for usage and parse errors") {
  Run bad = invoke({"fmt", "p &"});
  CHECK(bad.code == cli::kUsage);
  CHECK(bad.err.find("error: at") != std::string::npos);
  CHECK(bad.err.find('^') != std::string::npos);
  CHECK(invoke({"fmt", "X"}).code == cli::kUsage);  // free variable
  CHECK(invoke({"fmt", "p", "--bogus"}).code == cli::kUsage);
  CHECK(invoke({"nosuch"}).code == cli::kUsage);
  CHECK(invoke({}).code == cli::kUsage);
  CHECK(invoke({"corpus", "--count", "1"}).code == cli::kUsage);  // --seed is required
  CHECK(invoke({"translate", "p", "--kind", "T", "--from", "a=T", "--to", "a=K"}).code ==
        cli::kUsage);
  CHECK(invoke({"fmt", "_p"}).code == cli::kUsage);
  CHECK(invoke({"fmt", "_p", "--allow-reserved"}).code == cli::kOk);
  Run v = invoke({"--version"});
  CHECK(v.code == cli::kOk);
  CHECK(v.out.find(cli::version()) != std::string::npos);
}

TEST_CASE("sat verdicts and exit codes") {
  Run phi2 = invoke({"sat", "<b>p & mu X.([b]~p | [b]X)", "--logic", "b=K5", "--kappa", "2"});
  CHECK(phi2.code == cli::kFalse);
  CHECK(phi2.out == "UNSAT\n");

  TempDir t;
  Run phi1 = invoke({"sat", "(p & <a>p) & mu X.(~p | [a]X)", "--emit-model", t.path("w.km")});
  CHECK(phi1.code == cli::kOk);
  CHECK(phi1.out.rfind("SAT\n", 0) == 0);
  PointedModel w = parse_model(read(t.path("w.km")));
  CHECK(check(w, parse("(p & <a>p) & mu X.(~p | [a]X)")));

  Run tiny = invoke({"sat", "mu X.<a>X", "--max-nodes", "1"});
  CHECK(tiny.code == cli::kUnknown);
  CHECK(tiny.out.rfind("UNKNOWN\n", 0) == 0);

  Run k4 = invoke({"sat-k4", "[a]p & <a><a>~p", "--logic", "K4"});
  CHECK(k4.code == cli::kFalse);
  Run s4 = invoke({"sat-k4", "<a>p", "--logic", "S4", "--emit-model", t.path("s4.km")});
  CHECK(s4.code == cli::kOk);
  PointedModel m = parse_model(read(t.path("s4.km")));
  CHECK(has_condition(m.model, "a", Cond::T));
  CHECK(has_condition(m.model, "a", Cond::Four));
}

TEST_CASE("mc") {
  TempDir t;
  const std::string m = t.write("m.km", kModel);
  CHECK(invoke({"mc", m, "t", "p"}).out == "true\n");
  CHECK(invoke({"mc", m, "s", "p"}).code == cli::kFalse);
  CHECK(invoke({"mc", m, "<a>p"}).code == cli::kOk);
  CHECK(invoke({"mc", m, "<a><a>~p"}).code == cli::kOk);
  CHECK(invoke({"mc", m, "p", "--all"}).out == "t\n");
  CHECK(invoke({"mc", m, "mu X.[a]X", "--all"}).out == "s t u\n");
  CHECK(invoke({"mc", "-", "u", "[a]ff"}, kModel).code == cli::kOk);
  CHECK(invoke({"mc", m, "zz", "p"}).code == 2);  // runtime errors exit 2 for mc
  CHECK(invoke({"mc", t.path("missing.km"), "p"}).code == 2);
  CHECK(invoke({"mc", m, "p &"}).code == cli::kUsage);
}

TEST_CASE("closure output re-parses and has the conditions") {
  TempDir t;
  const std::string m = t.write("m.km", kModel);
  Run r = invoke({"closure", m, "--logic", "a=T4"});
  REQUIRE(r.code == cli::kOk);
  PointedModel c = parse_model(r.out);
  CHECK(has_condition(c.model, "a", Cond::T));
  CHECK(has_condition(c.model, "a", Cond::Four));
  CHECK(c.model.size() == 3);
  Run b = invoke({"closure", m, "--logic", "a=B"});
  CHECK(has_condition(parse_model(b.out).model, "a", Cond::B));
}

TEST_CASE("bisim") {
  TempDir t;
  const std::string m = t.write("m.km", kModel);
  const std::string dup =
      t.write("d.km", "states: x y y2 z\nrel a: x y ; x y2 ; y z ; y2 z\nval p: y y2\n");
  const std::string loop = t.write("l.km", "states: s\nrel a: s s\n");
  CHECK(invoke({"bisim", m, dup}).out == "bisimilar\n");
  CHECK(invoke({"bisim", m, loop}).code == cli::kFalse);
}

TEST_CASE("translate") {
  CHECK(invoke({"translate", "[a]p", "--kind", "T", "--agents", "a"}).out == "[a] p & p\n");
  CHECK(invoke({"translate", "[a]p", "--remove", "T", "--agents", "a"}).out == "[a] p & p\n");
  Run same = invoke({"translate", "<a>p", "--from", "a=K", "--to", "a=K"});
  CHECK(same.out == "<a> p\n");
  Run s4 = invoke({"translate", "[a]p", "--from", "a=S4", "--to", "a=K"});
  REQUIRE(s4.code == cli::kOk);
  CHECK(is_closed(parse(s4.out.substr(0, s4.out.size() - 1), {.allow_reserved = true})));
  CHECK(invoke({"translate", "mu X.[a]X", "--from", "a=K5", "--to", "a=K"}).code == cli::kUsage);
  CHECK(invoke({"translate", "mu X.[a]X", "--remove", "5", "--agents", "a"}).code == cli::kUsage);
}

TEST_CASE("encode and oracle") {
  TempDir t;
  Run e = invoke({"encode", "<a>p", "--logic", "a=K", "--emit-table", t.path("t.txt")});
  REQUIRE(e.code == cli::kOk);
  Formula g = parse(e.out.substr(0, e.out.size() - 1), {.allow_reserved = true});
  CHECK(is_closed(g));
  const std::string table = read(t.path("t.txt"));
  CHECK(table.find("g_") != std::string::npos);
  CHECK(invoke({"encode", "<a>p", "--logic", "a=K5"}).code == cli::kUsage);

  Run o = invoke({"oracle", "<a>p & [a]~p"});
  CHECK(o.code == cli::kFalse);
  CHECK(o.out.rfind("none(", 0) == 0);
  Run f = invoke({"oracle", "<a>p", "--logic", "a=T", "--max-states", "2"});
  CHECK(f.code == cli::kOk);
  CHECK(f.out.rfind("found(1)", 0) == 0);
  CHECK(check(parse_model(f.out.substr(f.out.find('\n') + 1)), parse("<a>p")));
  CHECK(invoke({"oracle", "<a><a><a>p", "--budget", "1"}).code == cli::kUnknown);
}

TEST_CASE("corpus is deterministic and independent of worker count") {
  const std::vector<std::string> base = {"corpus", "--seed", "11", "--count", "8", "--check", "k4",
                                         "--max-size", "4"};
  auto with = [&](const char* w) {
    auto a = base;
    a.push_back("--workers");
    a.push_back(w);
    return invoke(a);
  };
  Run one = with("1"), three = with("3");
  CHECK(one.code == cli::kOk);
  CHECK(one.out == three.out);
  CHECK(one.out.find("summary: cases=8") != std::string::npos);
  std::size_t lines = 0;
  for (char c : one.out) lines += c == '\n';
  CHECK(lines == 9);
  Run fam = invoke({"corpus", "--seed", "2", "--count", "3", "--family", "T_mu", "--max-size", "3"});
  CHECK(fam.code == cli::kOk);
  CHECK(fam.out.find("contradictions=0") != std::string::npos);
  CHECK(invoke({"corpus", "--seed", "2", "--family", "nope"}).code == cli::kUsage);
}
