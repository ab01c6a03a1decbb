#include "mucalc/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mucalc/corpus.hpp"
#include "mucalc/error.hpp"
#include "mucalc/formula.hpp"
#include "mucalc/k4solver.hpp"
#include "mucalc/kripke.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/muencode.hpp"
#include "mucalc/oracle.hpp"
#include "mucalc/tableau.hpp"
#include "mucalc/translate.hpp"

namespace mucalc::cli {

namespace {

// Carries a ParseError together with the text it refers to.
struct SourceError : Error {
  SourceError(const ParseError& e, std::string text)
      : Error(e.what()), pos(e.pos()), source(std::move(text)) {}
  std::size_t pos;
  std::string source;
};

std::string slurp(std::istream& is) {
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  return slurp(f);
}

struct Io {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

// "-" is stdin; anything with a path separator naming a file is read.
std::string input_text(const std::string& arg, bool force_file, Io& io) {
  if (arg == "-") return slurp(io.in);
  if (force_file) return read_file(arg);
  if (arg.find('/') != std::string::npos && std::filesystem::is_regular_file(arg))
    return read_file(arg);
  return arg;
}

struct FormulaArg {
  std::string text;
  bool file = false;
  bool reserved = false;

  void add(CLI::App* c) {
    c->add_option("formula", text, "formula text, a file path, or - for stdin")->required();
    add_flags(c);
  }
  void add_flags(CLI::App* c) {
    c->add_flag("--file", file, "read the formula from a file");
    c->add_flag("--allow-reserved", reserved, "accept identifiers starting with '_'");
  }

  Formula get(Io& io) const {
    std::string src = input_text(text, file, io);
    while (!src.empty() && (src.back() == '\n' || src.back() == '\r')) src.pop_back();
    ParseOptions po;
    po.allow_reserved = reserved;
    try {
      return parse(src, po);
    } catch (const ParseError& e) {
      throw SourceError(e, src);
    }
  }
};

PointedModel model_arg(const std::string& arg, Io& io) {
  std::string text = arg == "-" ? slurp(io.in) : read_file(arg);
  return parse_model(text);
}

void print_verdict(const Verdict& v, Io& io) {
  io.out << verdict_name(v.kind) << "\n";
  if (v.sat()) {
    io.out << print_pointed(v.witness);
    if (!v.state_prefixes.empty()) {
      io.out << "# prefixes:";
      for (std::size_t i = 0; i < v.state_prefixes.size(); ++i)
        io.out << ' ' << v.witness.model.state(i) << '=' << v.state_prefixes[i];
      io.out << "\n";
    }
  } else if (v.kind == Verdict::Kind::Unknown && !v.bound_hit.empty()) {
    io.out << "# bound hit: " << v.bound_hit << "\n";
  }
}

void emit_model(const Verdict& v, const std::string& path) {
  if (path.empty() || !v.sat()) return;
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path);
  f << print_pointed(v.witness);
}

int verdict_code(const Verdict& v) {
  return v.sat() ? kOk : v.unsat() ? kFalse : kUnknown;
}

Formula translate_kind(const std::string& kind, Formula f, const std::vector<std::string>& agents,
                       const std::string& cond) {
  if (kind == "onestep") {
    if (cond.size() != 1) throw Error("--cond takes one of D, T, B, 4, 5");
    return translate_onestep(f, agents, cond_from_char(cond[0]));
  }
  if (kind == "D") return translate_D_mu(f, agents);
  if (kind == "T") return translate_T_mu(f, agents);
  if (kind == "4") return translate_4_mu(f, agents);
  if (kind == "B") return translate_B_mu(f, agents);
  if (kind == "K") return translate_K_mu(f, agents);
  throw Error("unknown translation '" + kind + "' (onestep, D, T, 4, B, K)");
}

}  // namespace

std::string version() { return "mucalc 1.0.0"; }

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
  Io io{in, out, err};
  CLI::App app{"Multi-agent modal mu-calculus over restricted frames", "mucalc"};
  app.set_version_flag("--version", version());
  app.require_subcommand(1);
  std::function<int()> action;
  int runtime_error_code = kUsage;

  // fmt
  FormulaArg fmt_f;
  auto* fmt = app.add_subcommand("fmt", "parse and print a formula in canonical form");
  fmt_f.add(fmt);
  fmt->callback([&] {
    action = [&] {
      out << print(fmt_f.get(io)) << "\n";
      return kOk;
    };
  });

  // mc
  std::string mc_state;
  std::vector<std::string> mc_pos;
  bool mc_all = false;
  FormulaArg mc_f;
  auto* mc = app.add_subcommand("mc", "model check a formula on a model file");
  mc->add_option("args", mc_pos, "<model> [<state>] <formula>")->required()->expected(2, 3);
  mc_f.add_flags(mc);
  auto* o_state = mc->add_option("--state", mc_state, "state to check (default: the model's point)");
  mc->add_flag("--all", mc_all, "print every satisfying state")->excludes(o_state);
  mc->callback([&] {
    if (mc_pos.size() == 3) {
      if (!mc_state.empty() || mc_all)
        throw CLI::ValidationError("mc", "state given twice");
      mc_state = mc_pos[1];
    }
    mc_f.text = mc_pos.back();
    runtime_error_code = kUnknown;
    action = [&] {
      PointedModel pm = model_arg(mc_pos.front(), io);
      Formula f = mc_f.get(io);
      if (!is_closed(f)) throw Error("formula has free variables");
      StateSet s = eval(pm.model, f);
      if (mc_all) {
        bool first = true;
        for (std::size_t i = 0; i < pm.model.size(); ++i)
          if (s.test(i)) {
            out << (first ? "" : " ") << pm.model.state(i);
            first = false;
          }
        out << "\n";
        return s.any() ? kOk : kFalse;
      }
      const std::size_t at = mc_state.empty() ? pm.point : pm.model.index_of(mc_state);
      out << (s.test(at) ? "true" : "false") << "\n";
      return s.test(at) ? kOk : kFalse;
    };
  });

  // sat
  FormulaArg sat_f;
  std::string sat_logic;
  TableauConfig sat_cfg;
  bool sat_no_fold = false;
  std::string sat_emit;
  auto* sat = app.add_subcommand("sat", "decide satisfiability with the prefixed tableau");
  sat_f.add(sat);
  sat->add_option("--logic", sat_logic, "frame spec, e.g. \"a=K4;b=S5\" (default K)");
  sat->add_option("--kappa", sat_cfg.kappa, "X-occurrences tolerated on a dependency path")
      ->capture_default_str();
  sat->add_option("--max-prefix", sat_cfg.max_prefix_len, "longest prefix created")
      ->capture_default_str();
  sat->add_option("--max-nodes", sat_cfg.max_nodes, "node budget")->capture_default_str();
  sat->add_flag("--sufficient", sat_cfg.sufficient_bound,
                "use the sufficiency bound on prefix length");
  sat->add_flag("--no-fold", sat_no_fold, "do not fold truncated branches into models");
  sat->add_option("--emit-model", sat_emit, "write the witness model to this file");
  sat->callback([&] {
    action = [&] {
      Formula f = sat_f.get(io);
      sat_cfg.loop_back = !sat_no_fold;
      Verdict v = solve(f, parse_logic(sat_logic), sat_cfg);
      emit_model(v, sat_emit);
      print_verdict(v, io);
      return verdict_code(v);
    };
  });

  // sat-k4
  FormulaArg k4_f;
  std::string k4_logic = "K4";
  bool k4_stats = false;
  std::string k4_emit;
  auto* k4 = app.add_subcommand("sat-k4", "decide single-agent K4, D4 or S4 satisfiability");
  k4_f.add(k4);
  k4->add_option("--logic", k4_logic, "K4, D4 or S4")->capture_default_str();
  k4->add_flag("--stats", k4_stats, "print search statistics");
  k4->add_option("--emit-model", k4_emit, "write the witness model to this file");
  k4->callback([&] {
    action = [&] {
      Formula f = k4_f.get(io);
      K4Stats st;
      Verdict v = solve_k4(f, parse_k4_logic(k4_logic), &st);
      emit_model(v, k4_emit);
      print_verdict(v, io);
      if (k4_stats)
        out << "# max_depth=" << st.max_depth << " distinct_sets=" << st.distinct_sets
            << " loop_backs=" << st.loop_backs << "\n";
      return verdict_code(v);
    };
  });

  // translate
  FormulaArg tr_f;
  std::string tr_from, tr_to, tr_kind, tr_cond, tr_remove;
  std::vector<std::string> tr_agents;
  bool tr_steps = false;
  auto* tr = app.add_subcommand("translate", "apply a satisfiability-preserving translation");
  tr_f.add(tr);
  auto* o_from = tr->add_option("--from", tr_from, "source frame spec");
  auto* o_to = tr->add_option("--to", tr_to, "target frame spec");
  auto* o_kind = tr->add_option("--kind", tr_kind, "single translation: onestep, D, T, 4, B, K");
  auto* o_remove = tr->add_option("--remove", tr_remove, "condition to remove: D, T, B, 4 or 5");
  tr->add_option("--agents", tr_agents, "agents the single translation applies to")
      ->delimiter(',');
  tr->add_option("--cond", tr_cond, "condition for onestep: D, T, B, 4 or 5")->needs(o_kind);
  tr->add_flag("--steps", tr_steps, "list pipeline steps on stderr")->needs(o_from);
  o_from->needs(o_to);
  o_to->needs(o_from);
  o_kind->excludes(o_from)->excludes(o_to)->excludes(o_remove);
  o_remove->excludes(o_from)->excludes(o_to);
  tr->callback([&] {
    action = [&] {
      Formula f = tr_f.get(io);
      if (!tr_remove.empty()) {
        if (tr_remove.size() != 1) throw Error("--remove takes one of D, T, B, 4, 5");
        const Cond c = cond_from_char(tr_remove[0]);
        // 5 only has the one-step translation, which needs a recursion-free formula.
        const std::string kind = c == Cond::Five ? "onestep" : std::string(1, cond_char(c));
        out << print(translate_kind(kind, f, tr_agents, tr_remove)) << "\n";
        return kOk;
      }
      if (!tr_kind.empty()) {
        out << print(translate_kind(tr_kind, f, tr_agents, tr_cond)) << "\n";
        return kOk;
      }
      if (tr_from.empty()) throw Error("give --from/--to, --remove or --kind");
      std::vector<PipelineStep> steps;
      Formula g = pipeline(f, parse_logic(tr_from), parse_logic(tr_to), {}, &steps);
      if (tr_steps)
        for (const auto& s : steps) err << "# " << s.name << " -> " << logic_name(s.residual) << "\n";
      out << print(g) << "\n";
      return kOk;
    };
  });

  // encode
  FormulaArg en_f;
  std::string en_logic, en_table;
  EncodeOptions en_opts;
  auto* en = app.add_subcommand("encode", "encode satisfiability as a K formula over graph propositions");
  en_f.add(en);
  en->add_option("--logic", en_logic, "frame spec without condition 5");
  en->add_option("--graph-cap", en_opts.graph_cap, "largest |sub(f)| accepted")->capture_default_str();
  en->add_option("--max-pairs", en_opts.max_excursion_pairs,
                 "largest number of candidate child excursions per graph")
      ->capture_default_str();
  en->add_option("--emit-table", en_table, "write the graph table to this file");
  en->callback([&] {
    action = [&] {
      Formula f = en_f.get(io);
      Encoder e(f, parse_logic(en_logic), en_opts);
      Formula g = e.encode();
      if (!en_table.empty()) {
        std::ofstream t(en_table);
        if (!t) throw Error("cannot write " + en_table);
        t << e.table();
      }
      out << print(g) << "\n";
      return kOk;
    };
  });

  // oracle
  FormulaArg or_f;
  std::string or_logic;
  std::size_t or_max = 3;
  OracleOptions or_opts;
  auto* orc = app.add_subcommand("oracle", "search all models up to a state bound");
  or_f.add(orc);
  orc->add_option("--logic", or_logic, "frame spec");
  orc->add_option("--max-states", or_max, "state bound")->capture_default_str();
  orc->add_option("--budget", or_opts.node_budget, "search node budget")->capture_default_str();
  orc->callback([&] {
    action = [&] {
      Formula f = or_f.get(io);
      OracleResult r = sat_bounded(f, parse_logic(or_logic), or_max, or_opts);
      out << oracle_status(r) << "\n";
      if (r.found()) out << print_pointed(r.witness);
      return r.found() ? kOk : r.none() ? kFalse : kUnknown;
    };
  });

  // closure
  std::string cl_model, cl_logic;
  auto* cl = app.add_subcommand("closure", "close a model's relations under a frame spec");
  cl->add_option("model", cl_model, "model file, or - for stdin")->required();
  cl->add_option("--logic", cl_logic, "frame spec")->required();
  cl->callback([&] {
    action = [&] {
      PointedModel pm = model_arg(cl_model, io);
      pm.model = close_logic(pm.model, parse_logic(cl_logic));
      out << print_pointed(pm);
      return kOk;
    };
  });

  // bisim
  std::string bi_a, bi_b;
  auto* bi = app.add_subcommand("bisim", "decide bisimilarity of two pointed models");
  bi->add_option("left", bi_a, "model file")->required();
  bi->add_option("right", bi_b, "model file")->required();
  bi->callback([&] {
    action = [&] {
      const bool b = bisimilar(model_arg(bi_a, io), model_arg(bi_b, io));
      out << (b ? "bisimilar" : "not bisimilar") << "\n";
      return b ? kOk : kFalse;
    };
  });

  // corpus
  CorpusOptions co;
  std::string co_check = "translations";
  bool co_quiet = false;
  auto* cp = app.add_subcommand("corpus", "run a seeded differential corpus");
  cp->add_option("--seed", co.seed, "generator seed")->required();
  cp->add_option("--count", co.count, "cases (per family for translations)")->capture_default_str();
  cp->add_option("--check", co_check, "translations, tableau, k4 or encode")->capture_default_str();
  cp->add_option("--family", co.families, "restrict the translation families")->delimiter(',');
  cp->add_option("--max-size", co.max_size, "bound on |sub(f)|")->capture_default_str();
  cp->add_option("--cap-src", co.cap_f, "oracle state cap, source side")->capture_default_str();
  cp->add_option("--cap-tgt", co.cap_g, "oracle state cap, target side")->capture_default_str();
  cp->add_option("--budget", co.node_budget, "oracle node budget")->capture_default_str();
  cp->add_option("--workers", co.workers, "worker threads (0: one per core)")->capture_default_str();
  cp->add_flag("--quiet", co_quiet, "print only non-ok cases and the summary");
  cp->callback([&] {
    action = [&] {
      co.check = parse_corpus_check(co_check);
      CorpusSummary s = run_corpus(co, [&](const CorpusLine& l) {
        if (!co_quiet || l.status != "ok") out << render(l) << "\n";
      });
      out << "summary: cases=" << s.cases << " ok=" << s.ok << " gaps=" << s.gaps
          << " inconclusive=" << s.inconclusive << " contradictions=" << s.contradictions << "\n";
      return s.passed() ? kOk : kFalse;
    };
  });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::Success& e) {
    app.exit(e, out, err);
    return kOk;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }
  try {
    return action();
  } catch (const SourceError& e) {
    err << "error: " << e.what() << "\n  " << e.source << "\n  " << std::string(e.pos, ' ')
        << "^\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
  }
  return runtime_error_code;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace mucalc::cli
