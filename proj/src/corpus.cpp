#include "mucalc/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <optional>
#include <sstream>
#include <thread>

#include "mucalc/error.hpp"
#include "mucalc/k4solver.hpp"
#include "mucalc/modelcheck.hpp"
#include "mucalc/muencode.hpp"
#include "mucalc/translate.hpp"

namespace mucalc {

namespace {

LogicSpec two_agents(const std::string& a, const std::string& b = "K") {
  LogicSpec s;
  s.set("a", parse_conds(a));
  s.set("b", parse_conds(b));
  return s;
}

std::string status_of(const DiffReport& r) {
  if (r.contradiction) return "CONTRADICTION";
  const bool decided_f = r.sat_f || r.unsat_f;
  const bool decided_g = r.sat_g || r.unsat_g;
  if (r.gap) return "gap";
  if (!decided_f || !decided_g) return "inconclusive";
  return "ok";
}

std::string diff_detail(const DiffReport& r) {
  std::ostringstream os;
  os << "src=" << oracle_status(r.oracle_f) << "/" << verdict_name(r.tableau_f.kind)
     << " tgt=" << oracle_status(r.oracle_g) << "/" << verdict_name(r.tableau_g.kind);
  if (r.contradiction) os << " (" << r.reason << ")";
  return os.str();
}

void tally(CorpusSummary& s, const std::string& status) {
  ++s.cases;
  if (status == "ok") ++s.ok;
  else if (status == "gap") ++s.gaps;
  else if (status == "inconclusive") ++s.inconclusive;
  else ++s.contradictions;
}

using Job = std::function<CorpusLine()>;

// Runs jobs on a worker pool; lines reach the sink in job order.
CorpusSummary run_jobs(const std::vector<Job>& jobs, std::size_t workers,
                       const std::function<void(const CorpusLine&)>& sink) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, std::max<std::size_t>(jobs.size(), 1));
  std::vector<std::optional<CorpusLine>> done(jobs.size());
  std::exception_ptr failure;
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::condition_variable cv;
  auto work = [&] {
    for (std::size_t i; (i = next++) < jobs.size();) {
      std::optional<CorpusLine> l;
      try {
        l = jobs[i]();
      } catch (...) {
        std::lock_guard lk(mu);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
      std::lock_guard lk(mu);
      done[i] = std::move(l);
      cv.notify_all();
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  CorpusSummary sum;
  std::size_t emitted = 0;
  auto drain = [&] {
    // caller holds mu
    while (emitted < jobs.size() && done[emitted]) {
      tally(sum, done[emitted]->status);
      if (sink) sink(*done[emitted]);
      done[emitted].reset();
      ++emitted;
    }
  };
  if (workers == 1) {
    for (const Job& j : jobs) {
      CorpusLine l = j();
      tally(sum, l.status);
      if (sink) sink(l);
    }
  } else {
    std::unique_lock lk(mu);
    while (emitted < jobs.size() && !failure) {
      cv.wait(lk, [&] { return failure || (emitted < jobs.size() && done[emitted]); });
      drain();
    }
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return sum;
}

struct Family {
  std::string name;
  bool allow_mu, allow_nu;
  // source logic of a, target logic of a, translation
  std::function<void(std::size_t i, std::string& from, std::string& to, Cond& x)> logics;
};

const std::vector<Family>& families() {
  static const std::vector<Family> fams = {
      {"onestep", false, false,
       [](std::size_t i, std::string& from, std::string& to, Cond& x) {
         x = kAllConds[i % 5];
         from = conds_name(CondSet{}.with(x));
         to = "K";
       }},
      {"D_mu", true, true, [](std::size_t, std::string& from, std::string& to, Cond&) {
         from = "D";
         to = "K";
       }},
      {"T_mu", true, true, [](std::size_t, std::string& from, std::string& to, Cond&) {
         from = "T";
         to = "K";
       }},
      {"4_mu", true, true,
       [](std::size_t i, std::string& from, std::string& to, Cond&) {
         static const char* src[] = {"K4", "D4", "S4"};
         static const char* dst[] = {"K", "D", "T"};
         from = src[i % 3];
         to = dst[i % 3];
       }},
      {"B_mu", false, true,
       [](std::size_t i, std::string& from, std::string& to, Cond&) {
         from = i % 2 ? "DB" : "B";
         to = i % 2 ? "D" : "K";
       }},
      {"K_mu", true, true,
       [](std::size_t i, std::string& from, std::string& to, Cond&) {
         static const char* dst[] = {"T", "D", "B", "TB"};
         from = "K";
         to = dst[i % 4];
       }},
  };
  return fams;
}

Formula translate_family(const std::string& name, Formula f, Cond x) {
  const std::vector<std::string> A{"a"};
  if (name == "onestep") return translate_onestep(f, A, x);
  if (name == "D_mu") return translate_D_mu(f, A);
  if (name == "T_mu") return translate_T_mu(f, A);
  if (name == "4_mu") return translate_4_mu(f, A);
  if (name == "B_mu") return translate_B_mu(f, A);
  return translate_K_mu(f, A);
}

std::vector<Job> translation_jobs(const CorpusOptions& o) {
  std::vector<Job> jobs;
  const auto& fams = families();
  std::size_t index = 0;
  for (std::size_t k = 0; k < fams.size(); ++k) {
    const Family& fam = fams[k];
    if (!o.families.empty() &&
        std::find(o.families.begin(), o.families.end(), fam.name) == o.families.end())
      continue;
    GenOptions go;
    go.max_size = o.max_size;
    go.allow_mu = fam.allow_mu;
    go.allow_nu = fam.allow_nu;
    FormulaGen gen(o.seed * 7919 + k, go);
    for (std::size_t i = 0; i < o.count; ++i) {
      CorpusLine l;
      l.index = index++;
      l.f = gen.next();
      std::string from, to;
      Cond x = Cond::D;
      fam.logics(i, from, to, x);
      l.label = fam.name == "onestep" ? "onestep" + std::string(1, cond_char(x)) : fam.name;
      l.spec_f = two_agents(from);
      l.spec_g = two_agents(to);
      jobs.push_back([l, x, &fam, o]() mutable {
        l.g = translate_family(fam.name, l.f, x);
        DiffOptions d;
        d.cap_f = o.cap_f;
        d.cap_g = o.cap_g;
        d.oracle.node_budget = o.node_budget;
        d.tableau.max_nodes = o.tableau_nodes;
        DiffReport r = differential(l.f, l.g, l.spec_f, l.spec_g, d);
        l.status = status_of(r);
        l.detail = diff_detail(r);
        return l;
      });
    }
  }
  return jobs;
}

std::vector<Job> tableau_jobs(const CorpusOptions& o) {
  static const char* logics[] = {"K", "D", "T", "B", "K4", "K5", "S4", "S5", "TB", "DB", "D45", "KB5"};
  std::vector<Job> jobs;
  GenOptions go;
  go.max_size = o.max_size;
  FormulaGen gen(o.seed, go);
  for (std::size_t i = 0; i < o.count; ++i) {
    CorpusLine l;
    l.index = i;
    l.f = gen.next();
    l.spec_f = two_agents(logics[i % 12], logics[(i / 12 + 3 * i) % 12]);
    l.label = logic_name(l.spec_f);
    jobs.push_back([l, o]() mutable {
      OracleOptions oo;
      oo.node_budget = o.node_budget;
      OracleResult orc = sat_bounded(l.f, l.spec_f, std::min<std::size_t>(o.cap_f, 3), oo);
      TableauConfig tc;
      tc.kappa = 4;
      tc.max_nodes = o.tableau_nodes;
      Verdict v = solve(l.f, l.spec_f, tc);
      if (orc.found() && v.unsat()) l.status = "CONTRADICTION";
      else if (v.sat() && !check(v.witness, l.f)) l.status = "CONTRADICTION";
      else if ((orc.found() && v.sat()) || (orc.none() && v.unsat())) l.status = "ok";
      else if (v.sat() && orc.none()) l.status = "gap";
      else l.status = "inconclusive";
      l.detail = "oracle=" + oracle_status(orc) + " tableau=" + verdict_name(v.kind);
      return l;
    });
  }
  return jobs;
}

std::vector<Job> k4_jobs(const CorpusOptions& o) {
  std::vector<Job> jobs;
  GenOptions go;
  go.agents = {"a"};
  go.max_size = o.max_size;
  FormulaGen gen(o.seed, go);
  for (std::size_t i = 0; i < o.count; ++i) {
    CorpusLine l;
    l.index = i;
    l.f = gen.next();
    const K4Logic lg = static_cast<K4Logic>(i % 3);
    l.label = k4_logic_name(lg);
    l.spec_f.set("a", k4_conds(lg));
    jobs.push_back([l, lg, o]() mutable {
      Verdict v = solve_k4(l.f, lg);
      OracleOptions oo;
      oo.node_budget = o.node_budget;
      OracleResult orc = sat_bounded(l.f, l.spec_f, o.cap_f, oo);
      TableauConfig tc;
      tc.kappa = 4;
      tc.max_nodes = o.tableau_nodes;
      Verdict t = solve(l.f, l.spec_f, tc);
      const bool bad_witness =
          v.sat() && (!check(v.witness, l.f) || !satisfies_spec(v.witness.model, l.spec_f));
      if (bad_witness || (v.unsat() && (orc.found() || t.sat())) || (v.sat() && t.unsat()))
        l.status = "CONTRADICTION";
      else if (v.kind == Verdict::Kind::Unknown || orc.status == OracleResult::Status::Budget)
        l.status = "inconclusive";
      else if (v.sat() && orc.none()) l.status = "gap";
      else l.status = "ok";
      l.detail = "k4=" + verdict_name(v.kind) + " oracle=" + oracle_status(orc) +
                 " tableau=" + verdict_name(t.kind);
      return l;
    });
  }
  return jobs;
}

std::vector<Job> encode_jobs(const CorpusOptions& o) {
  static const char* logics[] = {"K", "T", "D", "B", "TB", "DB", "K4", "D4", "S4"};
  std::vector<Job> jobs;
  GenOptions go;
  go.agents = {"a"};
  go.props = {"p"};
  go.max_size = std::min<std::size_t>(o.max_size, 4);
  FormulaGen gen(o.seed, go);
  for (std::size_t i = 0; i < o.count; ++i) {
    CorpusLine l;
    l.index = i;
    l.f = gen.next();
    l.label = logics[i % 9];
    l.spec_f.set("a", parse_conds(l.label));
    jobs.push_back([l, o]() mutable {
      EncodeOptions eo;
      eo.graph_cap = 5;
      eo.max_excursion_pairs = 10;
      l.g = encode(l.f, l.spec_f, eo);
      DiffOptions d;
      d.cap_f = std::min<std::size_t>(o.cap_f, 3);
      d.cap_g = std::min<std::size_t>(o.cap_g, 3);
      d.tableau_g = false;
      d.tableau.max_nodes = o.tableau_nodes;
      d.oracle.node_budget = std::min<std::uint64_t>(o.node_budget, 20'000);
      DiffReport r = differential(l.f, l.g, l.spec_f, LogicSpec{}, d);
      l.status = status_of(r);
      l.detail = diff_detail(r) + " |encode|=" + std::to_string(size(l.g));
      return l;
    });
  }
  return jobs;
}

}  // namespace

CorpusCheck parse_corpus_check(const std::string& s) {
  if (s == "translations") return CorpusCheck::Translations;
  if (s == "tableau") return CorpusCheck::Tableau;
  if (s == "k4") return CorpusCheck::K4;
  if (s == "encode") return CorpusCheck::Encode;
  throw Error("unknown corpus check '" + s + "' (translations, tableau, k4, encode)");
}

std::string corpus_check_name(CorpusCheck c) {
  switch (c) {
    case CorpusCheck::Translations: return "translations";
    case CorpusCheck::Tableau: return "tableau";
    case CorpusCheck::K4: return "k4";
    case CorpusCheck::Encode: return "encode";
  }
  return "?";
}

const std::vector<std::string>& translation_families() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& f : families()) v.push_back(f.name);
    return v;
  }();
  return names;
}

std::string render(const CorpusLine& l) {
  std::ostringstream os;
  os << l.index << ' ' << l.label << ' ' << l.status << " f=" << print(l.f);
  if (l.g.valid())
    os << " [" << logic_name(l.spec_f) << " -> " << logic_name(l.spec_g) << "] |g|=" << size(l.g);
  else
    os << " [" << logic_name(l.spec_f) << "]";
  os << ' ' << l.detail;
  return os.str();
}

CorpusSummary run_corpus(const CorpusOptions& o, const std::function<void(const CorpusLine&)>& sink) {
  for (const auto& f : o.families)
    if (std::find(translation_families().begin(), translation_families().end(), f) ==
        translation_families().end())
      throw Error("unknown translation family '" + f + "'");
  std::vector<Job> jobs;
  switch (o.check) {
    case CorpusCheck::Translations: jobs = translation_jobs(o); break;
    case CorpusCheck::Tableau: jobs = tableau_jobs(o); break;
    case CorpusCheck::K4: jobs = k4_jobs(o); break;
    case CorpusCheck::Encode: jobs = encode_jobs(o); break;
  }
  return run_jobs(jobs, o.workers, sink);
}

}  // namespace mucalc
