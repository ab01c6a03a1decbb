#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/logic.hpp"
#include "mucalc/oracle.hpp"

namespace mucalc {

// Seeded differential corpora over the solvers and translations.
enum class CorpusCheck { Translations, Tableau, K4, Encode };
CorpusCheck parse_corpus_check(const std::string& s);  // throws Error
std::string corpus_check_name(CorpusCheck c);

// Translation families checked by CorpusCheck::Translations.
const std::vector<std::string>& translation_families();  // onestep, D_mu, T_mu, 4_mu, B_mu, K_mu

struct CorpusOptions {
  std::uint64_t seed = 0;
  std::size_t count = 100;  // per translation family, or total for the other checks
  CorpusCheck check = CorpusCheck::Translations;
  std::vector<std::string> families;  // empty: all translation families
  std::size_t max_size = 5;           // bound on |sub(f)| of generated formulas
  std::size_t cap_f = 4;              // oracle cap for the source side
  std::size_t cap_g = 5;              // oracle cap for the target side
  std::uint64_t node_budget = 2'000'000;  // per oracle call
  std::size_t tableau_nodes = 40'000;     // per tableau call
  std::size_t workers = 0;  // 0: hardware concurrency; output order is independent of it
};

struct CorpusLine {
  std::size_t index = 0;
  std::string label;  // family, logic, ...
  Formula f, g;       // g invalid when there is no second formula
  LogicSpec spec_f, spec_g;
  std::string status;  // ok, gap, inconclusive, CONTRADICTION
  std::string detail;
};
std::string render(const CorpusLine& l);

struct CorpusSummary {
  std::size_t cases = 0, ok = 0, gaps = 0, inconclusive = 0, contradictions = 0;
  bool passed() const { return contradictions == 0; }
};

CorpusSummary run_corpus(const CorpusOptions& opts,
                         const std::function<void(const CorpusLine&)>& sink = {});

}  // namespace mucalc
