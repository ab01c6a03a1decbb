#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "mucalc/formula.hpp"
#include "mucalc/tableau.hpp"

namespace mucalc {

enum class K4Logic { K4, D4, S4 };

// Accepts "K4", "D4", "S4" and equivalent condition names ("KT4", "DT4",
// optionally as "<agent>=..."); throws Error otherwise.
K4Logic parse_k4_logic(const std::string& s);
std::string k4_logic_name(K4Logic l);
CondSet k4_conds(K4Logic l);

struct K4Stats {
  std::size_t max_depth = 0;       // longest prefix explored
  std::size_t distinct_sets = 0;   // distinct formula sets among explored prefixes
  std::size_t loop_backs = 0;      // demands discharged by a prefix on their own path
};

// Decides single-agent satisfiability. Never returns Unknown; Sat witnesses
// are model checked. Throws Error on formulas with more than one agent.
Verdict solve_k4(Formula f, K4Logic logic, K4Stats* stats = nullptr);

// 2 * |f|! - 1
boost::multiprecision::cpp_int small_model_bound(Formula f);
boost::multiprecision::cpp_int small_model_bound(std::size_t n);

}  // namespace mucalc
