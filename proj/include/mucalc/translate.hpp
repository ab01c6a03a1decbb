#pragma once

#include <string>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/logic.hpp"

namespace mucalc {

// Reserved marker propositions.
inline constexpr const char* kMarkP = "_p";
inline constexpr const char* kMarkQ = "_q";

// The frame axiom for condition x and agent, with psi plugged in for p and
// implications desugared through negate.
Formula axiom(Cond x, const std::string& agent, Formula psi);

// Recursion-free inputs only.
Formula translate_onestep(Formula f, const std::vector<std::string>& A, Cond x);
Formula translate_D_mu(Formula f, const std::vector<std::string>& A);
Formula translate_T_mu(Formula f, const std::vector<std::string>& A);
Formula translate_4_mu(Formula f, const std::vector<std::string>& A);
// Inputs without least fixed points only.
Formula translate_B_mu(Formula f, const std::vector<std::string>& A);
// Embeds K into logics with D/T/B for the agents in A.
Formula translate_K_mu(Formula f, const std::vector<std::string>& A);

// The marker conjunctions p&q, p&~q, ~p&q and their successors.
std::vector<Formula> marker_vectors();
Formula marker_next(Formula pv);

struct PipelineOptions {
  // Recursion-free inputs go through the one-step translation.
  bool onestep_for_recursion_free = true;
};

struct PipelineStep {
  std::string name;  // e.g. "T_mu{a}" or "onestep5{a,b}"
  std::vector<std::string> agents;
  LogicSpec residual;  // logic the intermediate formula is checked in
};

// Composes translations so that f is from-satisfiable iff the result is
// to-satisfiable. Conditions are removed 5, 4, T, B, D; adding conditions is
// supported only from K to subsets of {D,T,B} via translate_K_mu.
Formula pipeline(Formula f, const LogicSpec& from, const LogicSpec& to,
                 const PipelineOptions& opts = {}, std::vector<PipelineStep>* steps = nullptr);

}  // namespace mucalc
