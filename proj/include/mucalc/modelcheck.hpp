#pragma once

#include <map>
#include <string>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/kripke.hpp"

namespace mucalc {

using Environment = std::map<std::string, StateSet>;

// Abstract evaluation context. Diamonds and boxes may read different
// relations and a proposition's positive and negated literal may read
// different sets; for an ordinary model they coincide / complement.
struct EvalContext {
  std::size_t n = 0;
  std::function<const std::vector<StateSet>*(const std::string& agent)> dia_rel;
  std::function<const std::vector<StateSet>*(const std::string& agent)> box_rel;
  std::function<StateSet(const std::string& p)> pos;
  std::function<StateSet(const std::string& p)> neg;
};

EvalContext context_of(const KripkeModel& m);

StateSet eval(const EvalContext& ctx, Formula f, const Environment& env = {});
StateSet eval(const KripkeModel& m, Formula f, const Environment& env = {});
bool check(const PointedModel& pm, Formula f);

// Reference semantics: fixed points as the intersection (union) of all
// pre- (post-) fixed points, found by trying every subset of states.
// Exponential in the number of states; intended for tiny models only.
StateSet eval_by_subsets(const KripkeModel& m, Formula f, const Environment& env = {});

}  // namespace mucalc
