#pragma once

#include <boost/dynamic_bitset.hpp>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mucalc/logic.hpp"

namespace mucalc {

using StateSet = boost::dynamic_bitset<>;

// Finite Kripke model. States are indexed 0..n-1 in declaration order and
// carry string ids. Each relation is an adjacency matrix of successor sets.
class KripkeModel {
 public:
  std::size_t size() const { return states_.size(); }
  const std::vector<std::string>& states() const { return states_; }
  const std::string& state(std::size_t i) const { return states_[i]; }

  // Adds a state (no-op when the id already exists); returns its index.
  std::size_t add_state(const std::string& id);
  bool has_state(const std::string& id) const { return index_.count(id) != 0; }
  std::size_t index_of(const std::string& id) const;  // throws on unknown id

  void add_agent(const std::string& agent);
  bool has_agent(const std::string& agent) const { return rel_.count(agent) != 0; }
  std::vector<std::string> agents() const;
  void add_edge(const std::string& agent, std::size_t from, std::size_t to);
  void remove_edge(const std::string& agent, std::size_t from, std::size_t to);
  bool has_edge(const std::string& agent, std::size_t from, std::size_t to) const;
  // Successor sets of an agent; an empty vector for undeclared agents.
  const std::vector<StateSet>& succ(const std::string& agent) const;
  std::vector<std::pair<std::size_t, std::size_t>> edges(const std::string& agent) const;

  void add_prop(const std::string& p);
  void set_prop(const std::string& p, std::size_t s, bool value = true);
  bool holds(const std::string& p, std::size_t s) const;
  // States where p holds; an all-false set for undeclared propositions.
  StateSet prop_set(const std::string& p) const;
  std::vector<std::string> props() const;

  friend bool operator==(const KripkeModel& a, const KripkeModel& b);

 private:
  std::vector<std::string> states_;
  std::unordered_map<std::string, std::size_t> index_;
  std::map<std::string, std::vector<StateSet>> rel_;
  std::map<std::string, StateSet> val_;
};

struct PointedModel {
  KripkeModel model;
  std::size_t point = 0;
};

// Line-oriented text format:
//   states: s0 s1
//   rel a: s0 s1 ; s1 s1
//   val p: s0
//   point: s0          (optional; defaults to the first state)
// '#' starts a comment. Repeated declarations are unioned.
PointedModel parse_model(const std::string& text);
std::string print_model(const KripkeModel& m);
std::string print_pointed(const PointedModel& pm);

bool has_condition(const KripkeModel& m, const std::string& agent, Cond c);
bool satisfies_spec(const KripkeModel& m, const LogicSpec& spec);
KripkeModel close(const KripkeModel& m, const std::string& agent, Cond c);
// Closes each agent listed in spec (fallback applies to all declared agents)
// under its conditions in the order D, T, B, 4, 5.
KripkeModel close_logic(const KripkeModel& m, const LogicSpec& spec);

// Relation-level helpers on adjacency matrices.
bool rel_has(const std::vector<StateSet>& r, Cond c);
void rel_close(std::vector<StateSet>& r, Cond c);

// Tree unfolding truncated at `depth` steps. State ids are dot-joined
// paths "w0.a.w1".
// Restriction to the states reachable from the point (any agent).
PointedModel generated_submodel(const PointedModel& pm);

PointedModel unfold(const PointedModel& pm, std::size_t depth);

bool bisimilar(const PointedModel& a, const PointedModel& b);

// Streams every labelled model on exactly n states over the given agents and
// propositions whose frame satisfies spec. The callback returns false to stop.
// Throws when the search space exceeds 2^max_bits.
void enumerate_models(std::size_t n, const std::vector<std::string>& agents,
                      const std::vector<std::string>& props, const LogicSpec& spec,
                      const std::function<bool(const KripkeModel&)>& fn, int max_bits = 26);

}  // namespace mucalc
