#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/kripke.hpp"
#include "mucalc/logic.hpp"
#include "mucalc/tableau.hpp"

namespace mucalc {

struct EncodeOptions {
  std::size_t graph_cap = 4;        // refuses |sub(f)| above this
  std::size_t max_excursion_pairs = 8;  // refuses graphs with more candidate child excursions
};

// Node labels of a dependency graph.
enum : std::uint8_t { kInTop = 1, kInBot = 2, kOutTop = 4, kOutBot = 8 };

// A labelled dependency graph over subformulas, standing for the formulas of
// one tableau prefix. Indices refer to Encoder::universe().
struct DepGraph {
  std::vector<int> phi;  // ascending
  std::vector<int> or_choice;  // per Or formula in phi (in phi order): chosen disjunct
  std::vector<std::vector<std::pair<int, int>>> edges;  // per least variable, sorted
  std::vector<std::uint8_t> label;  // per universe index; 0 outside phi
  std::string key;   // canonical serialization
  std::string name;  // proposition name g_<hex>

  bool has(int i) const { return label.size() > static_cast<std::size_t>(i) && in_[i]; }

 private:
  friend class Encoder;
  std::vector<bool> in_;
};

struct EncodeStats {
  std::size_t graphs = 0;
  std::size_t agents = 0;
  std::size_t max_fp_memo = 0;  // longest memo string reached by the fp families
  std::size_t max_ip_memo = 0;  // longest memo string reached by the ip family
};

// Encodes satisfiability of f (no agent with condition 5) as K^mu
// satisfiability of a formula over graph propositions and derived agents.
class Encoder {
 public:
  using Pair = std::pair<int, int>;  // (-1,-1) is the empty pair
  static constexpr Pair kNoPair{-1, -1};

  Encoder(Formula f, LogicSpec spec, EncodeOptions opts = {});

  Formula root() const { return root_; }
  const std::vector<Formula>& universe() const { return forms_; }
  int index_of(Formula f) const;  // -1 when absent
  const std::vector<std::string>& least_vars() const { return least_; }
  const std::vector<DepGraph>& graphs() const { return graphs_; }
  const DepGraph* find_graph(const std::string& name) const;

  // Encoded agent for base agent alpha and step chi, e.g. "a_x3".
  std::string agent_name(const std::string& alpha, Formula chi) const;
  const std::vector<std::string>& agents() const { return enc_agents_; }

  // Prospective alpha<chi>-child (alpha-child when chi is empty).
  bool child(const DepGraph& h, const DepGraph& g, const std::string& alpha,
             std::optional<Formula> chi) const;

  Formula rules();
  // Finite path formulas. need_x selects the family requiring an X-visit;
  // t == kNoPair (cycle) requires need_x. Formulas in memo are bound outside.
  Formula fp(int x, Pair t, bool need_x, const std::vector<Pair>& memo = {});
  // Binder variable of fp(x, t, need_x, memo).
  std::string fp_binder(int x, Pair t, bool need_x, const std::vector<Pair>& memo = {});
  Formula ip(int x, int psi);
  Formula inf_path();
  Formula encode();

  // Sidecar table: one line per graph, name then contents.
  std::string table() const;
  const EncodeStats& stats() const { return stats_; }

  DepGraph branch_to_graph(const Tableau& t, const Branch& b, int prefix) const;
  PointedModel branch_to_model(const Tableau& t, const Branch& b) const;

 private:
  void enumerate();
  DepGraph make_graph(const std::vector<int>& phi, const std::vector<int>& choice) const;
  std::vector<Pair> candidates(const DepGraph& g) const;
  bool path(const DepGraph& g, int x, int a, int b, const std::vector<Pair>& s, bool need_x) const;
  bool cycle(const DepGraph& g, int x, const std::vector<Pair>& s, bool need_x) const;
  std::vector<int> firsts(int modal) const;
  std::vector<Pair> nx(Pair s) const;
  Formula dia_of(int modal, Formula body) const;
  Formula fp_rec(int x, Pair t, bool need_x, std::vector<std::pair<Pair, std::string>>& memo);
  Formula fp_inner(int x, Pair t, bool need_x, std::vector<std::pair<Pair, std::string>>& memo,
                   const DepGraph& g);
  Formula ip_rec(int x, int psi, std::vector<std::pair<int, std::string>>& memo,
                 std::vector<int> memo_x);

  Formula root_;
  LogicSpec spec_;
  EncodeOptions opts_;
  std::vector<Formula> forms_;
  std::unordered_map<Formula, int, FormulaHash> fid_;
  std::vector<int> neg_;     // index of the negation, or -1
  std::vector<int> fx_;      // for variables: binder index
  std::vector<int> var_of_;  // for variables: index into vars_
  std::vector<std::string> vars_;
  std::vector<std::vector<bool>> above_;  // above_[x][y]: x < y
  std::vector<std::string> least_;
  std::vector<int> least_var_;  // least index -> vars_ index
  std::map<std::string, CondSet> conds_;
  std::vector<std::uint8_t> label_;  // canonical label of each universe formula
  std::vector<std::string> base_agents_;
  std::vector<std::string> enc_agents_;
  std::map<std::string, std::vector<std::string>> enc_of_;  // base agent -> encoded agents
  std::vector<DepGraph> graphs_;
  std::unordered_map<std::string, std::size_t> by_name_;
  std::map<std::string, Formula> cache_;
  std::map<std::string, std::string> names_;
  std::size_t counter_ = 0;
  EncodeStats stats_;
};

std::vector<DepGraph> enumerate_graphs(Formula f, const LogicSpec& spec,
                                       const EncodeOptions& opts = {});
Formula build_rules(Formula f, const LogicSpec& spec, const EncodeOptions& opts = {});
Formula encode(Formula f, const LogicSpec& spec, const EncodeOptions& opts = {});

// A maximal branch that is neither propositionally nor fp-closed, found by
// depth-first rule application; empty when none appears within max_steps.
std::optional<Branch> open_branch(const Tableau& t, std::size_t kappa, std::size_t max_steps);

}  // namespace mucalc
