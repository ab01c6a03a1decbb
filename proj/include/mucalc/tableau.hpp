#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/kripke.hpp"
#include "mucalc/logic.hpp"

namespace mucalc {

struct TableauConfig {
  std::size_t kappa = 3;            // X-occurrences tolerated on one dependency path
  std::size_t max_prefix_len = 12;  // longer prefixes are not created
  std::size_t max_nodes = 400000;   // budget of processed prefixed formulas
  bool loop_back = true;            // try a folded model when the prefix bound is hit
  // Use the (huge) sufficiency bound on prefix length instead of max_prefix_len.
  bool sufficient_bound = false;
  // Prefixed formulas held by suspended (or)-alternatives, summed over the
  // search stack; each alternative is a full branch copy.
  std::size_t max_suspended = 3'000'000;
};

struct Verdict {
  enum class Kind { Sat, Unsat, Unknown };
  Kind kind = Kind::Unknown;
  PointedModel witness;  // Sat only; state ids "w<k>"
  std::vector<std::string> state_prefixes;  // rendering of each witness state
  std::string bound_hit;                    // Unknown only
  std::size_t branches = 0;
  std::size_t nodes = 0;
  std::size_t max_prefix_seen = 0;
  bool folded = false;  // Sat came from a loop-back candidate

  bool sat() const { return kind == Kind::Sat; }
  bool unsat() const { return kind == Kind::Unsat; }
};

std::string verdict_name(Verdict::Kind k);

enum class Rule { Fix, Var, Or, And, B, D, d, Four, t, b, b4, B5, D5, B55, D55 };
std::string rule_name(Rule r);
bool creates_prefix(Rule r);

struct RuleInstance {
  Rule rule;
  int premise;            // prefixed-formula id
  int target = -1;        // prefix receiving the conclusion; -1 when it must be created
  int parent = -1;        // for creations: prefix being extended
  int agent = -1;         // for creations: step agent
  int step = -1;          // for creations: step formula
  std::vector<int> conclusions;  // formula ids; two alternatives for (or)
};

class Tableau;

// A tableau branch: prefixes form a tree, each carrying a set of formulas.
// Dependency edges link premises to conclusions.
class Branch {
 public:
  struct Prefix {
    int parent = -1;
    int agent = -1;
    int step = -1;  // formula id of the generating formula
    int depth = 0;
    std::vector<int> children;
    boost::dynamic_bitset<> has;  // formula ids present at this prefix
    std::vector<int> pfs;         // prefixed-formula ids in insertion order
  };
  struct PF {
    int prefix;
    int formula;
  };

  const std::vector<Prefix>& prefixes() const { return prefixes_; }
  const std::vector<PF>& pfs() const { return pfs_; }
  const std::vector<std::vector<int>>& deps() const { return out_; }
  bool contains(int prefix, int formula) const;
  int find_pf(int prefix, int formula) const;
  int child(int prefix, int agent, int step) const;

  // Adds a prefixed formula (if new) and an edge from `premise` (if >= 0).
  // Returns the prefixed-formula id.
  int add(int prefix, int formula, int premise = -1);
  int create_prefix(int parent, int agent, int step);

 private:
  friend class Tableau;
  explicit Branch(std::size_t n_formulas) : nf_(n_formulas) {}
  std::size_t nf_;
  std::vector<Prefix> prefixes_;
  std::vector<PF> pfs_;
  std::unordered_map<std::uint64_t, int> pf_index_;
  std::vector<std::vector<int>> out_;
  std::unordered_set<std::uint64_t> edge_set_;
  std::size_t n_edges_ = 0;
  // search state
  std::vector<int> work_;
  std::vector<int> ors_;
  std::vector<RuleInstance> pending_;
  std::unordered_set<std::uint64_t> pending_keys_;
  std::vector<RuleInstance> skipped_;
  bool prop_closed_ = false;
  std::size_t fp_checked_ = 0;
  std::size_t fp_checked_edges_ = 0;
};

class Tableau {
 public:
  Tableau(Formula root, LogicSpec spec, TableauConfig cfg = {});

  Branch start() const;  // { eps root }
  Branch empty_branch() const;  // only the root prefix, no formulas

  int formula_id(Formula f) const;  // throws when f is not a subformula
  Formula formula(int id) const { return forms_[id]; }
  int agent_id(const std::string& a) const;  // -1 when unknown
  const std::string& agent_name(int id) const { return agents_[id]; }
  int prefix_of(Branch& b, const std::vector<std::pair<std::string, Formula>>& path) const;
  std::string render_prefix(const Branch& b, int prefix) const;

  std::vector<RuleInstance> applicable_rules(const Branch& b) const;
  std::vector<Branch> apply(const Branch& b, const RuleInstance& inst) const;

  bool is_prop_closed(const Branch& b) const;
  bool is_fp_closed(const Branch& b, std::size_t kappa) const;

  // Model over the branch's prefixes with the frame closed under the logic.
  PointedModel extract_model(const Branch& b, std::vector<std::string>* names = nullptr) const;

  Verdict solve();

  const TableauConfig& config() const { return cfg_; }

 private:
  struct FInfo {
    Kind kind;
    int l = -1, r = -1;
    int agent = -1;
    int fx = -1;     // for variables: binder formula id
    int var = -1;    // for variables and binders: variable index
  };

  void instances_of(const Branch& b, int pf, std::vector<RuleInstance>& out) const;
  bool flat(const Branch& b, int prefix, int agent) const;
  void saturate(Branch& b);
  void apply_local(Branch& b, const RuleInstance& inst);
  void on_new_prefix(Branch& b, int prefix);
  bool pending_still_valid(const Branch& b, const RuleInstance& c) const;
  Verdict explore(Branch b);
  bool try_fold(const Branch& b, Verdict& out) const;
  using Extra = std::vector<std::vector<std::pair<int, int>>>;  // per prefix: (agent, target)
  // redirect[i] >= 0 replaces prefix i by that prefix as a successor
  bool finish_model(const Branch& b, const Extra& extra, const std::vector<int>& redirect,
                    Verdict& out) const;
  KripkeModel build_model(const Branch& b, const Extra& extra,
                          const std::vector<int>& redirect) const;
  bool try_block(const Branch& b, Verdict& out) const;

  Formula root_;
  LogicSpec spec_;
  TableauConfig cfg_;
  std::vector<Formula> forms_;
  std::unordered_map<Formula, int> fid_;
  std::vector<FInfo> info_;
  std::vector<std::string> agents_;
  std::vector<CondSet> conds_;
  std::vector<std::string> vars_;
  std::vector<bool> var_least_;
  std::vector<std::vector<bool>> var_above_;  // var_above_[x][y]: x < y
  std::size_t nodes_ = 0;
  std::size_t branches_ = 0;
  std::size_t max_prefix_seen_ = 0;
  std::size_t suspended_ = 0;  // see TableauConfig::max_suspended
  std::size_t prefix_limit_ = 0;
};

// The sufficiency bound |Ag| * kappa^(|f|^2) * 2^(|f|+1) on prefix length.
boost::multiprecision::cpp_int sufficient_prefix_bound(Formula f, const LogicSpec& spec,
                                                       std::size_t kappa);

Verdict solve(Formula f, const LogicSpec& spec, const TableauConfig& cfg = {});

}  // namespace mucalc
