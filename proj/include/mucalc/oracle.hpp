#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mucalc/formula.hpp"
#include "mucalc/kripke.hpp"
#include "mucalc/logic.hpp"
#include "mucalc/tableau.hpp"

namespace mucalc {

struct OracleResult {
  enum class Status { Found, NoneWithin, Budget };
  Status status = Status::NoneWithin;
  std::size_t n_states = 0;  // witness size, or the cap searched
  PointedModel witness;
  std::uint64_t nodes = 0;  // search nodes visited

  bool found() const { return status == Status::Found; }
  bool none() const { return status == Status::NoneWithin; }
};

struct OracleOptions {
  std::size_t hard_cap = 6;                // refuses larger max_states
  std::uint64_t node_budget = 50'000'000;  // per call; exceeded -> Budget
};

// Least-size model search: tries n = 1..max_states and returns the first
// model found, re-verified by the model checker and the frame predicates.
OracleResult sat_bounded(Formula f, const LogicSpec& spec, std::size_t max_states,
                         const OracleOptions& opts = {});

// Cross-check of two formulas claimed equisatisfiable (f in spec_f, g in
// spec_g). Sat evidence: an oracle model or a verified tableau witness;
// Unsat evidence: a tableau refutation.
struct DiffOptions {
  std::size_t cap_f = 4;
  std::size_t cap_g = 5;
  bool tableau_f = true;
  bool tableau_g = true;
  TableauConfig tableau{4, 12, 200'000, true, false};
  OracleOptions oracle{6, 2'000'000};
};

struct DiffReport {
  OracleResult oracle_f, oracle_g;
  Verdict tableau_f, tableau_g;  // Unknown when skipped
  bool sat_f = false, sat_g = false;      // some side proved satisfiable
  bool unsat_f = false, unsat_g = false;  // some side refuted
  bool contradiction = false;  // Sat evidence against Unsat evidence, on either side or across
  bool gap = false;            // oracle Found on one side, NoneWithin on the other
  std::string reason;          // empty unless contradiction
};

DiffReport differential(Formula f, Formula g, const LogicSpec& spec_f, const LogicSpec& spec_g,
                        const DiffOptions& opts = {});
std::string oracle_status(const OracleResult& r);  // "found(n)", "none(n)", "budget"

// Seeded random formula generation for differential testing.
struct GenOptions {
  std::vector<std::string> props{"p", "q"};
  std::vector<std::string> agents{"a", "b"};
  int max_depth = 4;
  double fixpoint_prob = 0.3;
  bool allow_mu = true;
  bool allow_nu = true;
  std::size_t max_size = 8;  // bound on |sub(f)|
  std::size_t min_size = 1;
};

class FormulaGen {
 public:
  explicit FormulaGen(std::uint64_t seed, GenOptions opts = {}) : rng_(seed), opts_(opts) {}
  // A closed formula with min_size <= |sub(f)| <= max_size.
  Formula next();
  std::mt19937_64& rng() { return rng_; }

 private:
  Formula gen(int depth, std::vector<std::string>& scope, int& counter);
  std::mt19937_64 rng_;
  GenOptions opts_;
};

// Random pointed models (not filtered by any spec).
PointedModel random_model(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& agents,
                          const std::vector<std::string>& props, double edge_prob = 0.35);

// Greedy shrinking: repeatedly replaces subterms by smaller closed candidates
// while `still_fails` holds.
Formula shrink(Formula f, const std::function<bool(Formula)>& still_fails);

}  // namespace mucalc
