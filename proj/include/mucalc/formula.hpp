#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace mucalc {

enum class Kind : std::uint8_t { Tt, Ff, Prop, NegProp, Var, And, Or, Box, Dia, Mu, Nu };

struct Node;

// Hash-consed, immutable formula handle. Structurally equal formulas share
// one node, so equality and hashing are pointer operations.
class Formula {
 public:
  Formula() = default;

  Kind kind() const;
  // Proposition, variable or binder name.
  const std::string& name() const;
  const std::string& agent() const;
  // A variable occurrence negated by `negate` before its binder flipped.
  bool dual() const;
  Formula left() const;   // And/Or left, modal body, fixpoint body
  Formula right() const;  // And/Or right
  Formula body() const { return left(); }

  bool valid() const { return n_ != nullptr; }
  bool is_fixpoint() const { return kind() == Kind::Mu || kind() == Kind::Nu; }
  bool is_modal() const { return kind() == Kind::Box || kind() == Kind::Dia; }
  bool is_literal() const;
  std::size_t hash() const;
  std::uint32_t id() const;

  friend bool operator==(Formula a, Formula b) { return a.n_ == b.n_; }
  friend bool operator!=(Formula a, Formula b) { return a.n_ != b.n_; }

  const Node* node() const { return n_; }

 private:
  friend Formula make_node(Kind, bool, std::string_view, std::string_view, Formula, Formula);
  explicit Formula(const Node* n) : n_(n) {}
  const Node* n_ = nullptr;
};

struct FormulaHash {
  std::size_t operator()(Formula f) const { return f.hash(); }
};

// Constructors
Formula tt();
Formula ff();
Formula prop(std::string_view p);
Formula nprop(std::string_view p);
Formula var(std::string_view x, bool dual = false);
Formula conj(Formula a, Formula b);
Formula disj(Formula a, Formula b);
Formula box(std::string_view agent, Formula f);
Formula dia(std::string_view agent, Formula f);
Formula mu(std::string_view x, Formula f);
Formula nu(std::string_view x, Formula f);
Formula conj_all(const std::vector<Formula>& fs);  // empty -> tt, left-nested
Formula disj_all(const std::vector<Formula>& fs);  // empty -> ff
Formula implies(Formula a, Formula b);             // negate(a) | b

struct ParseOptions {
  bool allow_open = false;      // free recursion variables permitted
  bool allow_reserved = false;  // names starting with '_' permitted
};

Formula parse(std::string_view text, const ParseOptions& opts = {});
std::string print(Formula f);

// Binders made pairwise distinct; later duplicates get a numeric suffix.
Formula rename_binders(Formula f);

std::vector<Formula> subformulas(Formula f);  // pre-order, duplicates dropped
std::size_t size(Formula f);
std::vector<Formula> subbar(Formula f);
Formula negate(Formula f);
int modal_depth(Formula f);

std::vector<std::string> free_vars(Formula f);
bool is_closed(Formula f);
bool is_recursion_free(Formula f);
bool has_mu(Formula f);
std::vector<std::string> agents_of(Formula f);
std::vector<std::string> props_of(Formula f);
std::vector<std::string> bound_vars(Formula f);

Formula fx(std::string_view x, Formula root);
bool var_leq(std::string_view x, std::string_view y, Formula root);
bool is_least_var(std::string_view x, Formula root);
Formula substitute(Formula f, std::string_view x, Formula by);
Formula cl(Formula f, Formula root);

// A fresh name "_Z<k>" that does not occur anywhere in `avoid`.
std::string fresh_var(const std::vector<Formula>& avoid);

Formula box_all(const std::vector<std::string>& agents, Formula f);
Formula dia_any(const std::vector<std::string>& agents, Formula f);
Formula inv(Formula f, const std::vector<std::string>& agents);
Formula eve(Formula f, const std::vector<std::string>& agents);
Formula inv_d(Formula f, int d, const std::vector<std::string>& agents);

// Walks every node of the syntax tree (not the dag) in pre-order.
void visit(Formula f, const std::function<void(Formula)>& fn);
std::size_t tree_size(Formula f);

}  // namespace mucalc

template <>
struct std::hash<mucalc::Formula> {
  std::size_t operator()(mucalc::Formula f) const { return f.hash(); }
};
