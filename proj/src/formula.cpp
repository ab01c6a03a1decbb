#include "mucalc/formula.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <limits>
#include <mutex>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mucalc/error.hpp"

namespace mucalc {

struct Node {
  Kind kind;
  bool dual;
  std::string name;
  std::string agent;
  const Node* l;
  const Node* r;
  std::size_t hash;
  std::uint32_t id;
};

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

struct NodeKeyHash {
  std::size_t operator()(const Node* n) const { return n->hash; }
};
struct NodeKeyEq {
  bool operator()(const Node* a, const Node* b) const {
    return a->kind == b->kind && a->dual == b->dual && a->l == b->l && a->r == b->r &&
           a->name == b->name && a->agent == b->agent;
  }
};

struct InternTable {
  std::mutex mu;
  std::deque<Node> nodes;
  std::unordered_set<const Node*, NodeKeyHash, NodeKeyEq> index;
};

InternTable& table() {
  static InternTable t;
  return t;
}

}  // namespace

Formula make_node(Kind k, bool dual, std::string_view name, std::string_view agent, Formula l,
                  Formula r) {
  Node probe{k, dual, std::string(name), std::string(agent), l.n_, r.n_, 0, 0};
  std::size_t h = static_cast<std::size_t>(k) * 31 + (dual ? 7 : 0);
  h = mix(h, std::hash<std::string>{}(probe.name));
  h = mix(h, std::hash<std::string>{}(probe.agent));
  h = mix(h, l.n_ ? l.n_->hash : 0);
  h = mix(h, r.n_ ? r.n_->hash : 0);
  probe.hash = h;
  auto& t = table();
  std::lock_guard<std::mutex> lock(t.mu);
  auto it = t.index.find(&probe);
  if (it != t.index.end()) return Formula(*it);
  probe.id = static_cast<std::uint32_t>(t.nodes.size());
  t.nodes.push_back(std::move(probe));
  const Node* n = &t.nodes.back();
  t.index.insert(n);
  return Formula(n);
}

Kind Formula::kind() const { return n_->kind; }
const std::string& Formula::name() const { return n_->name; }
const std::string& Formula::agent() const { return n_->agent; }
bool Formula::dual() const { return n_->dual; }
Formula Formula::left() const { return Formula(n_->l); }
Formula Formula::right() const { return Formula(n_->r); }
std::size_t Formula::hash() const { return n_ ? n_->hash : 0; }
std::uint32_t Formula::id() const { return n_->id; }
bool Formula::is_literal() const {
  Kind k = kind();
  return k == Kind::Tt || k == Kind::Ff || k == Kind::Prop || k == Kind::NegProp;
}

Formula tt() { return make_node(Kind::Tt, false, "", "", {}, {}); }
Formula ff() { return make_node(Kind::Ff, false, "", "", {}, {}); }
Formula prop(std::string_view p) { return make_node(Kind::Prop, false, p, "", {}, {}); }
Formula nprop(std::string_view p) { return make_node(Kind::NegProp, false, p, "", {}, {}); }
Formula var(std::string_view x, bool dual) { return make_node(Kind::Var, dual, x, "", {}, {}); }
Formula conj(Formula a, Formula b) { return make_node(Kind::And, false, "", "", a, b); }
Formula disj(Formula a, Formula b) { return make_node(Kind::Or, false, "", "", a, b); }
Formula box(std::string_view a, Formula f) { return make_node(Kind::Box, false, "", a, f, {}); }
Formula dia(std::string_view a, Formula f) { return make_node(Kind::Dia, false, "", a, f, {}); }
Formula mu(std::string_view x, Formula f) { return make_node(Kind::Mu, false, x, "", f, {}); }
Formula nu(std::string_view x, Formula f) { return make_node(Kind::Nu, false, x, "", f, {}); }

Formula conj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return tt();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = conj(acc, fs[i]);
  return acc;
}

Formula disj_all(const std::vector<Formula>& fs) {
  if (fs.empty()) return ff();
  Formula acc = fs[0];
  for (std::size_t i = 1; i < fs.size(); ++i) acc = disj(acc, fs[i]);
  return acc;
}

Formula implies(Formula a, Formula b) { return disj(negate(a), b); }

// ---------------------------------------------------------------- parsing

namespace {

enum class Tok { End, Ident, Var, LParen, RParen, And, Or, Lt, Gt, LBrack, RBrack, Tilde, Dot };

struct Token {
  Tok t;
  std::string text;
  std::size_t pos;
};

class Lexer {
 public:
  Lexer(std::string_view s, bool allow_reserved) : s_(s), allow_reserved_(allow_reserved) {}

  Token next() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    std::size_t p = i_;
    if (i_ >= s_.size()) return {Tok::End, "", p};
    char c = s_[i_];
    auto single = [&](Tok t) {
      ++i_;
      return Token{t, std::string(1, c), p};
    };
    switch (c) {
      case '(': return single(Tok::LParen);
      case ')': return single(Tok::RParen);
      case '&': return single(Tok::And);
      case '|': return single(Tok::Or);
      case '<': return single(Tok::Lt);
      case '>': return single(Tok::Gt);
      case '[': return single(Tok::LBrack);
      case ']': return single(Tok::RBrack);
      case '~': return single(Tok::Tilde);
      case '.': return single(Tok::Dot);
      default: break;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i_ + 1;
      while (j < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_'))
        ++j;
      std::string word(s_.substr(i_, j - i_));
      i_ = j;
      if (word[0] == '_') {
        if (!allow_reserved_) throw ParseError(p, "reserved name '" + word + "'");
        if (word.size() < 2) throw ParseError(p, "bad identifier '_'");
        bool upper = std::isupper(static_cast<unsigned char>(word[1]));
        return {upper ? Tok::Var : Tok::Ident, word, p};
      }
      bool upper = std::isupper(static_cast<unsigned char>(c));
      return {upper ? Tok::Var : Tok::Ident, word, p};
    }
    throw ParseError(p, std::string("unexpected character '") + c + "'");
  }

 private:
  std::string_view s_;
  bool allow_reserved_;
  std::size_t i_ = 0;
};

class Parser {
 public:
  Parser(std::string_view s, const ParseOptions& o) : lex_(s, o.allow_reserved), opts_(o) {
    advance();
  }

  Formula run() {
    Formula f = parse_or();
    if (cur_.t != Tok::End) throw ParseError(cur_.pos, "unexpected '" + cur_.text + "'");
    return f;
  }

 private:
  void advance() { cur_ = lex_.next(); }

  void expect(Tok t, const char* what) {
    if (cur_.t != t)
      throw ParseError(cur_.pos, std::string("expected ") + what +
                                     (cur_.t == Tok::End ? " at end of input"
                                                         : ", found '" + cur_.text + "'"));
    advance();
  }

  bool bound(const std::string& x) const {
    return std::find(scope_.begin(), scope_.end(), x) != scope_.end();
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (cur_.t == Tok::Or) {
      advance();
      f = disj(f, parse_and());
    }
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (cur_.t == Tok::And) {
      advance();
      f = conj(f, parse_unary());
    }
    return f;
  }

  std::string agent_name() {
    if (cur_.t != Tok::Ident) throw ParseError(cur_.pos, "expected agent name");
    std::string a = cur_.text;
    advance();
    return a;
  }

  Formula parse_unary() {
    Token t = cur_;
    switch (t.t) {
      case Tok::LParen: {
        advance();
        Formula f = parse_or();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::Tilde: {
        advance();
        if (cur_.t == Tok::Ident && !keyword(cur_.text)) {
          std::string p = cur_.text;
          advance();
          return nprop(p);
        }
        if (cur_.t == Tok::Var && opts_.allow_open && !bound(cur_.text)) {
          std::string x = cur_.text;
          advance();
          return var(x, true);
        }
        throw ParseError(cur_.pos, "'~' applies only to propositions");
      }
      case Tok::Lt: {
        advance();
        std::string a = agent_name();
        expect(Tok::Gt, "'>'");
        return dia(a, parse_unary());
      }
      case Tok::LBrack: {
        advance();
        std::string a = agent_name();
        expect(Tok::RBrack, "']'");
        return box(a, parse_unary());
      }
      case Tok::Var: {
        advance();
        if (!bound(t.text) && !opts_.allow_open)
          throw ParseError(t.pos, "unbound variable '" + t.text + "'");
        return var(t.text);
      }
      case Tok::Ident: {
        if (t.text == "tt") {
          advance();
          return tt();
        }
        if (t.text == "ff") {
          advance();
          return ff();
        }
        if (t.text == "mu" || t.text == "nu") {
          advance();
          if (cur_.t != Tok::Var) throw ParseError(cur_.pos, "expected recursion variable");
          std::string x = cur_.text;
          advance();
          expect(Tok::Dot, "'.'");
          scope_.push_back(x);
          Formula b = parse_or();
          scope_.pop_back();
          return t.text == "mu" ? mu(x, b) : nu(x, b);
        }
        if (t.text == "neg") {
          advance();
          if (cur_.t == Tok::LParen) {
            std::size_t at = cur_.pos;
            advance();
            Formula inner = parse_or();
            expect(Tok::RParen, "')'");
            Formula n = negate(inner);
            for (const auto& x : free_vars_dual(n))
              if (bound(x)) throw ParseError(at, "neg(...) would negate bound variable '" + x + "'");
            return n;
          }
          return prop("neg");
        }
        advance();
        return prop(t.text);
      }
      case Tok::End: throw ParseError(t.pos, "unexpected end of input");
      default: throw ParseError(t.pos, "unexpected '" + t.text + "'");
    }
  }

  static bool keyword(const std::string& w) {
    return w == "tt" || w == "ff" || w == "mu" || w == "nu";
  }

  static std::vector<std::string> free_vars_dual(Formula f) {
    std::vector<std::string> out;
    std::vector<std::string> binders;
    std::function<void(Formula)> go = [&](Formula g) {
      switch (g.kind()) {
        case Kind::Var:
          if (g.dual() && std::find(binders.begin(), binders.end(), g.name()) == binders.end())
            out.push_back(g.name());
          break;
        case Kind::And:
        case Kind::Or:
          go(g.left());
          go(g.right());
          break;
        case Kind::Box:
        case Kind::Dia: go(g.body()); break;
        case Kind::Mu:
        case Kind::Nu:
          binders.push_back(g.name());
          go(g.body());
          binders.pop_back();
          break;
        default: break;
      }
    };
    go(f);
    return out;
  }

  Lexer lex_;
  ParseOptions opts_;
  Token cur_{};
  std::vector<std::string> scope_;
};

}  // namespace

Formula parse(std::string_view text, const ParseOptions& opts) {
  Parser p(text, opts);
  return rename_binders(p.run());
}

// --------------------------------------------------------------- printing

namespace {

bool is_binary(Formula f) { return f.kind() == Kind::And || f.kind() == Kind::Or; }

void print_to(Formula f, std::string& out, bool top);

void print_operand(Formula f, std::string& out, bool paren) {
  if (paren || f.is_fixpoint()) {
    out += '(';
    print_to(f, out, true);
    out += ')';
  } else {
    print_to(f, out, false);
  }
}

void print_to(Formula f, std::string& out, bool top) {
  (void)top;
  switch (f.kind()) {
    case Kind::Tt: out += "tt"; break;
    case Kind::Ff: out += "ff"; break;
    case Kind::Prop: out += f.name(); break;
    case Kind::NegProp: out += "~" + f.name(); break;
    case Kind::Var:
      if (f.dual()) out += '~';
      out += f.name();
      break;
    case Kind::And:
      print_operand(f.left(), out, f.left().kind() == Kind::Or);
      out += " & ";
      print_operand(f.right(), out, is_binary(f.right()));
      break;
    case Kind::Or:
      print_operand(f.left(), out, false);
      out += " | ";
      print_operand(f.right(), out, f.right().kind() == Kind::Or);
      break;
    case Kind::Box:
    case Kind::Dia:
      out += f.kind() == Kind::Box ? "[" : "<";
      out += f.agent();
      out += f.kind() == Kind::Box ? "] " : "> ";
      print_operand(f.body(), out, is_binary(f.body()));
      break;
    case Kind::Mu:
    case Kind::Nu:
      out += f.kind() == Kind::Mu ? "mu " : "nu ";
      out += f.name();
      out += ". ";
      print_to(f.body(), out, true);
      break;
  }
}

}  // namespace

std::string print(Formula f) {
  std::string out;
  print_to(f, out, true);
  return out;
}

// ------------------------------------------------------------ traversals

void visit(Formula f, const std::function<void(Formula)>& fn) {
  fn(f);
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or:
      visit(f.left(), fn);
      visit(f.right(), fn);
      break;
    case Kind::Box:
    case Kind::Dia:
    case Kind::Mu:
    case Kind::Nu: visit(f.body(), fn); break;
    default: break;
  }
}

std::size_t tree_size(Formula f) {
  std::unordered_map<Formula, std::size_t> memo;
  const std::size_t cap = std::numeric_limits<std::size_t>::max() / 4;
  std::function<std::size_t(Formula)> go = [&](Formula g) -> std::size_t {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::size_t n = 1;
    switch (g.kind()) {
      case Kind::And:
      case Kind::Or: n += go(g.left()) + go(g.right()); break;
      case Kind::Box:
      case Kind::Dia:
      case Kind::Mu:
      case Kind::Nu: n += go(g.body()); break;
      default: break;
    }
    n = std::min(n, cap);
    memo[g] = n;
    return n;
  };
  return go(f);
}

std::vector<Formula> subformulas(Formula f) {
  std::vector<Formula> out;
  std::unordered_set<Formula> seen;
  std::vector<Formula> stack{f};
  while (!stack.empty()) {
    Formula g = stack.back();
    stack.pop_back();
    if (!seen.insert(g).second) continue;
    out.push_back(g);
    switch (g.kind()) {
      case Kind::And:
      case Kind::Or:
        stack.push_back(g.right());
        stack.push_back(g.left());
        break;
      case Kind::Box:
      case Kind::Dia:
      case Kind::Mu:
      case Kind::Nu: stack.push_back(g.body()); break;
      default: break;
    }
  }
  return out;
}

std::size_t size(Formula f) { return subformulas(f).size(); }

std::vector<Formula> subbar(Formula f) {
  std::vector<Formula> out = subformulas(f);
  std::unordered_set<Formula> seen(out.begin(), out.end());
  std::size_t n = out.size();
  for (std::size_t i = 0; i < n; ++i) {
    Formula g = negate(out[i]);
    if (seen.insert(g).second) out.push_back(g);
  }
  return out;
}

namespace {

Formula flip_var(Formula f, const std::string& x, std::unordered_map<Formula, Formula>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula r = f;
  switch (f.kind()) {
    case Kind::Var:
      if (f.name() == x) r = var(x, !f.dual());
      break;
    case Kind::And: r = conj(flip_var(f.left(), x, memo), flip_var(f.right(), x, memo)); break;
    case Kind::Or: r = disj(flip_var(f.left(), x, memo), flip_var(f.right(), x, memo)); break;
    case Kind::Box: r = box(f.agent(), flip_var(f.body(), x, memo)); break;
    case Kind::Dia: r = dia(f.agent(), flip_var(f.body(), x, memo)); break;
    case Kind::Mu:
    case Kind::Nu:
      if (f.name() != x) {
        Formula b = flip_var(f.body(), x, memo);
        r = f.kind() == Kind::Mu ? mu(f.name(), b) : nu(f.name(), b);
      }
      break;
    default: break;
  }
  memo[f] = r;
  return r;
}

Formula negate_memo(Formula f, std::unordered_map<Formula, Formula>& memo) {
  auto it = memo.find(f);
  if (it != memo.end()) return it->second;
  Formula r;
  switch (f.kind()) {
    case Kind::Tt: r = ff(); break;
    case Kind::Ff: r = tt(); break;
    case Kind::Prop: r = nprop(f.name()); break;
    case Kind::NegProp: r = prop(f.name()); break;
    case Kind::Var: r = var(f.name(), !f.dual()); break;
    case Kind::And: r = disj(negate_memo(f.left(), memo), negate_memo(f.right(), memo)); break;
    case Kind::Or: r = conj(negate_memo(f.left(), memo), negate_memo(f.right(), memo)); break;
    case Kind::Box: r = dia(f.agent(), negate_memo(f.body(), memo)); break;
    case Kind::Dia: r = box(f.agent(), negate_memo(f.body(), memo)); break;
    case Kind::Mu:
    case Kind::Nu: {
      std::unordered_map<Formula, Formula> fm;
      Formula b = flip_var(negate_memo(f.body(), memo), f.name(), fm);
      r = f.kind() == Kind::Mu ? nu(f.name(), b) : mu(f.name(), b);
      break;
    }
  }
  memo[f] = r;
  return r;
}

}  // namespace

Formula negate(Formula f) {
  std::unordered_map<Formula, Formula> memo;
  return negate_memo(f, memo);
}

int modal_depth(Formula f) {
  switch (f.kind()) {
    case Kind::Var:
    case Kind::Mu:
    case Kind::Nu: throw Error("modal_depth: formula contains fixed points");
    case Kind::And:
    case Kind::Or: return std::max(modal_depth(f.left()), modal_depth(f.right()));
    case Kind::Box:
    case Kind::Dia: return 1 + modal_depth(f.body());
    default: return 0;
  }
}

std::vector<std::string> free_vars(Formula f) {
  // memoized over the dag; shared subterms are visited once
  std::unordered_map<Formula, std::set<std::string>> memo;
  std::function<const std::set<std::string>&(Formula)> go =
      [&](Formula g) -> const std::set<std::string>& {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    std::set<std::string> out;
    switch (g.kind()) {
      case Kind::Var: out.insert(g.name()); break;
      case Kind::And:
      case Kind::Or: {
        out = go(g.left());
        const auto& r = go(g.right());
        out.insert(r.begin(), r.end());
        break;
      }
      case Kind::Box:
      case Kind::Dia: out = go(g.body()); break;
      case Kind::Mu:
      case Kind::Nu:
        out = go(g.body());
        out.erase(g.name());
        break;
      default: break;
    }
    return memo.emplace(g, std::move(out)).first->second;
  };
  const auto& s = go(f);
  return {s.begin(), s.end()};
}

bool is_closed(Formula f) { return free_vars(f).empty(); }

bool is_recursion_free(Formula f) {
  for (Formula g : subformulas(f))
    if (g.kind() == Kind::Var || g.is_fixpoint()) return false;
  return true;
}

bool has_mu(Formula f) {
  for (Formula g : subformulas(f))
    if (g.kind() == Kind::Mu) return true;
  return false;
}

std::vector<std::string> agents_of(Formula f) {
  std::set<std::string> s;
  for (Formula g : subformulas(f))
    if (g.is_modal()) s.insert(g.agent());
  return {s.begin(), s.end()};
}

std::vector<std::string> props_of(Formula f) {
  std::set<std::string> s;
  for (Formula g : subformulas(f))
    if (g.kind() == Kind::Prop || g.kind() == Kind::NegProp) s.insert(g.name());
  return {s.begin(), s.end()};
}

std::vector<std::string> bound_vars(Formula f) {
  std::vector<std::string> out;
  for (Formula g : subformulas(f))
    if (g.is_fixpoint() && std::find(out.begin(), out.end(), g.name()) == out.end())
      out.push_back(g.name());
  return out;
}

Formula rename_binders(Formula f) {
  std::unordered_set<std::string> used;
  for (Formula g : subformulas(f))
    if (g.kind() == Kind::Var || g.is_fixpoint()) used.insert(g.name());
  std::unordered_set<std::string> taken;
  std::vector<std::pair<std::string, std::string>> scope;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    switch (g.kind()) {
      case Kind::Var:
        for (auto it = scope.rbegin(); it != scope.rend(); ++it)
          if (it->first == g.name()) return var(it->second, g.dual());
        return g;
      case Kind::And:
      case Kind::Or: {
        Formula l = go(g.left());  // left first: binder numbering follows reading order
        Formula r = go(g.right());
        return g.kind() == Kind::And ? conj(l, r) : disj(l, r);
      }
      case Kind::Box: return box(g.agent(), go(g.body()));
      case Kind::Dia: return dia(g.agent(), go(g.body()));
      case Kind::Mu:
      case Kind::Nu: {
        std::string name = g.name();
        if (taken.count(name)) {
          int k = 1;
          while (used.count(g.name() + "_" + std::to_string(k)) ||
                 taken.count(g.name() + "_" + std::to_string(k)))
            ++k;
          name = g.name() + "_" + std::to_string(k);
        }
        taken.insert(name);
        scope.emplace_back(g.name(), name);
        Formula b = go(g.body());
        scope.pop_back();
        return g.kind() == Kind::Mu ? mu(name, b) : nu(name, b);
      }
      default: return g;
    }
  };
  return go(f);
}

Formula fx(std::string_view x, Formula root) {
  for (Formula g : subformulas(root))
    if (g.is_fixpoint() && g.name() == x) return g;
  throw Error("variable '" + std::string(x) + "' is not bound");
}

bool var_leq(std::string_view x, std::string_view y, Formula root) {
  Formula fy = fx(y, root);
  Formula fxx = fx(x, root);
  for (Formula g : subformulas(fy))
    if (g == fxx) return true;
  return false;
}

bool is_least_var(std::string_view x, Formula root) { return fx(x, root).kind() == Kind::Mu; }

Formula substitute(Formula f, std::string_view x, Formula by) {
  std::unordered_map<Formula, Formula> memo;
  Formula nby;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g.kind()) {
      case Kind::Var:
        if (g.name() == x) {
          if (g.dual()) {
            if (!nby.valid()) nby = negate(by);
            r = nby;
          } else {
            r = by;
          }
        }
        break;
      case Kind::And: r = conj(go(g.left()), go(g.right())); break;
      case Kind::Or: r = disj(go(g.left()), go(g.right())); break;
      case Kind::Box: r = box(g.agent(), go(g.body())); break;
      case Kind::Dia: r = dia(g.agent(), go(g.body())); break;
      case Kind::Mu:
      case Kind::Nu:
        if (g.name() != x) {
          Formula b = go(g.body());
          r = g.kind() == Kind::Mu ? mu(g.name(), b) : nu(g.name(), b);
        }
        break;
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

Formula cl(Formula f, Formula root) {
  for (;;) {
    std::vector<std::string> fv = free_vars(f);
    if (fv.empty()) return f;
    std::string pick;
    for (const auto& x : fv) {
      fx(x, root);  // throws if unbound
      bool minimal = true;
      for (const auto& y : fv)
        if (y != x && var_leq(y, x, root)) minimal = false;
      if (minimal) {
        pick = x;
        break;
      }
    }
    if (pick.empty()) pick = fv.front();
    f = substitute(f, pick, fx(pick, root));
  }
}

std::string fresh_var(const std::vector<Formula>& avoid) {
  std::unordered_set<std::string> names;
  for (Formula f : avoid)
    for (Formula g : subformulas(f))
      if (g.kind() == Kind::Var || g.is_fixpoint()) names.insert(g.name());
  for (int k = 0;; ++k) {
    std::string n = "_Z" + std::to_string(k);
    if (!names.count(n)) return n;
  }
}

Formula box_all(const std::vector<std::string>& agents, Formula f) {
  std::vector<Formula> parts;
  for (const auto& a : agents) parts.push_back(box(a, f));
  return conj_all(parts);
}

Formula dia_any(const std::vector<std::string>& agents, Formula f) {
  std::vector<Formula> parts;
  for (const auto& a : agents) parts.push_back(dia(a, f));
  return disj_all(parts);
}

Formula inv(Formula f, const std::vector<std::string>& agents) {
  std::string z = fresh_var({f});
  return nu(z, conj(f, box_all(agents, var(z))));
}

Formula eve(Formula f, const std::vector<std::string>& agents) {
  std::string z = fresh_var({f});
  return mu(z, disj(f, dia_any(agents, var(z))));
}

Formula inv_d(Formula f, int d, const std::vector<std::string>& agents) {
  std::vector<Formula> parts{f};
  Formula cur = f;
  for (int i = 1; i <= d; ++i) {
    cur = box_all(agents, cur);
    parts.push_back(cur);
  }
  return conj_all(parts);
}

}  // namespace mucalc
