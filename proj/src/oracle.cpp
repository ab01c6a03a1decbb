#include "mucalc/oracle.hpp"

#include <algorithm>

#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"

namespace mucalc {

namespace {

struct OVar {
  bool is_edge;
  std::size_t k;  // prop or agent index
  std::size_t i, j;
};

class Search {
 public:
  Search(Formula f, const LogicSpec& spec, std::size_t n, std::uint64_t budget)
      : f_(f), n_(n), budget_(budget) {
    agents_ = agents_of(f);
    props_ = props_of(f);
    for (const auto& a : agents_) conds_.push_back(spec.of(a));
    valT_.assign(props_.size(), StateSet(n));
    valF_.assign(props_.size(), StateSet(n));
    edgeT_.assign(agents_.size(), std::vector<StateSet>(n, StateSet(n)));
    edgeF_.assign(agents_.size(), std::vector<StateSet>(n, StateSet(n)));
    may_.assign(agents_.size(), std::vector<StateSet>(n, StateSet(n)));
    for (std::size_t a = 0; a < agents_.size(); ++a)
      if (conds_[a].has(Cond::T))
        for (std::size_t i = 0; i < n; ++i) edgeT_[a][i].set(i);
    // variables ordered by state: valuation bits, then outgoing edges
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t p = 0; p < props_.size(); ++p) vars_.push_back({false, p, i, 0});
      for (std::size_t a = 0; a < agents_.size(); ++a)
        for (std::size_t j = 0; j < n; ++j) {
          if (conds_[a].has(Cond::T) && i == j) continue;
          if (conds_[a].has(Cond::B) && j < i) continue;
          vars_.push_back({true, a, i, j});
        }
    }
    ctx_.n = n;
    ctx_.dia_rel = [this](const std::string& a) -> const std::vector<StateSet>* {
      auto k = agent_index(a);
      if (k == npos) return nullptr;
      for (std::size_t i = 0; i < n_; ++i) may_[k][i] = ~edgeF_[k][i];
      return &may_[k];
    };
    ctx_.box_rel = [this](const std::string& a) -> const std::vector<StateSet>* {
      auto k = agent_index(a);
      return k == npos ? nullptr : &edgeT_[k];
    };
    ctx_.pos = [this](const std::string& p) {
      auto k = prop_index(p);
      return k == npos ? StateSet(n_) : ~valF_[k];
    };
    ctx_.neg = [this](const std::string& p) {
      auto k = prop_index(p);
      StateSet all(n_);
      all.set();
      return k == npos ? all : ~valT_[k];
    };
  }

  // 1 found, 0 exhausted, -1 budget
  int run() { return dfs(0); }
  std::uint64_t nodes() const { return nodes_; }

  PointedModel model(const LogicSpec& spec) const {
    PointedModel pm;
    KripkeModel& m = pm.model;
    for (std::size_t i = 0; i < n_; ++i) m.add_state("s" + std::to_string(i));
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      m.add_agent(agents_[a]);
      for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j)
          if (edgeT_[a][i].test(j)) m.add_edge(agents_[a], i, j);
    }
    // agents named in `spec` but absent from f get the identity relation
    for (const auto& [a, c] : spec.agents)
      if (!m.has_agent(a))
        for (std::size_t i = 0; i < n_; ++i) m.add_edge(a, i, i);
    for (std::size_t p = 0; p < props_.size(); ++p) {
      m.add_prop(props_[p]);
      for (std::size_t i = 0; i < n_; ++i)
        if (valT_[p].test(i)) m.set_prop(props_[p], i);
    }
    pm.point = 0;
    return pm;
  }

 private:
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t agent_index(const std::string& a) const {
    auto it = std::find(agents_.begin(), agents_.end(), a);
    return it == agents_.end() ? npos : static_cast<std::size_t>(it - agents_.begin());
  }
  std::size_t prop_index(const std::string& p) const {
    auto it = std::find(props_.begin(), props_.end(), p);
    return it == props_.end() ? npos : static_cast<std::size_t>(it - props_.begin());
  }

  void assign(const OVar& v, bool value, bool undo) {
    if (!v.is_edge) {
      auto& target = value ? valT_[v.k] : valF_[v.k];
      target[v.i] = !undo;
      return;
    }
    auto& rel = value ? edgeT_[v.k] : edgeF_[v.k];
    rel[v.i][v.j] = !undo;
    if (conds_[v.k].has(Cond::B)) rel[v.j][v.i] = !undo;
  }

  bool frame_ok() const {
    for (std::size_t a = 0; a < agents_.size(); ++a) {
      const auto& T = edgeT_[a];
      const auto& F = edgeF_[a];
      CondSet c = conds_[a];
      for (std::size_t i = 0; i < n_; ++i) {
        if (c.has(Cond::D) && (T[i] | F[i]).all() && T[i].none()) return false;
        for (std::size_t j = T[i].find_first(); j != StateSet::npos; j = T[i].find_next(j)) {
          if (c.has(Cond::Four) && T[j].intersects(F[i])) return false;
          if (c.has(Cond::Five) && T[i].intersects(F[j])) return false;
        }
      }
    }
    return true;
  }

  bool upper_bound_ok() { return eval(ctx_, f_).test(0); }

  bool rooted() const {
    StateSet seen(n_), frontier(n_);
    seen.set(0);
    frontier.set(0);
    while (frontier.any()) {
      StateSet next(n_);
      for (std::size_t i = frontier.find_first(); i != StateSet::npos; i = frontier.find_next(i))
        for (const auto& rel : edgeT_) next |= rel[i];
      next -= seen;
      seen |= next;
      frontier = next;
    }
    return seen.all();
  }

  int dfs(std::size_t k) {
    if (++nodes_ > budget_) return -1;
    if (k == vars_.size()) {
      if (!rooted()) return 0;
      return upper_bound_ok() ? 1 : 0;
    }
    const OVar& v = vars_[k];
    for (bool value : {false, true}) {
      assign(v, value, false);
      if (frame_ok() && upper_bound_ok()) {
        int r = dfs(k + 1);
        if (r != 0) return r;
      }
      assign(v, value, true);
    }
    return 0;
  }

  Formula f_;
  std::size_t n_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::string> agents_, props_;
  std::vector<CondSet> conds_;
  std::vector<StateSet> valT_, valF_;
  std::vector<std::vector<StateSet>> edgeT_, edgeF_;
  mutable std::vector<std::vector<StateSet>> may_;
  std::vector<OVar> vars_;
  EvalContext ctx_;
};

}  // namespace

OracleResult sat_bounded(Formula f, const LogicSpec& spec, std::size_t max_states,
                         const OracleOptions& opts) {
  if (!is_closed(f)) throw Error("oracle: formula has free variables");
  if (max_states > opts.hard_cap)
    throw Error("oracle: max_states " + std::to_string(max_states) + " exceeds cap " +
                std::to_string(opts.hard_cap));
  OracleResult res;
  std::uint64_t left = opts.node_budget;
  for (std::size_t n = 1; n <= max_states; ++n) {
    Search s(f, spec, n, left);
    int r = s.run();
    res.nodes += s.nodes();
    if (r == 1) {
      res.status = OracleResult::Status::Found;
      res.n_states = n;
      res.witness = s.model(spec);
      if (!check(res.witness, f) || !satisfies_spec(res.witness.model, spec))
        throw Error("oracle: witness failed re-verification");
      return res;
    }
    if (r == -1) {
      res.status = OracleResult::Status::Budget;
      res.n_states = n;
      return res;
    }
    left -= std::min(left, s.nodes());
  }
  res.status = OracleResult::Status::NoneWithin;
  res.n_states = max_states;
  return res;
}

// ------------------------------------------------------------- generation

Formula FormulaGen::gen(int depth, std::vector<std::string>& scope, int& counter) {
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); };
  bool binders = opts_.allow_mu || opts_.allow_nu;
  if (depth <= 0 || coin(rng_) < 0.15) {
    if (!scope.empty() && coin(rng_) < 0.35) return var(scope[pick(scope.size())]);
    double r = coin(rng_);
    if (r < 0.08) return tt();
    if (r < 0.14) return ff();
    const std::string& p = opts_.props[pick(opts_.props.size())];
    return r < 0.6 ? prop(p) : nprop(p);
  }
  if (binders && coin(rng_) < opts_.fixpoint_prob) {
    std::string x = std::string(1, static_cast<char>('X' + counter % 3)) + std::to_string(counter);
    ++counter;
    scope.push_back(x);
    Formula b = gen(depth - 1, scope, counter);
    scope.pop_back();
    bool least = opts_.allow_mu && (!opts_.allow_nu || coin(rng_) < 0.5);
    return least ? mu(x, b) : nu(x, b);
  }
  switch (pick(4)) {
    case 0: {
      Formula l = gen(depth - 1, scope, counter);
      return conj(l, gen(depth - 1, scope, counter));
    }
    case 1: {
      Formula l = gen(depth - 1, scope, counter);
      return disj(l, gen(depth - 1, scope, counter));
    }
    case 2: return box(opts_.agents[pick(opts_.agents.size())], gen(depth - 1, scope, counter));
    default: return dia(opts_.agents[pick(opts_.agents.size())], gen(depth - 1, scope, counter));
  }
}

Formula FormulaGen::next() {
  for (;;) {
    std::vector<std::string> scope;
    int counter = 0;
    Formula f = rename_binders(gen(opts_.max_depth, scope, counter));
    std::size_t s = size(f);
    if (s >= opts_.min_size && s <= opts_.max_size) return f;
  }
}

PointedModel random_model(std::mt19937_64& rng, std::size_t n, const std::vector<std::string>& agents,
                          const std::vector<std::string>& props, double edge_prob) {
  std::bernoulli_distribution edge(edge_prob), half(0.5);
  PointedModel pm;
  for (std::size_t i = 0; i < n; ++i) pm.model.add_state("s" + std::to_string(i));
  for (const auto& a : agents) {
    pm.model.add_agent(a);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (edge(rng)) pm.model.add_edge(a, i, j);
  }
  for (const auto& p : props) {
    pm.model.add_prop(p);
    for (std::size_t i = 0; i < n; ++i)
      if (half(rng)) pm.model.set_prop(p, i);
  }
  pm.point = 0;
  return pm;
}

// --------------------------------------------------------------- shrinking

namespace {

// All formulas obtained from f by one local simplification.
std::vector<Formula> one_step(Formula f) {
  std::vector<Formula> out;
  if (f.kind() != Kind::Tt) out.push_back(tt());
  if (f.kind() != Kind::Ff) out.push_back(ff());
  switch (f.kind()) {
    case Kind::And:
    case Kind::Or: {
      out.push_back(f.left());
      out.push_back(f.right());
      for (Formula l : one_step(f.left()))
        out.push_back(f.kind() == Kind::And ? conj(l, f.right()) : disj(l, f.right()));
      for (Formula r : one_step(f.right()))
        out.push_back(f.kind() == Kind::And ? conj(f.left(), r) : disj(f.left(), r));
      break;
    }
    case Kind::Box:
    case Kind::Dia:
      out.push_back(f.body());
      for (Formula b : one_step(f.body()))
        out.push_back(f.kind() == Kind::Box ? box(f.agent(), b) : dia(f.agent(), b));
      break;
    case Kind::Mu:
    case Kind::Nu:
      out.push_back(substitute(f.body(), f.name(), f.kind() == Kind::Mu ? ff() : tt()));
      out.push_back(f.body());
      for (Formula b : one_step(f.body()))
        out.push_back(f.kind() == Kind::Mu ? mu(f.name(), b) : nu(f.name(), b));
      break;
    default: break;
  }
  return out;
}

}  // namespace

Formula shrink(Formula f, const std::function<bool(Formula)>& still_fails) {
  bool progress = true;
  while (progress) {
    progress = false;
    std::vector<Formula> cands = one_step(f);
    std::stable_sort(cands.begin(), cands.end(),
                     [](Formula a, Formula b) { return tree_size(a) < tree_size(b); });
    for (Formula c : cands) {
      if (!is_closed(c) || tree_size(c) >= tree_size(f)) continue;
      if (still_fails(c)) {
        f = c;
        progress = true;
        break;
      }
    }
  }
  return f;
}

std::string oracle_status(const OracleResult& r) {
  switch (r.status) {
    case OracleResult::Status::Found: return "found(" + std::to_string(r.n_states) + ")";
    case OracleResult::Status::NoneWithin: return "none(" + std::to_string(r.n_states) + ")";
    case OracleResult::Status::Budget: break;
  }
  return "budget";
}

DiffReport differential(Formula f, Formula g, const LogicSpec& spec_f, const LogicSpec& spec_g,
                        const DiffOptions& opts) {
  DiffReport r;
  r.oracle_f = sat_bounded(f, spec_f, opts.cap_f, opts.oracle);
  r.oracle_g = sat_bounded(g, spec_g, opts.cap_g, opts.oracle);
  if (opts.tableau_f) r.tableau_f = solve(f, spec_f, opts.tableau);
  if (opts.tableau_g) r.tableau_g = solve(g, spec_g, opts.tableau);
  r.sat_f = r.oracle_f.found() || r.tableau_f.sat();
  r.sat_g = r.oracle_g.found() || r.tableau_g.sat();
  r.unsat_f = r.tableau_f.unsat();
  r.unsat_g = r.tableau_g.unsat();
  if (r.sat_f && r.unsat_f) r.reason = "f: oracle model against tableau refutation";
  else if (r.sat_g && r.unsat_g) r.reason = "g: oracle model against tableau refutation";
  else if (r.sat_f && r.unsat_g) r.reason = "f satisfiable, g refuted";
  else if (r.sat_g && r.unsat_f) r.reason = "g satisfiable, f refuted";
  r.contradiction = !r.reason.empty();
  r.gap = (r.oracle_f.found() && r.oracle_g.none()) || (r.oracle_g.found() && r.oracle_f.none());
  return r;
}

}  // namespace mucalc
