#include "mucalc/modelcheck.hpp"

#include <unordered_map>

#include "mucalc/error.hpp"

namespace mucalc {

EvalContext context_of(const KripkeModel& m) {
  EvalContext ctx;
  ctx.n = m.size();
  auto rel = [&m](const std::string& a) -> const std::vector<StateSet>* {
    return m.has_agent(a) ? &m.succ(a) : nullptr;
  };
  ctx.dia_rel = rel;
  ctx.box_rel = rel;
  ctx.pos = [&m](const std::string& p) { return m.prop_set(p); };
  ctx.neg = [&m](const std::string& p) { return ~m.prop_set(p); };
  return ctx;
}

namespace {

StateSet diamond(const std::vector<StateSet>* r, const StateSet& s, std::size_t n) {
  StateSet out(n);
  if (!r) return out;
  for (std::size_t i = 0; i < n; ++i)
    if ((*r)[i].intersects(s)) out.set(i);
  return out;
}

StateSet boxset(const std::vector<StateSet>* r, const StateSet& s, std::size_t n) {
  StateSet out(n);
  out.set();
  if (!r) return out;
  for (std::size_t i = 0; i < n; ++i)
    if (!(*r)[i].is_subset_of(s)) out.reset(i);
  return out;
}

class Evaluator {
 public:
  Evaluator(const EvalContext& ctx, bool by_subsets) : ctx_(ctx), subsets_(by_subsets) {}

  StateSet run(Formula f, Environment& env) {
    auto c = closed_.find(f);
    bool closed;
    if (c == closed_.end()) {
      closed = is_closed(f);
      closed_[f] = closed;
    } else {
      closed = c->second;
    }
    if (closed) {
      auto it = memo_.find(f);
      if (it != memo_.end()) return it->second;
    }
    StateSet r = compute(f, env);
    if (closed) memo_[f] = r;
    return r;
  }

 private:
  StateSet compute(Formula f, Environment& env) {
    std::size_t n = ctx_.n;
    switch (f.kind()) {
      case Kind::Tt: {
        StateSet s(n);
        s.set();
        return s;
      }
      case Kind::Ff: return StateSet(n);
      case Kind::Prop: return ctx_.pos(f.name());
      case Kind::NegProp: return ctx_.neg(f.name());
      case Kind::Var: {
        auto it = env.find(f.name());
        if (it == env.end()) throw Error("unassigned variable '" + f.name() + "'");
        return f.dual() ? ~it->second : it->second;
      }
      case Kind::And: return run(f.left(), env) & run(f.right(), env);
      case Kind::Or: return run(f.left(), env) | run(f.right(), env);
      case Kind::Dia: return diamond(ctx_.dia_rel(f.agent()), run(f.body(), env), n);
      case Kind::Box: return boxset(ctx_.box_rel(f.agent()), run(f.body(), env), n);
      case Kind::Mu:
      case Kind::Nu: return subsets_ ? fix_subsets(f, env) : fix_iterate(f, env);
    }
    return StateSet(n);
  }

  // Scoped rebinding of a variable for the duration of one evaluation.
  template <class Fn>
  StateSet with_binding(Environment& env, const std::string& x, const StateSet& s, Fn fn) {
    auto it = env.find(x);
    bool had = it != env.end();
    StateSet saved = had ? it->second : StateSet();
    env[x] = s;
    StateSet r = fn();
    if (had)
      env[x] = saved;
    else
      env.erase(x);
    return r;
  }

  StateSet fix_iterate(Formula f, Environment& env) {
    std::size_t n = ctx_.n;
    StateSet cur(n);
    if (f.kind() == Kind::Nu) cur.set();
    for (;;) {
      StateSet next = with_binding(env, f.name(), cur, [&] { return run(f.body(), env); });
      if (next == cur) return cur;
      cur = std::move(next);
    }
  }

  StateSet fix_subsets(Formula f, Environment& env) {
    std::size_t n = ctx_.n;
    if (n > 20) throw Error("subset semantics limited to 20 states");
    StateSet acc(n);
    bool least = f.kind() == Kind::Mu;
    if (least) acc.set();
    for (unsigned long code = 0; code < (1UL << n); ++code) {
      StateSet s(n, code);
      StateSet img = with_binding(env, f.name(), s, [&] { return run(f.body(), env); });
      if (least && img.is_subset_of(s)) acc &= s;
      if (!least && s.is_subset_of(img)) acc |= s;
    }
    return acc;
  }

  const EvalContext& ctx_;
  bool subsets_;
  std::unordered_map<Formula, bool> closed_;
  std::unordered_map<Formula, StateSet> memo_;
};

}  // namespace

StateSet eval(const EvalContext& ctx, Formula f, const Environment& env) {
  Environment e = env;
  Evaluator ev(ctx, false);
  return ev.run(f, e);
}

StateSet eval(const KripkeModel& m, Formula f, const Environment& env) {
  return eval(context_of(m), f, env);
}

bool check(const PointedModel& pm, Formula f) {
  if (!is_closed(f)) throw Error("check: formula has free variables");
  return eval(pm.model, f).test(pm.point);
}

StateSet eval_by_subsets(const KripkeModel& m, Formula f, const Environment& env) {
  Environment e = env;
  EvalContext ctx = context_of(m);
  Evaluator ev(ctx, true);
  return ev.run(f, e);
}

}  // namespace mucalc
