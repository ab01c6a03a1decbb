#include "mucalc/tableau.hpp"

#include <algorithm>
#include <set>

#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"
#include "depgraph.hpp"

namespace mucalc {

namespace {

std::uint64_t key2(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

}  // namespace

std::string verdict_name(Verdict::Kind k) {
  switch (k) {
    case Verdict::Kind::Sat: return "SAT";
    case Verdict::Kind::Unsat: return "UNSAT";
    case Verdict::Kind::Unknown: return "UNKNOWN";
  }
  return "?";
}

std::string rule_name(Rule r) {
  switch (r) {
    case Rule::Fix: return "fix";
    case Rule::Var: return "X";
    case Rule::Or: return "or";
    case Rule::And: return "and";
    case Rule::B: return "B";
    case Rule::D: return "D";
    case Rule::d: return "d";
    case Rule::Four: return "4";
    case Rule::t: return "t";
    case Rule::b: return "b";
    case Rule::b4: return "b4";
    case Rule::B5: return "B5";
    case Rule::D5: return "D5";
    case Rule::B55: return "B55";
    case Rule::D55: return "D55";
  }
  return "?";
}

bool creates_prefix(Rule r) {
  return r == Rule::D || r == Rule::d || r == Rule::D5 || r == Rule::D55;
}

// ---------------------------------------------------------------- Branch

bool Branch::contains(int prefix, int formula) const {
  return prefix >= 0 && prefixes_[prefix].has.test(static_cast<std::size_t>(formula));
}

int Branch::find_pf(int prefix, int formula) const {
  auto it = pf_index_.find(key2(prefix, formula));
  return it == pf_index_.end() ? -1 : it->second;
}

int Branch::child(int prefix, int agent, int step) const {
  for (int c : prefixes_[prefix].children)
    if (prefixes_[c].agent == agent && prefixes_[c].step == step) return c;
  return -1;
}

int Branch::add(int prefix, int formula, int premise) {
  auto [it, fresh] = pf_index_.try_emplace(key2(prefix, formula), static_cast<int>(pfs_.size()));
  int id = it->second;
  if (fresh) {
    pfs_.push_back({prefix, formula});
    out_.emplace_back();
    prefixes_[prefix].has.set(static_cast<std::size_t>(formula));
    prefixes_[prefix].pfs.push_back(id);
    work_.push_back(id);
  }
  if (premise >= 0 && edge_set_.insert(key2(premise, id)).second) {
    out_[premise].push_back(id);
    ++n_edges_;
  }
  return id;
}

int Branch::create_prefix(int parent, int agent, int step) {
  Prefix p;
  p.parent = parent;
  p.agent = agent;
  p.step = step;
  p.depth = prefixes_[parent].depth + 1;
  p.has.resize(nf_);
  int id = static_cast<int>(prefixes_.size());
  prefixes_.push_back(std::move(p));
  prefixes_[parent].children.push_back(id);
  return id;
}

// ---------------------------------------------------------------- Tableau

Tableau::Tableau(Formula root, LogicSpec spec, TableauConfig cfg)
    : root_(rename_binders(root)), spec_(std::move(spec)), cfg_(cfg) {
  if (!is_closed(root_)) throw Error("tableau: formula must be closed");
  if (cfg_.max_prefix_len == 0) throw Error("tableau: max_prefix_len must be positive");
  if (cfg_.max_nodes == 0) throw Error("tableau: max_nodes must be positive");
  forms_ = subformulas(root_);
  for (std::size_t i = 0; i < forms_.size(); ++i) fid_[forms_[i]] = static_cast<int>(i);
  agents_ = agents_of(root_);
  for (const auto& a : agents_) conds_.push_back(implied_conds(spec_.of(a)));
  vars_ = bound_vars(root_);
  auto var_index = [&](const std::string& x) {
    return static_cast<int>(std::find(vars_.begin(), vars_.end(), x) - vars_.begin());
  };
  for (const auto& x : vars_) var_least_.push_back(is_least_var(x, root_));
  var_above_.assign(vars_.size(), std::vector<bool>(vars_.size(), false));
  for (std::size_t x = 0; x < vars_.size(); ++x)
    for (std::size_t y = 0; y < vars_.size(); ++y)
      var_above_[x][y] = x != y && var_leq(vars_[x], vars_[y], root_);
  info_.resize(forms_.size());
  for (std::size_t i = 0; i < forms_.size(); ++i) {
    Formula g = forms_[i];
    FInfo& fi = info_[i];
    fi.kind = g.kind();
    switch (g.kind()) {
      case Kind::And:
      case Kind::Or:
        fi.l = fid_.at(g.left());
        fi.r = fid_.at(g.right());
        break;
      case Kind::Box:
      case Kind::Dia:
        fi.l = fid_.at(g.body());
        fi.agent = static_cast<int>(std::find(agents_.begin(), agents_.end(), g.agent()) -
                                    agents_.begin());
        break;
      case Kind::Mu:
      case Kind::Nu:
        fi.l = fid_.at(g.body());
        fi.var = var_index(g.name());
        break;
      case Kind::Var:
        fi.fx = fid_.at(fx(g.name(), root_));
        fi.var = var_index(g.name());
        break;
      case Kind::Prop: {
        auto it = fid_.find(nprop(g.name()));
        fi.r = it == fid_.end() ? -1 : it->second;  // complement
        break;
      }
      case Kind::NegProp: {
        auto it = fid_.find(prop(g.name()));
        fi.r = it == fid_.end() ? -1 : it->second;
        break;
      }
      default: break;
    }
  }
  prefix_limit_ = cfg_.max_prefix_len;
  if (cfg_.sufficient_bound) {
    auto bound = sufficient_prefix_bound(root_, spec_, std::max<std::size_t>(cfg_.kappa, 1));
    const boost::multiprecision::cpp_int cap(std::size_t{1} << 30);
    prefix_limit_ = static_cast<std::size_t>(bound < cap ? bound : cap);
  }
}

Branch Tableau::empty_branch() const {
  Branch b(forms_.size());
  Branch::Prefix eps;
  eps.has.resize(forms_.size());
  b.prefixes_.push_back(std::move(eps));
  return b;
}

Branch Tableau::start() const {
  Branch b = empty_branch();
  b.add(0, fid_.at(root_));
  return b;
}

int Tableau::formula_id(Formula f) const {
  auto it = fid_.find(f);
  if (it == fid_.end()) throw Error("tableau: '" + print(f) + "' is not a subformula");
  return it->second;
}

int Tableau::agent_id(const std::string& a) const {
  auto it = std::find(agents_.begin(), agents_.end(), a);
  return it == agents_.end() ? -1 : static_cast<int>(it - agents_.begin());
}

int Tableau::prefix_of(Branch& b, const std::vector<std::pair<std::string, Formula>>& path) const {
  int cur = 0;
  for (const auto& [a, f] : path) {
    int ag = agent_id(a);
    if (ag < 0) throw Error("tableau: unknown agent '" + a + "'");
    int st = formula_id(f);
    int c = b.child(cur, ag, st);
    cur = c >= 0 ? c : b.create_prefix(cur, ag, st);
  }
  return cur;
}

std::string Tableau::render_prefix(const Branch& b, int prefix) const {
  std::vector<std::string> parts;
  for (int p = prefix; p > 0; p = b.prefixes_[p].parent)
    parts.push_back(agents_[b.prefixes_[p].agent] + "<" + print(forms_[b.prefixes_[p].step]) +
                    ">");
  if (parts.empty()) return "ε";
  std::string s;
  for (auto it = parts.rbegin(); it != parts.rend(); ++it) s += (s.empty() ? "" : ".") + *it;
  return s;
}

bool Tableau::flat(const Branch& b, int prefix, int agent) const {
  return prefix > 0 && conds_[agent].has(Cond::Five) && b.prefixes_[prefix].agent == agent;
}

void Tableau::instances_of(const Branch& b, int pfid, std::vector<RuleInstance>& out) const {
  const int s = b.pfs_[pfid].prefix;
  const int f = b.pfs_[pfid].formula;
  const FInfo& fi = info_[f];
  auto local = [&](Rule r, int tgt, std::vector<int> cs) {
    RuleInstance ri{r, pfid, -1, -1, -1, -1, {}};
    ri.target = tgt;
    ri.conclusions = std::move(cs);
    out.push_back(std::move(ri));
  };
  auto create = [&](Rule r, int parent, int agent, int step) {
    RuleInstance ri{r, pfid, -1, -1, -1, -1, {}};
    ri.target = b.child(parent, agent, step);
    ri.parent = parent;
    ri.agent = agent;
    ri.step = step;
    ri.conclusions = {step};
    out.push_back(std::move(ri));
  };
  const auto& P = b.prefixes_[s];
  switch (fi.kind) {
    case Kind::And: local(Rule::And, s, {fi.l, fi.r}); break;
    case Kind::Or: local(Rule::Or, s, {fi.l, fi.r}); break;
    case Kind::Mu:
    case Kind::Nu: local(Rule::Fix, s, {fi.l}); break;
    case Kind::Var: local(Rule::Var, s, {fi.fx}); break;
    case Kind::Box: {
      const int a = fi.agent;
      const CondSet c = conds_[a];
      for (int ch : P.children) {
        if (b.prefixes_[ch].agent != a) continue;
        local(Rule::B, ch, {fi.l});
        if (c.has(Cond::Four)) local(Rule::Four, ch, {f});
      }
      if (c.has(Cond::T)) local(Rule::t, s, {fi.l});
      if (P.parent >= 0 && P.agent == a) {
        const int par = P.parent;
        if (c.has(Cond::B)) local(Rule::b, par, {fi.l});
        if (c.has(Cond::B) && c.has(Cond::Four)) local(Rule::b4, par, {f});
        if (c.has(Cond::Five)) {
          local(Rule::B5, par, {f});
          for (int sib : b.prefixes_[par].children)
            if (sib != s && b.prefixes_[sib].agent == a) local(Rule::B55, sib, {f});
        }
      }
      if (c.has(Cond::D)) create(Rule::d, s, a, fi.l);
      break;
    }
    case Kind::Dia: {
      const int a = fi.agent;
      if (!flat(b, s, a)) {
        create(Rule::D, s, a, fi.l);
      } else {
        // When the shorter prefix carries the diamond, its own (D) child is
        // the witness here as well; only the dependency is recorded.
        const int par = P.parent;
        if (!flat(b, par, a)) {
          if (!b.contains(par, f)) create(Rule::D5, s, a, fi.l);
          else if (int w = b.child(par, a, fi.l); w >= 0) local(Rule::D5, w, {fi.l});
        } else {
          const int gp = b.prefixes_[par].parent;
          if (!b.contains(gp, f)) create(Rule::D55, par, a, fi.l);
          else if (int w = b.child(gp, a, fi.l); w >= 0) local(Rule::D55, w, {fi.l});
        }
      }
      break;
    }
    default: break;
  }
}

std::vector<RuleInstance> Tableau::applicable_rules(const Branch& b) const {
  std::vector<RuleInstance> all, out;
  for (std::size_t i = 0; i < b.pfs_.size(); ++i) instances_of(b, static_cast<int>(i), all);
  for (auto& ri : all) {
    bool fresh = false;
    if (ri.rule == Rule::Or) {
      fresh = !b.contains(ri.target, ri.conclusions[0]) && !b.contains(ri.target, ri.conclusions[1]);
    } else {
      for (int c : ri.conclusions) fresh = fresh || !b.contains(ri.target, c);
    }
    if (fresh) out.push_back(std::move(ri));
  }
  return out;
}

std::vector<Branch> Tableau::apply(const Branch& b, const RuleInstance& inst) const {
  std::vector<Branch> out;
  if (inst.rule == Rule::Or) {
    for (int c : inst.conclusions) {
      out.push_back(b);
      out.back().add(inst.target, c, inst.premise);
    }
    return out;
  }
  out.push_back(b);
  Branch& nb = out.back();
  int tgt = inst.target;
  if (creates_prefix(inst.rule)) {
    tgt = nb.child(inst.parent, inst.agent, inst.step);
    if (tgt < 0) tgt = nb.create_prefix(inst.parent, inst.agent, inst.step);
  }
  for (int c : inst.conclusions) nb.add(tgt, c, inst.premise);
  return out;
}

bool Tableau::is_prop_closed(const Branch& b) const {
  for (const auto& pf : b.pfs_) {
    const FInfo& fi = info_[pf.formula];
    if (fi.kind == Kind::Ff) return true;
    if ((fi.kind == Kind::Prop || fi.kind == Kind::NegProp) && fi.r >= 0 &&
        b.contains(pf.prefix, fi.r))
      return true;
  }
  return false;
}

bool Tableau::is_fp_closed(const Branch& b, std::size_t kappa) const {
  // Instances whose conclusions are already present never show up as
  // applicable, but their premise still depends on those conclusions.
  std::vector<std::vector<int>> out = b.out_;
  std::vector<RuleInstance> tmp;
  for (std::size_t i = 0; i < b.pfs_.size(); ++i) {
    tmp.clear();
    instances_of(b, static_cast<int>(i), tmp);
    for (const auto& ri : tmp) {
      if (ri.rule == Rule::Or || ri.target < 0) continue;
      for (int c : ri.conclusions) {
        const int to = b.find_pf(ri.target, c);
        if (to >= 0 && std::find(out[i].begin(), out[i].end(), to) == out[i].end()) out[i].push_back(to);
      }
    }
  }
  detail::DepGraph g;
  g.out = &out;
  g.var.reserve(b.pfs_.size());
  for (const auto& pf : b.pfs_) {
    const FInfo& fi = info_[pf.formula];
    g.var.push_back(fi.kind == Kind::Var ? fi.var : -1);
  }
  return detail::lfp_closed(g, var_least_, var_above_, kappa);
}

void Tableau::on_new_prefix(Branch& b, int prefix) {
  const auto& P = b.prefixes_[prefix];
  const int a = P.agent;
  auto requeue_boxes = [&](int s) {
    for (int id : b.prefixes_[s].pfs) {
      const FInfo& fi = info_[b.pfs_[id].formula];
      if (fi.kind == Kind::Box && fi.agent == a) b.work_.push_back(id);
    }
  };
  auto requeue_dias = [&](int s) {
    for (int id : b.prefixes_[s].pfs) {
      const FInfo& fi = info_[b.pfs_[id].formula];
      if (fi.kind == Kind::Dia && fi.agent == a) b.work_.push_back(id);
    }
  };
  requeue_boxes(P.parent);
  if (conds_[a].has(Cond::Five))
    for (int sib : b.prefixes_[P.parent].children) {
      if (sib == prefix || b.prefixes_[sib].agent != a) continue;
      requeue_boxes(sib);
      requeue_dias(sib);
      for (int g : b.prefixes_[sib].children)
        if (b.prefixes_[g].agent == a) requeue_dias(g);
    }
  max_prefix_seen_ = std::max<std::size_t>(max_prefix_seen_, P.depth);
}

void Tableau::apply_local(Branch& b, const RuleInstance& inst) {
  for (int c : inst.conclusions) b.add(inst.target, c, inst.premise);
}

void Tableau::saturate(Branch& b) {
  std::vector<RuleInstance> tmp;
  while (!b.work_.empty() && !b.prop_closed_) {
    if (nodes_ >= cfg_.max_nodes) return;
    ++nodes_;
    int id = b.work_.back();
    b.work_.pop_back();
    const auto pf = b.pfs_[id];
    const FInfo& fi = info_[pf.formula];
    if (fi.kind == Kind::Ff ||
        ((fi.kind == Kind::Prop || fi.kind == Kind::NegProp) && fi.r >= 0 &&
         b.contains(pf.prefix, fi.r))) {
      b.prop_closed_ = true;
      return;
    }
    tmp.clear();
    instances_of(b, id, tmp);
    for (auto& ri : tmp) {
      if (ri.rule == Rule::Or) {
        if (std::find(b.ors_.begin(), b.ors_.end(), id) == b.ors_.end()) b.ors_.push_back(id);
      } else if (creates_prefix(ri.rule)) {
        if (ri.target >= 0) {
          apply_local(b, ri);
        } else if (b.pending_keys_.insert(key2(id, static_cast<int>(ri.rule))).second) {
          b.pending_.push_back(std::move(ri));
        }
      } else {
        apply_local(b, ri);
      }
    }
  }
}

bool Tableau::pending_still_valid(const Branch& b, const RuleInstance& c) const {
  const int s = b.pfs_[c.premise].prefix;
  const int f = b.pfs_[c.premise].formula;
  if (c.rule == Rule::D5) return !b.contains(b.prefixes_[s].parent, f);
  if (c.rule == Rule::D55) return !b.contains(b.prefixes_[b.prefixes_[s].parent].parent, f);
  return true;
}

KripkeModel Tableau::build_model(const Branch& b, const Extra& extra,
                                 const std::vector<int>& redirect) const {
  KripkeModel m;
  for (std::size_t i = 0; i < b.prefixes_.size(); ++i) m.add_state("w" + std::to_string(i));
  std::set<std::string> agents(agents_.begin(), agents_.end());
  for (const auto& [a, c] : spec_.agents) agents.insert(a);
  for (const auto& a : agents) m.add_agent(a);
  for (const auto& p : props_of(root_)) m.add_prop(p);
  for (std::size_t i = 1; i < b.prefixes_.size(); ++i) {
    const int to = redirect.empty() || redirect[i] < 0 ? static_cast<int>(i) : redirect[i];
    m.add_edge(agents_[b.prefixes_[i].agent], b.prefixes_[i].parent, to);
  }
  for (std::size_t i = 0; i < extra.size(); ++i)
    for (auto [a, t] : extra[i]) m.add_edge(agents_[a], i, t);
  for (const auto& pf : b.pfs_)
    if (info_[pf.formula].kind == Kind::Prop)
      m.set_prop(forms_[pf.formula].name(), pf.prefix);
  for (const auto& a : agents) {
    CondSet cs = spec_.of(a);
    for (;;) {
      bool ok = true;
      for (Cond c : kAllConds)
        if (cs.has(c) && !has_condition(m, a, c)) {
          m = close(m, a, c);
          ok = false;
        }
      if (ok) break;
    }
  }
  return m;
}

PointedModel Tableau::extract_model(const Branch& b, std::vector<std::string>* names) const {
  PointedModel pm{build_model(b, {}, {}), 0};
  if (names) {
    names->clear();
    for (std::size_t i = 0; i < b.prefixes_.size(); ++i)
      names->push_back(render_prefix(b, static_cast<int>(i)));
  }
  return pm;
}

bool Tableau::finish_model(const Branch& b, const Extra& extra, const std::vector<int>& redirect,
                           Verdict& out) const {
  PointedModel pm{build_model(b, extra, redirect), 0};
  if (!satisfies_spec(pm.model, spec_) || !check(pm, root_)) return false;
  out.kind = Verdict::Kind::Sat;
  out.witness = generated_submodel(pm);
  out.state_prefixes.clear();
  for (const auto& id : out.witness.model.states())
    out.state_prefixes.push_back(render_prefix(b, std::stoi(id.substr(1))));
  return true;
}

// Blocking: a frontier prefix whose formula set is contained in an ancestor's
// is replaced by the ancestor.
bool Tableau::try_block(const Branch& b, Verdict& out) const {
  std::vector<int> redirect(b.prefixes_.size(), -1);
  bool any = false;
  for (const auto& c : b.skipped_) {
    const int s = c.parent;
    if (s == 0 || redirect[s] >= 0) continue;
    for (int r = b.prefixes_[s].parent; r >= 0; r = b.prefixes_[r].parent)
      if (b.prefixes_[s].has.is_subset_of(b.prefixes_[r].has)) {
        redirect[s] = r;
        any = true;
        break;
      }
    if (redirect[s] < 0) return false;
  }
  if (!any || !finish_model(b, {}, redirect, out)) return false;
  out.folded = true;
  return true;
}

bool Tableau::try_fold(const Branch& b, Verdict& out) const {
  std::vector<std::vector<std::pair<int, int>>> extra(b.prefixes_.size());
  const int np = static_cast<int>(b.prefixes_.size());
  for (const auto& c : b.skipped_) {
    // what the missing prefix would have been given right away
    boost::dynamic_bitset<> need(forms_.size());
    need.set(static_cast<std::size_t>(c.step));
    for (int id : b.prefixes_[c.parent].pfs) {
      const int g = b.pfs_[id].formula;
      if (info_[g].kind != Kind::Box || info_[g].agent != c.agent) continue;
      need.set(static_cast<std::size_t>(info_[g].l));
      if (conds_[c.agent].has(Cond::Four)) need.set(static_cast<std::size_t>(g));
    }
    std::vector<int> order;
    for (int r = c.parent; r >= 0; r = b.prefixes_[r].parent) order.push_back(r);
    for (int r = 0; r < np; ++r) order.push_back(r);
    int target = -1;
    for (int r : order)
      if (need.is_subset_of(b.prefixes_[r].has)) {
        target = r;
        break;
      }
    for (int r : order)
      if (target < 0 && b.prefixes_[r].agent == c.agent && b.prefixes_[r].step == c.step)
        target = r;
    for (int r : order)
      if (target < 0 && b.contains(r, c.step)) target = r;
    if (target < 0) return false;
    extra[c.parent].push_back({c.agent, target});
  }
  if (!finish_model(b, extra, {}, out)) return false;
  out.folded = true;
  return true;
}

Verdict Tableau::explore(Branch b) {
  ++branches_;
  Verdict unknown;
  unknown.kind = Verdict::Kind::Unknown;
  for (;;) {
    saturate(b);
    if (b.prop_closed_) {
      Verdict u;
      u.kind = Verdict::Kind::Unsat;
      return u;
    }
    if (nodes_ >= cfg_.max_nodes) {
      unknown.bound_hit = "max_nodes";
      return unknown;
    }
    // Closure is monotone in the branch, so checking lazily only delays it.
    const bool decisive = !b.ors_.empty() || b.pending_.empty();
    const bool changed = b.pfs_.size() != b.fp_checked_ || b.n_edges_ != b.fp_checked_edges_;
    if (changed && (decisive || b.n_edges_ >= b.fp_checked_edges_ * 5 / 4 + 32)) {
      b.fp_checked_ = b.pfs_.size();
      b.fp_checked_edges_ = b.n_edges_;
    }
    if (changed && b.fp_checked_ == b.pfs_.size() && b.fp_checked_edges_ == b.n_edges_ &&
        is_fp_closed(b, cfg_.kappa)) {
      Verdict u;
      u.kind = Verdict::Kind::Unsat;
      return u;
    }
    if (!b.ors_.empty()) {
      const int o = b.ors_.front();
      b.ors_.erase(b.ors_.begin());
      const auto pf = b.pfs_[o];
      const FInfo& fi = info_[pf.formula];
      const std::size_t held = b.pfs_.size() + b.n_edges_;
      if (suspended_ + held > cfg_.max_suspended) {
        unknown.bound_hit = "max_suspended";
        return unknown;
      }
      Branch right = b;
      b.add(pf.prefix, fi.l, o);
      right.add(pf.prefix, fi.r, o);
      suspended_ += held;
      Verdict v1 = explore(std::move(b));
      suspended_ -= held;
      if (v1.sat() || (!v1.unsat() && nodes_ >= cfg_.max_nodes)) return v1;
      Verdict v2 = explore(std::move(right));
      if (v2.sat()) return v2;
      if (v1.unsat() && v2.unsat()) return v1;
      return v1.unsat() ? v2 : v1;
    }
    if (!b.pending_.empty()) {
      auto it = std::min_element(b.pending_.begin(), b.pending_.end(),
                                 [](const RuleInstance& x, const RuleInstance& y) {
                                   return x.parent < y.parent;
                                 });
      RuleInstance c = std::move(*it);
      b.pending_.erase(it);
      if (!pending_still_valid(b, c)) continue;
      int tgt = b.child(c.parent, c.agent, c.step);
      if (tgt >= 0) {
        b.add(tgt, c.step, c.premise);
        continue;
      }
      if (static_cast<std::size_t>(b.prefixes_[c.parent].depth) + 1 > prefix_limit_) {
        b.skipped_.push_back(std::move(c));
        continue;
      }
      tgt = b.create_prefix(c.parent, c.agent, c.step);
      b.add(tgt, c.step, c.premise);
      on_new_prefix(b, tgt);
      continue;
    }
    if (!b.skipped_.empty()) {
      if (cfg_.loop_back && (try_fold(b, unknown) || try_block(b, unknown))) return unknown;
      unknown.kind = Verdict::Kind::Unknown;
      unknown.bound_hit = "max_prefix_len";
      return unknown;
    }
    if (finish_model(b, {}, {}, unknown)) return unknown;
    unknown.kind = Verdict::Kind::Unknown;
    unknown.bound_hit = "unverified_model";
    return unknown;
  }
}

Verdict Tableau::solve() {
  nodes_ = branches_ = max_prefix_seen_ = 0;
  suspended_ = 0;
  // Iterative deepening on the prefix length: shallow runs often fold into a
  // model long before the full tree is built.
  const std::size_t limit = prefix_limit_;
  Verdict v;
  for (std::size_t l = std::min<std::size_t>(3, limit);; l = std::min(limit, l * 2)) {
    prefix_limit_ = l;
    v = explore(start());
    if (v.kind != Verdict::Kind::Unknown || v.bound_hit != "max_prefix_len" || l == limit) break;
  }
  prefix_limit_ = limit;
  v.nodes = nodes_;
  v.branches = branches_;
  v.max_prefix_seen = max_prefix_seen_;
  return v;
}

boost::multiprecision::cpp_int sufficient_prefix_bound(Formula f, const LogicSpec& spec,
                                                       std::size_t kappa) {
  using boost::multiprecision::cpp_int;
  std::set<std::string> agents;
  for (const auto& a : agents_of(f)) agents.insert(a);
  for (const auto& [a, c] : spec.agents) agents.insert(a);
  const std::size_t n = size(f);
  cpp_int r = std::max<std::size_t>(agents.size(), 1);
  r *= boost::multiprecision::pow(cpp_int(kappa), static_cast<unsigned>(n * n));
  r <<= static_cast<unsigned>(n + 1);
  return r;
}

Verdict solve(Formula f, const LogicSpec& spec, const TableauConfig& cfg) {
  Tableau t(f, spec, cfg);
  return t.solve();
}

}  // namespace mucalc
