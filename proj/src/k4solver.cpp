#include "mucalc/k4solver.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "depgraph.hpp"
#include "mucalc/error.hpp"
#include "mucalc/modelcheck.hpp"

namespace mucalc {

K4Logic parse_k4_logic(const std::string& s) {
  std::string name = s;
  if (auto eq = name.find('='); eq != std::string::npos) name = name.substr(eq + 1);
  CondSet c = implied_conds(parse_conds(name));
  if (c == parse_conds("K4")) return K4Logic::K4;
  if (c == parse_conds("D4")) return K4Logic::D4;
  if (c == implied_conds(parse_conds("S4"))) return K4Logic::S4;
  throw Error("transitive solver supports K4, D4 and S4 only, not '" + s + "'");
}

std::string k4_logic_name(K4Logic l) {
  switch (l) {
    case K4Logic::K4: return "K4";
    case K4Logic::D4: return "D4";
    case K4Logic::S4: return "S4";
  }
  return "?";
}

CondSet k4_conds(K4Logic l) {
  switch (l) {
    case K4Logic::K4: return parse_conds("K4");
    case K4Logic::D4: return parse_conds("D4");
    case K4Logic::S4: return parse_conds("S4");
  }
  return {};
}

boost::multiprecision::cpp_int small_model_bound(std::size_t n) {
  boost::multiprecision::cpp_int f = 1;
  for (std::size_t i = 2; i <= n; ++i) f *= i;
  return 2 * f - 1;
}

boost::multiprecision::cpp_int small_model_bound(Formula f) { return small_model_bound(size(f)); }

namespace {

std::uint64_t key2(std::uint64_t a, std::uint64_t b) { return (a << 32) | b; }

struct FInfo {
  Kind kind;
  int l = -1, r = -1;
  int fx = -1;
  int var = -1;
};

// One branch of the search: a tree of prefixes plus back edges to ancestors.
struct State {
  struct Node {
    int parent = -1;
    int step = -1;
    int depth = 0;
    boost::dynamic_bitset<> has;
    boost::dynamic_bitset<> done;  // formulas present at the last expansion
    std::vector<int> pfs;
    std::vector<int> children;
    std::vector<int> back;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<int, int>> pfs;  // (node, formula)
  std::unordered_map<std::uint64_t, int> index;
  std::vector<std::vector<int>> out;
  std::unordered_set<std::uint64_t> edges;
  std::size_t n_edges = 0;
  std::vector<int> work;
  std::vector<int> ors;
  bool closed = false;
  std::size_t checked_pfs = 0, checked_edges = 0;

  int add(int node, int f, int premise) {
    auto [it, fresh] = index.try_emplace(key2(node, f), static_cast<int>(pfs.size()));
    int id = it->second;
    if (fresh) {
      pfs.push_back({node, f});
      out.emplace_back();
      nodes[node].has.set(static_cast<std::size_t>(f));
      nodes[node].pfs.push_back(id);
      work.push_back(id);
    }
    if (premise >= 0 && edges.insert(key2(premise, id)).second) {
      out[premise].push_back(id);
      ++n_edges;
    }
    return id;
  }
  int find(int node, int f) const {
    auto it = index.find(key2(node, f));
    return it == index.end() ? -1 : it->second;
  }
};

class K4Search {
 public:
  K4Search(Formula f, K4Logic logic) : root_(rename_binders(f)), logic_(logic) {
    if (!is_closed(root_)) throw Error("transitive solver: formula must be closed");
    auto ags = agents_of(root_);
    if (ags.size() > 1) throw Error("transitive solver: formula must use a single agent");
    agent_ = ags.empty() ? "a" : ags[0];
    conds_ = k4_conds(logic);
    forms_ = subformulas(root_);
    for (std::size_t i = 0; i < forms_.size(); ++i) fid_[forms_[i]] = static_cast<int>(i);
    vars_ = bound_vars(root_);
    auto vidx = [&](const std::string& x) {
      return static_cast<int>(std::find(vars_.begin(), vars_.end(), x) - vars_.begin());
    };
    for (const auto& x : vars_) least_.push_back(is_least_var(x, root_));
    above_.assign(vars_.size(), std::vector<bool>(vars_.size(), false));
    for (std::size_t x = 0; x < vars_.size(); ++x)
      for (std::size_t y = 0; y < vars_.size(); ++y)
        above_[x][y] = x != y && var_leq(vars_[x], vars_[y], root_);
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
        case Kind::Mu:
        case Kind::Nu:
          fi.l = fid_.at(g.body());
          break;
        case Kind::Var:
          fi.fx = fid_.at(fx(g.name(), root_));
          fi.var = vidx(g.name());
          break;
        case Kind::Prop:
          if (auto it = fid_.find(nprop(g.name())); it != fid_.end()) fi.r = it->second;
          break;
        case Kind::NegProp:
          if (auto it = fid_.find(prop(g.name())); it != fid_.end()) fi.r = it->second;
          break;
        default: break;
      }
    }
  }

  Verdict run(K4Stats* stats) {
    State s;
    new_node(s, -1, -1);
    s.add(0, fid_.at(root_), -1);
    Verdict v;
    v.kind = explore(std::move(s), v) ? Verdict::Kind::Sat : Verdict::Kind::Unsat;
    v.nodes = nodes_;
    v.branches = branches_;
    v.max_prefix_seen = max_depth_;
    if (stats) {
      stats->max_depth = max_depth_;
      stats->distinct_sets = sets_seen_.size();
      stats->loop_backs = loop_backs_;
    }
    return v;
  }

 private:
  int new_node(State& s, int parent, int step) {
    State::Node n;
    n.parent = parent;
    n.step = step;
    n.depth = parent < 0 ? 0 : s.nodes[parent].depth + 1;
    n.has.resize(forms_.size());
    n.done.resize(forms_.size());
    int id = static_cast<int>(s.nodes.size());
    s.nodes.push_back(std::move(n));
    if (parent >= 0) s.nodes[parent].children.push_back(id);
    max_depth_ = std::max<std::size_t>(max_depth_, s.nodes[id].depth);
    return id;
  }

  void saturate(State& s) {
    while (!s.work.empty() && !s.closed) {
      ++nodes_;
      int id = s.work.back();
      s.work.pop_back();
      auto [node, f] = s.pfs[id];
      const FInfo& fi = info_[f];
      switch (fi.kind) {
        case Kind::Ff: s.closed = true; break;
        case Kind::Prop:
        case Kind::NegProp:
          if (fi.r >= 0 && s.nodes[node].has.test(static_cast<std::size_t>(fi.r))) s.closed = true;
          break;
        case Kind::And:
          s.add(node, fi.l, id);
          s.add(node, fi.r, id);
          break;
        case Kind::Or: s.ors.push_back(id); break;
        case Kind::Mu:
        case Kind::Nu: s.add(node, fi.l, id); break;
        case Kind::Var: s.add(node, fi.fx, id); break;
        case Kind::Box:
          if (conds_.has(Cond::T)) s.add(node, fi.l, id);  // (t)
          break;
        default: break;
      }
    }
  }

  // Discharges a demand for an a<psi>-successor of `node`. A prefix on the
  // path that already has step psi is reused, receiving the box obligations.
  void discharge(State& s, int node, int psi, int premise, const std::vector<int>& boxes) {
    int target = -1;
    for (int r = node; r > 0 && target < 0; r = s.nodes[r].parent)
      if (s.nodes[r].step == psi) target = r;
    if (target >= 0) {
      auto& back = s.nodes[node].back;
      if (std::find(back.begin(), back.end(), target) == back.end()) {
        back.push_back(target);
        ++loop_backs_;
      }
    } else {
      for (int c : s.nodes[node].children)
        if (s.nodes[c].step == psi) target = c;
      if (target < 0) target = new_node(s, node, psi);
    }
    s.add(target, psi, premise);
    push_boxes(s, target, boxes);
  }

  void push_boxes(State& s, int target, const std::vector<int>& boxes) {
    for (int b : boxes) {
      const int f = s.pfs[b].second;
      s.add(target, info_[f].l, b);  // (B)
      s.add(target, f, b);           // (4)
    }
  }

  void expand_node(State& s, int node) {
    std::vector<int> dias, boxes;
    for (int id : s.nodes[node].pfs) {
      const Kind k = info_[s.pfs[id].second].kind;
      if (k == Kind::Dia) dias.push_back(id);
      if (k == Kind::Box) boxes.push_back(id);
    }
    auto by_formula = [&](int x, int y) { return s.pfs[x].second < s.pfs[y].second; };
    std::sort(dias.begin(), dias.end(), by_formula);
    std::sort(boxes.begin(), boxes.end(), by_formula);
    const std::vector<int> children = s.nodes[node].children;
    for (int c : children) push_boxes(s, c, boxes);
    const std::vector<int> back = s.nodes[node].back;
    for (int r : back) push_boxes(s, r, boxes);
    for (int d : dias) discharge(s, node, info_[s.pfs[d].second].l, d, boxes);
    // (d): seriality with no diamond to discharge
    if (dias.empty() && !boxes.empty() && conds_.has(Cond::D) && !conds_.has(Cond::T) &&
        s.nodes[node].children.empty() && s.nodes[node].back.empty())
      discharge(s, node, info_[s.pfs[boxes[0]].second].l, boxes[0], boxes);
  }

  bool fp_closed(State& s, bool force) {
    const bool changed = s.pfs.size() != s.checked_pfs || s.n_edges != s.checked_edges;
    if (!changed) return false;
    if (!force && s.n_edges < s.checked_edges * 5 / 4 + 32) return false;
    s.checked_pfs = s.pfs.size();
    s.checked_edges = s.n_edges;
    detail::DepGraph g;
    g.out = &s.out;
    for (const auto& [n, f] : s.pfs) g.var.push_back(info_[f].kind == Kind::Var ? info_[f].var : -1);
    return detail::lfp_closed(g, least_, above_, detail::kCyclesOnly);
  }

  bool finish(const State& s, Verdict& out) {
    KripkeModel m;
    for (std::size_t i = 0; i < s.nodes.size(); ++i) m.add_state("w" + std::to_string(i));
    m.add_agent(agent_);
    for (const auto& p : props_of(root_)) m.add_prop(p);
    for (std::size_t i = 0; i < s.nodes.size(); ++i) {
      if (s.nodes[i].parent >= 0) m.add_edge(agent_, s.nodes[i].parent, i);
      for (int r : s.nodes[i].back) m.add_edge(agent_, i, r);
    }
    for (const auto& [n, f] : s.pfs)
      if (info_[f].kind == Kind::Prop) m.set_prop(forms_[f].name(), n);
    LogicSpec spec;
    spec.agents[agent_] = conds_;
    m = close_logic(m, spec);
    PointedModel pm{m, 0};
    if (!satisfies_spec(pm.model, spec) || !check(pm, root_)) {
      ++unverified_;
      return false;
    }
    out.witness = generated_submodel(pm);
    out.state_prefixes.clear();
    for (const auto& id : out.witness.model.states()) {
      int i = std::stoi(id.substr(1));
      std::string r;
      for (int p = i; p > 0; p = s.nodes[p].parent)
        r = agent_ + "<" + print(forms_[s.nodes[p].step]) + ">" + (r.empty() ? "" : ".") + r;
      out.state_prefixes.push_back(r.empty() ? "ε" : r);
    }
    return true;
  }

  static int next_unexpanded(const State& s) {
    for (std::size_t i = 0; i < s.nodes.size(); ++i)
      if (s.nodes[i].has != s.nodes[i].done) return static_cast<int>(i);
    return -1;
  }

  bool explore(State s, Verdict& out) {
    ++branches_;
    for (;;) {
      saturate(s);
      if (s.closed) return false;
      const bool decisive = !s.ors.empty() || next_unexpanded(s) < 0;
      if (fp_closed(s, decisive)) return false;
      if (!s.ors.empty()) {
        const int o = s.ors.front();
        s.ors.erase(s.ors.begin());
        auto [node, f] = s.pfs[o];
        State right = s;
        s.add(node, info_[f].l, o);
        right.add(node, info_[f].r, o);
        if (explore(std::move(s), out)) return true;
        return explore(std::move(right), out);
      }
      if (int n = next_unexpanded(s); n >= 0) {
        s.nodes[n].done = s.nodes[n].has;
        sets_seen_.insert(s.nodes[n].has);
        expand_node(s, n);
        continue;
      }
      return finish(s, out);
    }
  }

  Formula root_;
  K4Logic logic_;
  std::string agent_;
  CondSet conds_;
  std::vector<Formula> forms_;
  std::unordered_map<Formula, int> fid_;
  std::vector<FInfo> info_;
  std::vector<std::string> vars_;
  std::vector<bool> least_;
  std::vector<std::vector<bool>> above_;
  std::size_t nodes_ = 0, branches_ = 0, max_depth_ = 0, loop_backs_ = 0, unverified_ = 0;
  std::set<boost::dynamic_bitset<>> sets_seen_;
};

}  // namespace

Verdict solve_k4(Formula f, K4Logic logic, K4Stats* stats) {
  K4Search search(f, logic);
  return search.run(stats);
}

}  // namespace mucalc
