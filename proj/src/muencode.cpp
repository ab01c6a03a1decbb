#include "mucalc/muencode.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "mucalc/error.hpp"

namespace mucalc {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

Formula guard(Formula g, Formula body) { return disj(nprop(g.name()), body); }

// Reflexive-free transitive closure over at most a few dozen vertices.
using Matrix = std::vector<std::vector<bool>>;

void close(Matrix& r) {
  const std::size_t n = r.size();
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (r[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (r[k][j]) r[i][j] = true;
}

}  // namespace

Encoder::Encoder(Formula f, LogicSpec spec, EncodeOptions opts)
    : root_(rename_binders(f)), spec_(std::move(spec)), opts_(opts) {
  if (!is_closed(root_)) throw Error("encode: formula must be closed");
  if (spec_.any(Cond::Five)) throw Error("encode: agents with condition 5 are not supported");
  base_agents_ = agents_of(root_);
  for (const auto& a : base_agents_) {
    CondSet c = implied_conds(spec_.of(a));
    if (c.has(Cond::Five))
      throw Error("encode: agent " + a + " has " + conds_name(c) + ", which implies condition 5");
    conds_[a] = c;
  }
  forms_ = subformulas(root_);
  if (forms_.size() > opts_.graph_cap)
    throw Error("encode: |sub(f)| = " + std::to_string(forms_.size()) + " exceeds the graph cap " +
                std::to_string(opts_.graph_cap));
  for (std::size_t i = 0; i < forms_.size(); ++i) fid_[forms_[i]] = static_cast<int>(i);
  vars_ = bound_vars(root_);
  above_.assign(vars_.size(), std::vector<bool>(vars_.size(), false));
  for (std::size_t x = 0; x < vars_.size(); ++x) {
    for (std::size_t y = 0; y < vars_.size(); ++y)
      above_[x][y] = x != y && var_leq(vars_[x], vars_[y], root_);
    if (is_least_var(vars_[x], root_)) {
      least_.push_back(vars_[x]);
      least_var_.push_back(static_cast<int>(x));
    }
  }
  const std::size_t n = forms_.size();
  neg_.assign(n, -1);
  fx_.assign(n, -1);
  var_of_.assign(n, -1);
  label_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    Formula g = forms_[i];
    if (is_closed(g) || g.kind() == Kind::Prop || g.kind() == Kind::NegProp)
      neg_[i] = index_of(negate(g));
    if (g.kind() == Kind::Var) {
      fx_[i] = index_of(fx(g.name(), root_));
      var_of_[i] = static_cast<int>(std::find(vars_.begin(), vars_.end(), g.name()) - vars_.begin());
    }
  }
  // canonical labels
  for (std::size_t i = 0; i < n; ++i) {
    Formula g = forms_[i];
    if (!g.is_modal()) continue;
    const CondSet& c = conds_[g.agent()];
    const int body = index_of(g.body());
    label_[i] |= kOutBot;
    label_[body] |= kInTop;
    if (g.kind() == Kind::Box) {
      if (c.has(Cond::Four)) label_[i] |= kInTop;
      if (c.has(Cond::B)) {
        label_[i] |= kOutTop;
        label_[body] |= kInBot;
        if (c.has(Cond::Four)) label_[i] |= kInBot;
      }
    }
  }
  for (const auto& a : base_agents_) {
    const bool d = conds_[a].has(Cond::D);
    for (std::size_t i = 0; i < n; ++i) {
      Formula chi = forms_[i];
      const bool dia_step = fid_.count(dia(a, chi)) != 0;
      const bool box_step = d && fid_.count(box(a, chi)) != 0;
      if (dia_step || box_step) {
        enc_agents_.push_back(a + "_x" + std::to_string(i));
        enc_of_[a].push_back(enc_agents_.back());
      }
    }
  }
  enumerate();
  stats_.graphs = graphs_.size();
  stats_.agents = enc_agents_.size();
}

int Encoder::index_of(Formula f) const {
  auto it = fid_.find(f);
  return it == fid_.end() ? -1 : it->second;
}

const DepGraph* Encoder::find_graph(const std::string& name) const {
  auto it = by_name_.find(name);
  return it == by_name_.end() ? nullptr : &graphs_[it->second];
}

std::string Encoder::agent_name(const std::string& alpha, Formula chi) const {
  const int i = index_of(chi);
  if (i < 0) throw Error("encode: step formula is not a subformula");
  return alpha + "_x" + std::to_string(i);
}

DepGraph Encoder::make_graph(const std::vector<int>& phi, const std::vector<int>& choice) const {
  const std::size_t n = forms_.size();
  DepGraph g;
  g.phi = phi;
  g.or_choice = choice;
  g.in_.assign(n, false);
  g.label.assign(n, 0);
  for (int i : phi) {
    g.in_[i] = true;
    g.label[i] = label_[i];
  }
  // local rule edges; the or-rule goes to its chosen disjunct
  std::vector<std::pair<int, int>> local;
  std::size_t k = 0;
  for (int i : phi) {
    Formula f = forms_[i];
    switch (f.kind()) {
      case Kind::And:
        local.push_back({i, index_of(f.left())});
        local.push_back({i, index_of(f.right())});
        break;
      case Kind::Or: local.push_back({i, choice[k++]}); break;
      case Kind::Mu:
      case Kind::Nu: local.push_back({i, index_of(f.body())}); break;
      case Kind::Var: local.push_back({i, fx_[i]}); break;
      case Kind::Box:
        if (conds_.at(f.agent()).has(Cond::T)) local.push_back({i, index_of(f.body())});
        break;
      default: break;
    }
  }
  std::sort(local.begin(), local.end());
  local.erase(std::unique(local.begin(), local.end()), local.end());
  for (std::size_t x = 0; x < least_.size(); ++x) {
    std::vector<std::pair<int, int>> ex;
    for (auto [u, v] : local) {
      if (var_of_[u] >= 0 && above_[least_var_[x]][var_of_[u]]) continue;
      ex.push_back({u, v});
    }
    g.edges.push_back(std::move(ex));
  }
  std::ostringstream os;
  os << "V";
  for (int i : phi) os << ' ' << i;
  os << ";E";
  for (std::size_t x = 0; x < g.edges.size(); ++x)
    for (auto [u, v] : g.edges[x]) os << ' ' << least_[x] << ':' << u << '>' << v;
  os << ";L";
  for (int i : phi) os << ' ' << i << '=' << int(g.label[i]);
  g.key = os.str();
  g.name = "g_" + hex(fnv1a(g.key));
  return g;
}

void Encoder::enumerate() {
  const std::size_t n = forms_.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    auto in = [&](int i) { return i >= 0 && (mask >> i & 1U); };
    bool ok = true;
    std::vector<int> phi, ors;
    for (std::size_t i = 0; i < n && ok; ++i) {
      if (!in(static_cast<int>(i))) continue;
      phi.push_back(static_cast<int>(i));
      Formula f = forms_[i];
      switch (f.kind()) {
        case Kind::Ff: ok = false; break;
        case Kind::And: ok = in(index_of(f.left())) && in(index_of(f.right())); break;
        case Kind::Or:
          ok = in(index_of(f.left())) || in(index_of(f.right()));
          ors.push_back(static_cast<int>(i));
          break;
        case Kind::Mu:
        case Kind::Nu: ok = in(index_of(f.body())); break;
        case Kind::Var: ok = in(fx_[i]); break;
        case Kind::Box:
          if (conds_.at(f.agent()).has(Cond::T)) ok = in(index_of(f.body()));
          break;
        default: break;
      }
      if (ok && in(neg_[i])) ok = false;
    }
    if (!ok) continue;
    // every way of choosing a present disjunct per or-formula
    std::vector<std::vector<int>> opts;
    for (int o : ors) {
      std::vector<int> c;
      for (Formula d : {forms_[o].left(), forms_[o].right()})
        if (in(index_of(d)) && std::find(c.begin(), c.end(), index_of(d)) == c.end())
          c.push_back(index_of(d));
      opts.push_back(c);
    }
    std::vector<std::size_t> pos(ors.size(), 0);
    for (;;) {
      std::vector<int> choice;
      for (std::size_t k = 0; k < ors.size(); ++k) choice.push_back(opts[k][pos[k]]);
      DepGraph g = make_graph(phi, choice);
      // choices differing only on edges no least variable sees give the same graph
      if (by_name_.emplace(g.name, graphs_.size()).second) graphs_.push_back(std::move(g));
      std::size_t k = 0;
      while (k < pos.size() && ++pos[k] == opts[k].size()) pos[k++] = 0;
      if (k == pos.size()) break;
    }
  }
}

bool Encoder::child(const DepGraph& h, const DepGraph& g, const std::string& alpha,
                    std::optional<Formula> chi) const {
  auto cit = conds_.find(alpha);
  const CondSet c = cit == conds_.end() ? implied_conds(spec_.of(alpha)) : cit->second;
  if (chi) {
    const int ci = index_of(*chi);
    const int d = index_of(dia(alpha, *chi));
    const int b = index_of(box(alpha, *chi));
    const bool gen = (d >= 0 && h.has(d)) || (c.has(Cond::D) && b >= 0 && h.has(b));
    if (!gen || ci < 0 || !g.has(ci) || !(g.label[ci] & kInTop)) return false;
  }
  for (int i : h.phi) {
    Formula f = forms_[i];
    if (f.kind() != Kind::Box || f.agent() != alpha) continue;
    const int body = index_of(f.body());
    if (!g.has(body) || !(g.label[body] & kInTop)) return false;  // (B)
    if (c.has(Cond::Four) && (!g.has(i) || !(g.label[i] & kInTop))) return false;  // (4)
  }
  for (int i : g.phi) {
    Formula f = forms_[i];
    if (f.kind() != Kind::Box || f.agent() != alpha || !c.has(Cond::B)) continue;
    const int body = index_of(f.body());
    if (!h.has(body) || !(h.label[body] & kInBot)) return false;  // (b)
    if (c.has(Cond::Four) && (!h.has(i) || !(h.label[i] & kInBot))) return false;  // (b4)
  }
  return true;
}

// Pairs (u, v): u leaves towards a child, v is re-entered from that child.
std::vector<Encoder::Pair> Encoder::candidates(const DepGraph& g) const {
  std::vector<Pair> out;
  for (int u : g.phi) {
    if (!(g.label[u] & kOutBot)) continue;
    for (int v : g.phi)
      if ((g.label[v] & kInBot) && !nx({u, v}).empty()) out.push_back({u, v});
  }
  if (out.size() > opts_.max_excursion_pairs)
    throw Error("encode: " + std::to_string(out.size()) +
                " candidate child excursions exceed the configured limit");
  return out;
}

// Entry points into a child reached from the modal formula `modal`.
std::vector<int> Encoder::firsts(int modal) const {
  Formula f = forms_[modal];
  std::vector<int> out{index_of(f.body())};
  if (f.kind() == Kind::Box && conds_.at(f.agent()).has(Cond::Four)) out.push_back(modal);
  return out;
}

std::vector<Encoder::Pair> Encoder::nx(Pair s) const {
  Formula u = forms_[s.first];
  Formula v = forms_[s.second];
  const std::string& a = u.agent();
  const CondSet& c = conds_.at(a);
  std::vector<int> back;
  if (c.has(Cond::B)) {
    if (int bx = index_of(box(a, v)); bx >= 0) back.push_back(bx);  // child [a]v gives v
    if (c.has(Cond::Four) && v.kind() == Kind::Box && v.agent() == a) back.push_back(s.second);
  }
  std::vector<Pair> out;
  for (int f : firsts(s.first))
    for (int b : back) out.push_back({f, b});
  return out;
}

Formula Encoder::dia_of(int modal, Formula body) const {
  Formula f = forms_[modal];
  if (f.kind() == Kind::Dia) return dia(agent_name(f.agent(), f.body()), body);
  auto it = enc_of_.find(f.agent());
  return dia_any(it == enc_of_.end() ? std::vector<std::string>{} : it->second, body);
}

bool Encoder::path(const DepGraph& g, int x, int a, int b, const std::vector<Pair>& s,
                   bool need_x) const {
  const std::size_t n = forms_.size();
  Matrix r(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges[x]) r[u][v] = true;
  for (auto [u, v] : s) r[u][v] = true;
  r[b][a] = true;
  close(r);
  auto reach = [&](int p, int q) { return p == q || r[p][q]; };
  if (!g.has(a) || !g.has(b) || !reach(a, b)) return false;
  for (auto [u, v] : s)
    if (!reach(a, u) || !reach(v, b)) return false;
  if (need_x) {
    const int xv = index_of(var(least_[x]));
    if (xv < 0 || !g.has(xv) || !reach(a, xv) || !reach(xv, b)) return false;
  }
  return true;
}

bool Encoder::cycle(const DepGraph& g, int x, const std::vector<Pair>& s, bool need_x) const {
  const std::size_t n = forms_.size();
  Matrix r(n, std::vector<bool>(n, false));
  for (auto [u, v] : g.edges[x]) r[u][v] = true;
  for (auto [u, v] : s) r[u][v] = true;
  close(r);
  std::vector<int> q;
  for (auto [u, v] : s) {
    q.push_back(u);
    q.push_back(v);
  }
  if (need_x) {
    const int xv = index_of(var(least_[x]));
    if (xv < 0 || !g.has(xv)) return false;
    q.push_back(xv);
  }
  if (q.empty()) return false;
  for (int p : q)
    for (int t : q)
      if (!r[p][t]) return false;
  return true;
}

namespace {

std::string pair_key(Encoder::Pair p) {
  return std::to_string(p.first) + "," + std::to_string(p.second);
}

template <class F>
void for_subsets(const std::vector<Encoder::Pair>& c, F&& fn) {
  const std::size_t n = c.size();
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    std::vector<Encoder::Pair> s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1U) s.push_back(c[i]);
    fn(s);
  }
}

}  // namespace

Formula Encoder::fp_rec(int x, Pair t, bool need_x,
                        std::vector<std::pair<Pair, std::string>>& memo) {
  stats_.max_fp_memo = std::max(stats_.max_fp_memo, memo.size());
  for (const auto& [p, name] : memo)
    if (p == t && t != kNoPair) return var(name);
  std::string key = std::string(need_x ? "X" : "F") + std::to_string(x) + "|" + pair_key(t) + "|";
  for (const auto& [p, name] : memo) key += pair_key(p) + ";";
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  Formula out;
  if (t == kNoPair) {
    memo.push_back({t, ""});
    std::vector<Formula> dis;
    for (const auto& g : graphs_) {
      if (cycle(g, x, {}, true)) {
        dis.push_back(prop(g.name));
        continue;
      }
      Formula inner = fp_inner(x, t, need_x, memo, g);
      if (inner.kind() != Kind::Ff) dis.push_back(conj(prop(g.name), inner));
    }
    memo.pop_back();
    out = disj_all(dis);
  } else {
    std::string& name = names_[key];
    if (name.empty()) name = "_F" + std::to_string(counter_++);
    memo.push_back({t, name});
    std::vector<Formula> dis;
    for (const auto& g : graphs_) {
      const bool member = g.has(t.first) && g.has(t.second) && (g.label[t.first] & kInTop) &&
                          (g.label[t.second] & kOutTop);
      if (!member) continue;
      if (path(g, x, t.first, t.second, {}, need_x)) {
        dis.push_back(prop(g.name));
        continue;
      }
      Formula inner = fp_inner(x, t, need_x, memo, g);
      if (inner.kind() != Kind::Ff) dis.push_back(conj(prop(g.name), inner));
    }
    memo.pop_back();
    out = mu(name, disj_all(dis));
  }
  cache_[key] = out;
  return out;
}

Formula Encoder::fp_inner(int x, Pair t, bool need_x,
                          std::vector<std::pair<Pair, std::string>>& memo, const DepGraph& g) {
  auto holds = [&](const std::vector<Pair>& s, bool with_x) {
    return t == kNoPair ? cycle(g, x, s, with_x) : path(g, x, t.first, t.second, s, with_x);
  };
  // <alpha(s)> F(nx(s)) over the alternatives of nx
  auto step = [&](Pair s, auto&& fn) {
    std::vector<Formula> alts;
    for (Pair n : nx(s)) alts.push_back(dia_of(s.first, fn(n)));
    return disj_all(alts);
  };
  std::vector<Formula> dis;
  for_subsets(candidates(g), [&](const std::vector<Pair>& s) {
    std::vector<std::pair<Pair, std::string>> fresh;
    std::vector<Formula> all;
    for (Pair p : s)
      all.push_back(step(p, [&](Pair n) { return fp_rec(x, n, false, need_x ? fresh : memo); }));
    if (!need_x) {
      if (holds(s, false)) dis.push_back(conj_all(all));
      return;
    }
    if (holds(s, true)) {
      dis.push_back(conj_all(all));
    } else if (holds(s, false)) {
      std::vector<Formula> some;
      for (Pair p : s) some.push_back(step(p, [&](Pair n) { return fp_rec(x, n, true, memo); }));
      dis.push_back(conj(disj_all(some), conj_all(all)));
    }
  });
  return disj_all(dis);
}

Formula Encoder::fp(int x, Pair t, bool need_x, const std::vector<Pair>& memo) {
  if (t == kNoPair && !need_x) throw Error("encode: the cycle family requires an X-visit");
  std::vector<std::pair<Pair, std::string>> m;
  for (Pair p : memo) {
    m.push_back({p, fp_binder(x, p, need_x, [&] {
                   std::vector<Pair> pre;
                   for (const auto& q : m) pre.push_back(q.first);
                   return pre;
                 }())});
  }
  return fp_rec(x, t, need_x, m);
}

std::string Encoder::fp_binder(int x, Pair t, bool need_x, const std::vector<Pair>& memo) {
  if (t == kNoPair) return "";
  std::string key = std::string(need_x ? "X" : "F") + std::to_string(x) + "|" + pair_key(t) + "|";
  for (Pair p : memo) key += pair_key(p) + ";";
  std::string& name = names_[key];
  if (name.empty()) name = "_F" + std::to_string(counter_++);
  return name;
}

Formula Encoder::ip_rec(int x, int psi, std::vector<std::pair<int, std::string>>& memo,
                        std::vector<int> memo_x) {
  stats_.max_ip_memo = std::max(stats_.max_ip_memo, memo.size());
  if (std::find(memo_x.begin(), memo_x.end(), psi) != memo_x.end()) {
    for (const auto& [p, name] : memo)
      if (p == psi) return var(name + "X");
  }
  for (const auto& [p, name] : memo)
    if (p == psi) return var(name);
  std::string key = "I" + std::to_string(x) + "|" + std::to_string(psi) + "|";
  for (const auto& [p, name] : memo) key += std::to_string(p) + ";";
  key += "|";
  std::sort(memo_x.begin(), memo_x.end());
  for (int p : memo_x) key += std::to_string(p) + ";";
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;
  std::string& name = names_[key];
  if (name.empty()) name = "_I" + std::to_string(counter_++);
  const std::string nu_name = name;
  memo.push_back({psi, nu_name});

  auto next = [&](int out, std::vector<int> mx) {
    std::vector<Formula> alts;
    for (int f : firsts(out)) alts.push_back(dia_of(out, ip_rec(x, f, memo, mx)));
    return disj_all(alts);
  };
  auto fp_all = [&](const std::vector<Pair>& s, bool with_x) {
    std::vector<Formula> v;
    for (Pair p : s) {
      std::vector<Formula> alts;
      for (Pair n : nx(p)) {
        std::vector<std::pair<Pair, std::string>> fresh;
        alts.push_back(dia_of(p.first, fp_rec(x, n, with_x, fresh)));
      }
      v.push_back(disj_all(alts));
    }
    return v;
  };

  std::vector<Formula> dis;
  for (const auto& g : graphs_) {
    if (!g.has(psi)) continue;
    std::vector<Formula> parts;
    auto cands = candidates(g);
    for (int out : g.phi) {
      if (!(g.label[out] & kOutBot)) continue;
      auto consider = [&](const std::vector<Pair>& s) {
        if (path(g, x, psi, out, s, true)) {
          parts.push_back(conj(conj_all(fp_all(s, false)), next(out, {})));
        } else if (path(g, x, psi, out, s, false)) {
          std::vector<Formula> with_x;
          if (!s.empty())
            with_x.push_back(conj(conj(disj_all(fp_all(s, true)), conj_all(fp_all(s, false))),
                                  next(out, {})));
          std::vector<int> mx = memo_x;
          mx.push_back(psi);
          with_x.push_back(conj(conj_all(fp_all(s, false)), next(out, mx)));
          parts.push_back(disj_all(with_x));
        }
      };
      consider({});
      for_subsets(cands, consider);
    }
    if (!parts.empty()) dis.push_back(conj(prop(g.name), disj_all(parts)));
  }
  memo.pop_back();
  Formula out = nu(nu_name, mu(nu_name + "X", disj_all(dis)));
  cache_[key] = out;
  return out;
}

Formula Encoder::ip(int x, int psi) {
  std::vector<std::pair<int, std::string>> memo;
  return ip_rec(x, psi, memo, {});
}

Formula Encoder::inf_path() {
  std::vector<Formula> dis;
  for (std::size_t x = 0; x < least_.size(); ++x) {
    dis.push_back(fp(static_cast<int>(x), kNoPair, true));
    for (const auto& g : graphs_)
      for (int psi : g.phi) dis.push_back(conj(prop(g.name), ip(static_cast<int>(x), psi)));
  }
  return disj_all(dis);
}

Formula Encoder::rules() {
  std::vector<Formula> parts;
  std::vector<Formula> any;
  for (const auto& g : graphs_) any.push_back(prop(g.name));
  parts.push_back(disj_all(any));
  for (std::size_t i = 0; i < graphs_.size(); ++i)
    for (std::size_t j = i + 1; j < graphs_.size(); ++j)
      parts.push_back(disj(nprop(graphs_[i].name), nprop(graphs_[j].name)));
  for (const auto& g : graphs_) {
    std::vector<Formula> req;
    auto children = [&](const std::string& a, std::optional<Formula> chi) {
      std::vector<Formula> hs;
      for (const auto& h : graphs_)
        if (child(g, h, a, chi)) hs.push_back(prop(h.name));
      return disj_all(hs);
    };
    for (int i : g.phi) {
      Formula f = forms_[i];
      const bool d_rule = f.kind() == Kind::Box && conds_.at(f.agent()).has(Cond::D);
      if (f.kind() == Kind::Dia || d_rule)
        req.push_back(dia(agent_name(f.agent(), f.body()), children(f.agent(), f.body())));
    }
    for (const auto& a : base_agents_) {
      auto it = enc_of_.find(a);
      if (it == enc_of_.end()) continue;
      req.push_back(box_all(it->second, children(a, std::nullopt)));
    }
    if (!req.empty()) parts.push_back(guard(prop(g.name), conj_all(req)));
  }
  return inv(conj_all(parts), enc_agents_);
}

Formula Encoder::encode() {
  Formula r = rules();
  Formula safe = inv(negate(inf_path()), enc_agents_);
  std::vector<Formula> start;
  const int f0 = index_of(root_);
  for (const auto& g : graphs_)
    if (g.has(f0)) start.push_back(prop(g.name));
  return conj(conj(r, safe), disj_all(start));
}

std::string Encoder::table() const {
  std::ostringstream os;
  for (const auto& g : graphs_) {
    os << g.name << ":";
    for (int i : g.phi) {
      os << " [" << print(forms_[i]);
      const std::uint8_t l = g.label[i];
      if (l) {
        os << " |";
        if (l & kInTop) os << " in-top";
        if (l & kInBot) os << " in-bot";
        if (l & kOutTop) os << " out-top";
        if (l & kOutBot) os << " out-bot";
      }
      os << "]";
    }
    for (std::size_t x = 0; x < g.edges.size(); ++x)
      for (auto [u, v] : g.edges[x])
        os << " " << print(forms_[u]) << " -" << least_[x] << "-> " << print(forms_[v]);
    os << "\n";
  }
  for (const auto& a : enc_agents_) {
    const auto pos = a.rfind("_x");
    os << a << ": " << a.substr(0, pos) << "<" << print(forms_[std::stoi(a.substr(pos + 2))])
       << ">\n";
  }
  return os.str();
}

DepGraph Encoder::branch_to_graph(const Tableau& t, const Branch& b, int prefix) const {
  if (t.is_prop_closed(b)) throw Error("branch_to_graph: branch is propositionally closed");
  const auto& pre = b.prefixes().at(static_cast<std::size_t>(prefix));
  std::vector<int> phi;
  for (int pf : pre.pfs) {
    const int i = index_of(t.formula(b.pfs()[pf].formula));
    if (i < 0) throw Error("branch_to_graph: tableau and encoder disagree on subformulas");
    phi.push_back(i);
  }
  std::sort(phi.begin(), phi.end());
  std::vector<int> choice;
  for (int i : phi) {
    Formula f = forms_[i];
    if (f.kind() != Kind::Or) continue;
    const int pf = b.find_pf(prefix, t.formula_id(f));
    int c = -1;
    for (int dep : b.deps()[pf]) {
      const auto& q = b.pfs()[dep];
      if (q.prefix != prefix) continue;
      Formula target = t.formula(q.formula);
      if (target == f.left() || target == f.right()) c = index_of(target);
    }
    // the or-rule never fired when a disjunct arrived first: take the first present one
    if (c < 0) c = std::binary_search(phi.begin(), phi.end(), index_of(f.left())) ? index_of(f.left())
                                                                                  : index_of(f.right());
    choice.push_back(c);
  }
  DepGraph g = make_graph(phi, choice);
  if (!find_graph(g.name)) throw Error("branch_to_graph: prefix formulas are not locally saturated");
  return g;
}

PointedModel Encoder::branch_to_model(const Tableau& t, const Branch& b) const {
  if (t.is_prop_closed(b)) throw Error("branch_to_model: branch is propositionally closed");
  KripkeModel m;
  const auto& ps = b.prefixes();
  for (std::size_t i = 0; i < ps.size(); ++i) m.add_state("s" + std::to_string(i));
  for (const auto& a : enc_agents_) m.add_agent(a);
  for (std::size_t i = 0; i < ps.size(); ++i) {
    DepGraph g = branch_to_graph(t, b, static_cast<int>(i));
    m.add_prop(g.name);
    m.set_prop(g.name, i);
    if (ps[i].parent >= 0) {
      const std::string a = agent_name(t.agent_name(ps[i].agent), t.formula(ps[i].step));
      m.add_agent(a);
      m.add_edge(a, static_cast<std::size_t>(ps[i].parent), i);
    }
  }
  return {m, 0};
}

std::vector<DepGraph> enumerate_graphs(Formula f, const LogicSpec& spec, const EncodeOptions& opts) {
  return Encoder(f, spec, opts).graphs();
}

Formula build_rules(Formula f, const LogicSpec& spec, const EncodeOptions& opts) {
  return Encoder(f, spec, opts).rules();
}

Formula encode(Formula f, const LogicSpec& spec, const EncodeOptions& opts) {
  return Encoder(f, spec, opts).encode();
}

std::optional<Branch> open_branch(const Tableau& t, std::size_t kappa, std::size_t max_steps) {
  std::vector<Branch> stack{t.start()};
  for (std::size_t steps = 0; !stack.empty() && steps < max_steps; ++steps) {
    Branch b = std::move(stack.back());
    stack.pop_back();
    if (t.is_prop_closed(b) || t.is_fp_closed(b, kappa)) continue;
    auto rs = t.applicable_rules(b);
    if (rs.empty()) return b;
    auto next = t.apply(b, rs.front());
    for (auto it = next.rbegin(); it != next.rend(); ++it) stack.push_back(std::move(*it));
  }
  return std::nullopt;
}

}  // namespace mucalc
