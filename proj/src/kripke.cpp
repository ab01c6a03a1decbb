#include "mucalc/kripke.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "mucalc/error.hpp"

namespace mucalc {

std::size_t KripkeModel::add_state(const std::string& id) {
  auto it = index_.find(id);
  if (it != index_.end()) return it->second;
  std::size_t i = states_.size();
  states_.push_back(id);
  index_[id] = i;
  for (auto& [a, r] : rel_) {
    for (auto& row : r) row.resize(i + 1);
    r.emplace_back(i + 1);
  }
  for (auto& [p, v] : val_) v.resize(i + 1);
  return i;
}

std::size_t KripkeModel::index_of(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw Error("unknown state '" + id + "'");
  return it->second;
}

void KripkeModel::add_agent(const std::string& agent) {
  if (rel_.count(agent)) return;
  rel_.emplace(agent, std::vector<StateSet>(size(), StateSet(size())));
}

std::vector<std::string> KripkeModel::agents() const {
  std::vector<std::string> out;
  for (const auto& [a, r] : rel_) out.push_back(a);
  return out;
}

void KripkeModel::add_edge(const std::string& agent, std::size_t from, std::size_t to) {
  add_agent(agent);
  rel_[agent][from].set(to);
}

void KripkeModel::remove_edge(const std::string& agent, std::size_t from, std::size_t to) {
  auto it = rel_.find(agent);
  if (it != rel_.end()) it->second[from].reset(to);
}

bool KripkeModel::has_edge(const std::string& agent, std::size_t from, std::size_t to) const {
  auto it = rel_.find(agent);
  return it != rel_.end() && it->second[from].test(to);
}

const std::vector<StateSet>& KripkeModel::succ(const std::string& agent) const {
  static const std::vector<StateSet> empty;
  auto it = rel_.find(agent);
  return it == rel_.end() ? empty : it->second;
}

std::vector<std::pair<std::size_t, std::size_t>> KripkeModel::edges(
    const std::string& agent) const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  const auto& r = succ(agent);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
      out.emplace_back(i, j);
  return out;
}

void KripkeModel::add_prop(const std::string& p) {
  if (!val_.count(p)) val_.emplace(p, StateSet(size()));
}

void KripkeModel::set_prop(const std::string& p, std::size_t s, bool value) {
  add_prop(p);
  val_[p][s] = value;
}

bool KripkeModel::holds(const std::string& p, std::size_t s) const {
  auto it = val_.find(p);
  return it != val_.end() && it->second.test(s);
}

StateSet KripkeModel::prop_set(const std::string& p) const {
  auto it = val_.find(p);
  return it == val_.end() ? StateSet(size()) : it->second;
}

std::vector<std::string> KripkeModel::props() const {
  std::vector<std::string> out;
  for (const auto& [p, v] : val_) out.push_back(p);
  return out;
}

bool operator==(const KripkeModel& a, const KripkeModel& b) {
  return a.states_ == b.states_ && a.rel_ == b.rel_ && a.val_ == b.val_;
}

// ------------------------------------------------------------- text format

namespace {

std::vector<std::string> words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

PointedModel parse_model(const std::string& text) {
  PointedModel pm;
  KripkeModel& m = pm.model;
  std::string point;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto fail = [&](const std::string& msg) {
    throw Error("model line " + std::to_string(lineno) + ": " + msg);
  };
  auto state = [&](const std::string& id) {
    if (!m.has_state(id)) fail("undeclared state '" + id + "'");
    return m.index_of(id);
  };
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto colon = line.find(':');
    if (colon == std::string::npos) fail("expected ':'");
    auto head = words(line.substr(0, colon));
    std::string rest = line.substr(colon + 1);
    if (head.size() == 1 && head[0] == "states") {
      for (const auto& w : words(rest)) m.add_state(w);
    } else if (head.size() == 1 && head[0] == "point") {
      auto ws = words(rest);
      if (ws.size() != 1) fail("point takes one state");
      point = ws[0];
    } else if (head.size() == 2 && head[0] == "rel") {
      m.add_agent(head[1]);
      std::string chunk;
      std::istringstream pairs(rest);
      while (std::getline(pairs, chunk, ';')) {
        auto ws = words(chunk);
        if (ws.empty()) continue;
        if (ws.size() != 2) fail("relation pairs are 'from to' separated by ';'");
        m.add_edge(head[1], state(ws[0]), state(ws[1]));
      }
    } else if (head.size() == 2 && head[0] == "val") {
      m.add_prop(head[1]);
      for (const auto& w : words(rest)) m.set_prop(head[1], state(w));
    } else {
      fail("unknown declaration '" + trim(line.substr(0, colon)) + "'");
    }
  }
  if (m.size() == 0) throw Error("model has no states");
  pm.point = point.empty() ? 0 : m.index_of(point);
  return pm;
}

std::string print_model(const KripkeModel& m) {
  std::ostringstream out;
  out << "states:";
  for (const auto& s : m.states()) out << ' ' << s;
  out << '\n';
  for (const auto& a : m.agents()) {
    out << "rel " << a << ':';
    bool first = true;
    for (auto [i, j] : m.edges(a)) {
      out << (first ? " " : " ; ") << m.state(i) << ' ' << m.state(j);
      first = false;
    }
    out << '\n';
  }
  for (const auto& p : m.props()) {
    out << "val " << p << ':';
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m.holds(p, i)) out << ' ' << m.state(i);
    out << '\n';
  }
  return out.str();
}

std::string print_pointed(const PointedModel& pm) {
  return print_model(pm.model) + "point: " + pm.model.state(pm.point) + "\n";
}

// ------------------------------------------------------ frame conditions

bool rel_has(const std::vector<StateSet>& r, Cond c) {
  std::size_t n = r.size();
  switch (c) {
    case Cond::D:
      for (const auto& row : r)
        if (row.none()) return false;
      return true;
    case Cond::T:
      for (std::size_t i = 0; i < n; ++i)
        if (!r[i].test(i)) return false;
      return true;
    case Cond::B:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
          if (!r[j].test(i)) return false;
      return true;
    case Cond::Four:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
          if (!r[j].is_subset_of(r[i])) return false;
      return true;
    case Cond::Five:
      // every successor of i sees all successors of i
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
          if (!r[i].is_subset_of(r[j])) return false;
      return true;
  }
  return false;
}

void rel_close(std::vector<StateSet>& r, Cond c) {
  std::size_t n = r.size();
  switch (c) {
    case Cond::D:
      for (std::size_t i = 0; i < n; ++i)
        if (r[i].none()) r[i].set(i);
      break;
    case Cond::T:
      for (std::size_t i = 0; i < n; ++i) r[i].set(i);
      break;
    case Cond::B:
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (r[i].test(j)) r[j].set(i);
      break;
    case Cond::Four:
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
          if (r[i].test(k)) r[i] |= r[k];
      break;
    case Cond::Five: {
      // work-list: if (s,u) and (s,v) then add (u,v)
      std::deque<std::size_t> work;
      std::vector<bool> queued(n, true);
      for (std::size_t s = 0; s < n; ++s) work.push_back(s);
      while (!work.empty()) {
        std::size_t s = work.front();
        work.pop_front();
        queued[s] = false;
        for (std::size_t u = r[s].find_first(); u != StateSet::npos; u = r[s].find_next(u)) {
          if (r[s].is_subset_of(r[u])) continue;
          r[u] |= r[s];
          if (!queued[u]) {
            queued[u] = true;
            work.push_back(u);
          }
          // r[s] may have grown if u == s; restart scan of s later
          if (!queued[s]) {
            queued[s] = true;
            work.push_back(s);
          }
        }
      }
      break;
    }
  }
}

bool has_condition(const KripkeModel& m, const std::string& agent, Cond c) {
  if (!m.has_agent(agent)) throw Error("unknown agent '" + agent + "'");
  return rel_has(m.succ(agent), c);
}

bool satisfies_spec(const KripkeModel& m, const LogicSpec& spec) {
  std::set<std::string> agents;
  for (const auto& a : m.agents()) agents.insert(a);
  for (const auto& [a, c] : spec.agents) agents.insert(a);
  for (const auto& a : agents) {
    CondSet cs = spec.of(a);
    std::vector<StateSet> r = m.has_agent(a) ? m.succ(a)
                                             : std::vector<StateSet>(m.size(), StateSet(m.size()));
    for (Cond c : kAllConds)
      if (cs.has(c) && !rel_has(r, c)) return false;
  }
  return true;
}

namespace {

void close_agent(KripkeModel& out, const std::string& agent, Cond c) {
  out.add_agent(agent);
  std::vector<StateSet> r = out.succ(agent);
  rel_close(r, c);
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
      out.add_edge(agent, i, j);
}

}  // namespace

KripkeModel close(const KripkeModel& m, const std::string& agent, Cond c) {
  if (!m.has_agent(agent)) throw Error("unknown agent '" + agent + "'");
  KripkeModel out = m;
  close_agent(out, agent, c);
  return out;
}

KripkeModel close_logic(const KripkeModel& m, const LogicSpec& spec) {
  KripkeModel out = m;
  std::set<std::string> agents;
  for (const auto& a : m.agents()) agents.insert(a);
  for (const auto& [a, c] : spec.agents) agents.insert(a);
  for (const auto& a : agents) {
    CondSet cs = spec.of(a);
    // One pass is not enough: the euclidean closure can break transitivity.
    // Each pass only adds edges, so this stops.
    for (bool again = true; again;) {
      for (Cond c : kAllConds)
        if (cs.has(c)) close_agent(out, a, c);
      again = false;
      for (Cond c : kAllConds)
        if (cs.has(c) && !has_condition(out, a, c)) again = true;
    }
  }
  return out;
}

PointedModel generated_submodel(const PointedModel& pm) {
  const KripkeModel& m = pm.model;
  const auto agents = m.agents();
  StateSet seen(m.size());
  std::vector<std::size_t> order{pm.point};
  seen.set(pm.point);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (const auto& a : agents) {
      const auto& r = m.succ(a)[order[i]];
      for (std::size_t j = r.find_first(); j != StateSet::npos; j = r.find_next(j))
        if (!seen.test(j)) {
          seen.set(j);
          order.push_back(j);
        }
    }
  std::sort(order.begin(), order.end());
  PointedModel out;
  KripkeModel& g = out.model;
  std::vector<std::size_t> idx(m.size(), 0);
  for (std::size_t s : order) idx[s] = g.add_state(m.state(s));
  for (const auto& a : agents) {
    g.add_agent(a);
    for (std::size_t s : order) {
      const auto& r = m.succ(a)[s];
      for (std::size_t j = r.find_first(); j != StateSet::npos; j = r.find_next(j))
        g.add_edge(a, idx[s], idx[j]);
    }
  }
  for (const auto& p : m.props()) {
    g.add_prop(p);
    for (std::size_t s : order)
      if (m.holds(p, s)) g.set_prop(p, idx[s]);
  }
  out.point = idx[pm.point];
  return out;
}

// ------------------------------------------------------------- unfolding

PointedModel unfold(const PointedModel& pm, std::size_t depth) {
  const KripkeModel& m = pm.model;
  PointedModel out;
  KripkeModel& u = out.model;
  for (const auto& a : m.agents()) u.add_agent(a);
  for (const auto& p : m.props()) u.add_prop(p);
  struct Item {
    std::size_t orig, idx, len;
  };
  std::deque<Item> q;
  std::size_t root = u.add_state(m.state(pm.point));
  for (const auto& p : m.props()) u.set_prop(p, root, m.holds(p, pm.point));
  q.push_back({pm.point, root, 0});
  while (!q.empty()) {
    Item it = q.front();
    q.pop_front();
    if (it.len == depth) continue;
    for (const auto& a : m.agents()) {
      const auto& r = m.succ(a)[it.orig];
      for (std::size_t j = r.find_first(); j != StateSet::npos; j = r.find_next(j)) {
        std::string id = u.state(it.idx) + "." + a + "." + m.state(j);
        std::size_t k = u.add_state(id);
        for (const auto& p : m.props()) u.set_prop(p, k, m.holds(p, j));
        u.add_edge(a, it.idx, k);
        q.push_back({j, k, it.len + 1});
      }
    }
  }
  out.point = root;
  return out;
}

// ----------------------------------------------------------- bisimulation

bool bisimilar(const PointedModel& a, const PointedModel& b) {
  const KripkeModel& ma = a.model;
  const KripkeModel& mb = b.model;
  std::size_t na = ma.size(), n = na + mb.size();
  std::set<std::string> agents, props;
  for (const auto& x : ma.agents()) agents.insert(x);
  for (const auto& x : mb.agents()) agents.insert(x);
  for (const auto& x : ma.props()) props.insert(x);
  for (const auto& x : mb.props()) props.insert(x);

  auto holds = [&](const std::string& p, std::size_t s) {
    return s < na ? ma.holds(p, s) : mb.holds(p, s - na);
  };
  auto successors = [&](const std::string& ag, std::size_t s) {
    std::vector<std::size_t> out;
    if (s < na) {
      if (ma.has_agent(ag)) {
        const auto& r = ma.succ(ag)[s];
        for (auto j = r.find_first(); j != StateSet::npos; j = r.find_next(j)) out.push_back(j);
      }
    } else if (mb.has_agent(ag)) {
      const auto& r = mb.succ(ag)[s - na];
      for (auto j = r.find_first(); j != StateSet::npos; j = r.find_next(j))
        out.push_back(j + na);
    }
    return out;
  };

  // signature refinement until the number of blocks stabilizes
  std::vector<std::size_t> color(n);
  {
    std::map<std::vector<bool>, std::size_t> ids;
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<bool> key;
      for (const auto& p : props) key.push_back(holds(p, s));
      color[s] = ids.emplace(key, ids.size()).first->second;
    }
  }
  std::size_t blocks = 0;
  for (;;) {
    std::map<std::vector<std::size_t>, std::size_t> ids;
    std::vector<std::size_t> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<std::size_t> key{color[s]};
      for (const auto& ag : agents) {
        std::set<std::size_t> cs;
        for (auto t : successors(ag, s)) cs.insert(color[t]);
        key.push_back(static_cast<std::size_t>(-1));
        key.insert(key.end(), cs.begin(), cs.end());
      }
      next[s] = ids.emplace(key, ids.size()).first->second;
    }
    color = std::move(next);
    if (ids.size() == blocks) break;
    blocks = ids.size();
  }
  return color[a.point] == color[na + b.point];
}

// ------------------------------------------------------------ enumeration

void enumerate_models(std::size_t n, const std::vector<std::string>& agents,
                      const std::vector<std::string>& props, const LogicSpec& spec,
                      const std::function<bool(const KripkeModel&)>& fn, int max_bits) {
  if (n == 0) throw Error("enumerate_models: need at least one state");
  std::size_t bits = n * n * agents.size() + n * props.size();
  if (bits > static_cast<std::size_t>(max_bits))
    throw Error("enumerate_models: search space 2^" + std::to_string(bits) + " exceeds cap");
  // admissible relations per agent
  std::vector<std::vector<std::vector<StateSet>>> rels(agents.size());
  for (std::size_t k = 0; k < agents.size(); ++k) {
    CondSet cs = spec.of(agents[k]);
    for (std::uint64_t code = 0; code < (1ULL << (n * n)); ++code) {
      std::vector<StateSet> r(n, StateSet(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (code >> (i * n + j) & 1) r[i].set(j);
      bool ok = true;
      for (Cond c : kAllConds)
        if (cs.has(c) && !rel_has(r, c)) ok = false;
      if (ok) rels[k].push_back(std::move(r));
    }
  }
  std::size_t vbits = n * props.size();
  std::vector<std::size_t> pick(agents.size(), 0);
  for (;;) {
    for (std::uint64_t v = 0; v < (1ULL << vbits); ++v) {
      KripkeModel m;
      for (std::size_t i = 0; i < n; ++i) m.add_state("s" + std::to_string(i));
      for (std::size_t k = 0; k < agents.size(); ++k) {
        m.add_agent(agents[k]);
        const auto& r = rels[k][pick[k]];
        for (std::size_t i = 0; i < n; ++i)
          for (std::size_t j = r[i].find_first(); j != StateSet::npos; j = r[i].find_next(j))
            m.add_edge(agents[k], i, j);
      }
      for (std::size_t pi = 0; pi < props.size(); ++pi) {
        m.add_prop(props[pi]);
        for (std::size_t i = 0; i < n; ++i)
          if (v >> (pi * n + i) & 1) m.set_prop(props[pi], i);
      }
      if (!fn(m)) return;
    }
    std::size_t k = 0;
    while (k < agents.size()) {
      if (++pick[k] < rels[k].size()) break;
      pick[k] = 0;
      ++k;
    }
    if (k == agents.size()) return;
    for (const auto& r : rels)
      if (r.empty()) return;
  }
}

}  // namespace mucalc
