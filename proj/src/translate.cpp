#include "mucalc/translate.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "mucalc/error.hpp"

namespace mucalc {

namespace {

std::vector<std::string> all_agents(Formula f, const std::vector<std::string>& A) {
  std::set<std::string> s(A.begin(), A.end());
  for (const auto& a : agents_of(f)) s.insert(a);
  return {s.begin(), s.end()};
}

bool in(const std::vector<std::string>& A, const std::string& a) {
  return std::find(A.begin(), A.end(), a) != A.end();
}

void reject_markers(Formula f, const char* who) {
  for (const auto& p : props_of(f))
    if (p == kMarkP || p == kMarkQ)
      throw Error(std::string(who) + ": input uses reserved proposition '" + p + "'");
}

Formula dedup_conj(const std::vector<Formula>& parts) {
  std::vector<Formula> uniq;
  std::unordered_set<Formula> seen;
  for (Formula g : parts)
    if (seen.insert(g).second) uniq.push_back(g);
  return conj_all(uniq);
}

// Structural rewrite of modalities of agents in A; everything else is copied.
Formula rewrite_modal(Formula f, const std::vector<std::string>& A,
                      const std::function<Formula(Formula orig, Formula body)>& on_modal) {
  std::unordered_map<Formula, Formula> memo;
  std::function<Formula(Formula)> go = [&](Formula g) -> Formula {
    auto it = memo.find(g);
    if (it != memo.end()) return it->second;
    Formula r = g;
    switch (g.kind()) {
      case Kind::And:
      case Kind::Or: {
        Formula l = go(g.left());
        Formula rr = go(g.right());
        r = g.kind() == Kind::And ? conj(l, rr) : disj(l, rr);
        break;
      }
      case Kind::Box:
      case Kind::Dia: {
        Formula b = go(g.body());
        if (in(A, g.agent()))
          r = on_modal(g, b);
        else
          r = g.kind() == Kind::Box ? box(g.agent(), b) : dia(g.agent(), b);
        break;
      }
      case Kind::Mu:
      case Kind::Nu: {
        Formula b = go(g.body());
        r = g.kind() == Kind::Mu ? mu(g.name(), b) : nu(g.name(), b);
        break;
      }
      default: break;
    }
    memo[g] = r;
    return r;
  };
  return go(f);
}

}  // namespace

Formula axiom(Cond x, const std::string& a, Formula psi) {
  switch (x) {
    case Cond::D: return dia(a, tt());
    case Cond::T: return implies(box(a, psi), psi);
    case Cond::B: return implies(dia(a, box(a, psi)), psi);
    case Cond::Four: return implies(box(a, psi), box(a, box(a, psi)));
    case Cond::Five: return implies(dia(a, box(a, psi)), box(a, psi));
  }
  throw Error("axiom: bad condition");
}

Formula translate_onestep(Formula f, const std::vector<std::string>& A, Cond x) {
  if (!is_recursion_free(f)) throw Error("one-step translation needs a recursion-free formula");
  int d = modal_depth(f);
  if (x == Cond::Four || x == Cond::Five) d *= static_cast<int>(size(f));
  std::vector<Formula> parts;
  for (Formula psi : subbar(f))
    for (const auto& a : A) parts.push_back(axiom(x, a, psi));
  return conj(f, inv_d(dedup_conj(parts), d, all_agents(f, A)));
}

Formula translate_D_mu(Formula f, const std::vector<std::string>& A) {
  std::vector<Formula> parts;
  for (const auto& a : A) parts.push_back(dia(a, tt()));
  return rename_binders(conj(f, inv(conj_all(parts), all_agents(f, A))));
}

Formula translate_T_mu(Formula f, const std::vector<std::string>& A) {
  return rename_binders(rewrite_modal(f, A, [](Formula g, Formula b) {
    return g.kind() == Kind::Box ? conj(box(g.agent(), b), b) : disj(dia(g.agent(), b), b);
  }));
}

Formula translate_4_mu(Formula f, const std::vector<std::string>& A) {
  Formula out = rewrite_modal(f, A, [&](Formula g, Formula b) {
    std::string z = fresh_var({f, b});
    const std::string& a = g.agent();
    if (g.kind() == Kind::Box) return nu(z, conj(box(a, b), box(a, var(z))));
    return mu(z, disj(dia(a, b), dia(a, var(z))));
  });
  return rename_binders(out);
}

Formula translate_B_mu(Formula f, const std::vector<std::string>& A) {
  if (has_mu(f)) throw Error("symmetry translation needs a formula without least fixed points");
  reject_markers(f, "symmetry translation");
  Formula p = prop(kMarkP);
  Formula np = nprop(kMarkP);
  std::vector<Formula> sb = subbar(f);
  std::vector<Formula> closed;
  for (Formula psi : sb) closed.push_back(cl(psi, f));
  std::vector<Formula> outer{f};
  for (const auto& a : A) {
    std::vector<Formula> parts;
    parts.push_back(box(a, implies(np, dia(a, p))));
    for (Formula c : closed) parts.push_back(implies(c, box(a, box(a, implies(p, c)))));
    for (std::size_t i = 0; i < sb.size(); ++i) {
      Formula psi = sb[i];
      if (psi.kind() != Kind::Dia || psi.agent() != a) continue;
      Formula c = cl(psi.body(), f);
      parts.push_back(implies(dia(a, c), dia(a, conj(np, c))));
    }
    outer.push_back(inv(dedup_conj(parts), all_agents(f, A)));
  }
  return rename_binders(conj_all(outer));
}

std::vector<Formula> marker_vectors() {
  Formula p = prop(kMarkP), q = prop(kMarkQ);
  return {conj(p, q), conj(p, negate(q)), conj(negate(p), q)};
}

Formula marker_next(Formula pv) {
  auto v = marker_vectors();
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == pv) return v[(i + 1) % v.size()];
  throw Error("marker_next: not a marker vector");
}

Formula translate_K_mu(Formula f, const std::vector<std::string>& A) {
  reject_markers(f, "K embedding");
  bool touches = false;
  for (Formula g : subformulas(f))
    if (g.is_modal() && in(A, g.agent())) touches = true;
  Formula body = rewrite_modal(f, A, [](Formula g, Formula b) {
    std::vector<Formula> parts;
    for (Formula pv : marker_vectors()) {
      Formula nx = marker_next(pv);
      Formula inner = g.kind() == Kind::Dia ? dia(g.agent(), conj(nx, b))
                                            : box(g.agent(), implies(nx, b));
      parts.push_back(implies(pv, inner));
    }
    return conj_all(parts);
  });
  // The evaluation point has to carry a marker, or every translated modality
  // is vacuous there.
  if (touches) body = conj(marker_vectors()[0], body);
  return rename_binders(body);
}

// ---------------------------------------------------------------- pipeline

namespace {

std::string step_name(const std::string& base, const std::vector<std::string>& A) {
  std::string s = base + "{";
  for (std::size_t i = 0; i < A.size(); ++i) s += (i ? "," : "") + A[i];
  return s + "}";
}

void require_residual(const LogicSpec& res, const std::vector<std::string>& A, CondSet allowed,
                      const std::string& what) {
  for (const auto& a : A)
    if (!res.of(a).subset_of(allowed))
      throw Error("unsupported: " + what + " needs agent " + a + " to keep at most " +
                  conds_name(allowed) + ", but it keeps " + conds_name(res.of(a)));
}

CondSet preceding(Cond x) {
  CondSet s;
  for (Cond c : kAllConds) {
    if (c == x) break;
    s = s.with(c);
  }
  return s;
}

}  // namespace

Formula pipeline(Formula f, const LogicSpec& from, const LogicSpec& to,
                 const PipelineOptions& opts, std::vector<PipelineStep>* steps) {
  std::set<std::string> agents;
  for (const auto& a : agents_of(f)) agents.insert(a);
  for (const auto& [a, c] : from.agents) agents.insert(a);
  for (const auto& [a, c] : to.agents) agents.insert(a);

  std::vector<std::string> adding, removing;
  for (const auto& a : agents) {
    CondSet src = from.of(a), dst = to.of(a);
    if (src == dst) continue;
    if (src.subset_of(dst)) adding.push_back(a);
    else if (dst.subset_of(src)) removing.push_back(a);
    else throw Error("unsupported: agent " + a + " both gains and loses conditions");
  }
  if (!adding.empty() && !removing.empty())
    throw Error("unsupported: mixing added and removed conditions");

  if (!adding.empty()) {
    CondSet dtb = parse_conds("DTB");
    for (const auto& a : agents) {
      bool add = in(adding, a);
      if (add && (!from.of(a).empty() || !to.of(a).subset_of(dtb)))
        throw Error("unsupported: conditions can only be added from K to a subset of DTB");
      if (!add && !from.of(a).empty())
        throw Error("unsupported: the K embedding needs all other agents to be K");
    }
    Formula g = translate_K_mu(f, adding);
    if (steps) steps->push_back({step_name("K_mu", adding), adding, to});
    return g;
  }

  bool rf = is_recursion_free(f) && opts.onestep_for_recursion_free;
  LogicSpec cur = from;
  for (const auto& a : agents) cur.agents[a] = from.of(a);
  Formula g = f;
  const Cond order_rf[] = {Cond::Five, Cond::Four, Cond::B, Cond::T, Cond::D};
  const Cond order_mu[] = {Cond::Five, Cond::Four, Cond::T, Cond::B, Cond::D};
  for (Cond x : rf ? order_rf : order_mu) {
    std::vector<std::string> A;
    for (const auto& a : removing)
      if (cur.of(a).has(x) && !to.of(a).has(x)) A.push_back(a);
    if (A.empty()) continue;
    LogicSpec next = cur;
    for (const auto& a : A) next.agents[a] = cur.of(a).without(x);
    std::string name;
    if (rf || (x == Cond::Five && is_recursion_free(g))) {
      require_residual(next, A, preceding(x), "the one-step translation");
      g = translate_onestep(g, A, x);
      name = std::string("onestep") + cond_char(x);
    } else {
      switch (x) {
        case Cond::Five:
          throw Error("unsupported: removing condition 5 from a recursive formula");
        case Cond::Four:
          require_residual(next, A, parse_conds("DTB"), "the transitivity translation");
          g = translate_4_mu(g, A);
          name = "4_mu";
          break;
        case Cond::T:
          require_residual(next, A, parse_conds("DB"), "the reflexivity translation");
          g = translate_T_mu(g, A);
          name = "T_mu";
          break;
        case Cond::B:
          require_residual(next, A, parse_conds("D"), "the symmetry translation");
          if (has_mu(g))
            throw Error("unsupported: removing B from a formula with least fixed points");
          g = translate_B_mu(g, A);
          name = "B_mu";
          break;
        case Cond::D:
          require_residual(next, A, CondSet(), "the seriality translation");
          g = translate_D_mu(g, A);
          name = "D_mu";
          break;
      }
    }
    cur = next;
    if (steps) steps->push_back({step_name(name, A), A, cur});
  }
  return g;
}

}  // namespace mucalc
