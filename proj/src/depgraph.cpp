#include "depgraph.hpp"

#include <algorithm>
#include <utility>

namespace mucalc::detail {

bool lfp_closed(const DepGraph& g, const std::vector<bool>& least,
                const std::vector<std::vector<bool>>& above, std::size_t kappa) {
  const std::vector<std::vector<int>>& out = *g.out;
  const std::size_t n = g.var.size();
  for (std::size_t x = 0; x < least.size(); ++x) {
    if (!least[x]) continue;
    std::vector<int> weight(n, 0);
    std::vector<char> cut(n, 0);  // edges leaving these nodes do not count for x
    bool any = false;
    for (std::size_t i = 0; i < n; ++i) {
      const int v = g.var[i];
      if (v < 0) continue;
      if (v == static_cast<int>(x)) {
        weight[i] = 1;
        any = true;
      } else if (above[x][static_cast<std::size_t>(v)]) {
        cut[i] = 1;
      }
    }
    if (!any) continue;
    // iterative Tarjan; components come out sinks first
    std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack, comp_weight;
    std::vector<std::pair<int, std::size_t>> call;
    int counter = 0;
    for (std::size_t root = 0; root < n; ++root) {
      if (index[root] >= 0) continue;
      call.push_back({static_cast<int>(root), 0});
      while (!call.empty()) {
        auto& [v, ei] = call.back();
        if (ei == 0 && index[v] < 0) {
          index[v] = low[v] = counter++;
          stack.push_back(v);
          on_stack[v] = 1;
        }
        const auto& succ = out[v];
        bool descended = false;
        while (!cut[v] && ei < succ.size()) {
          int w = succ[ei++];
          if (index[w] < 0) {
            call.push_back({w, 0});
            descended = true;
            break;
          }
          if (on_stack[w]) low[v] = std::min(low[v], index[w]);
        }
        if (descended) continue;
        const int vv = v;
        call.pop_back();
        if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[vv]);
        if (low[vv] != index[vv]) continue;
        const int c = static_cast<int>(comp_weight.size());
        int w_sum = 0;
        std::size_t members = 0;
        int u;
        do {
          u = stack.back();
          stack.pop_back();
          on_stack[u] = 0;
          comp[u] = c;
          w_sum += weight[u];
          ++members;
        } while (u != vv);
        bool self_loop = false;
        if (!cut[vv])
          for (int w : out[vv])
            if (w == vv) self_loop = true;
        if ((members > 1 || self_loop) && w_sum > 0) return true;
        comp_weight.push_back(w_sum);
      }
    }
    if (kappa == kCyclesOnly) continue;
    // longest path (in x-occurrences) over the condensation, sinks first
    std::vector<std::vector<int>> members(comp_weight.size());
    for (std::size_t i = 0; i < n; ++i) members[comp[i]].push_back(static_cast<int>(i));
    std::vector<long> longest(comp_weight.size(), 0);
    for (std::size_t c = 0; c < comp_weight.size(); ++c) {
      long best = 0;
      for (int u : members[c]) {
        if (cut[u]) continue;
        for (int w : out[u])
          if (comp[w] != static_cast<int>(c)) best = std::max(best, longest[comp[w]]);
      }
      longest[c] = best + comp_weight[c];
      if (longest[c] > static_cast<long>(kappa)) return true;
    }
  }
  return false;
}

}  // namespace mucalc::detail
