#include <algorithm>
#include <chrono>
#include <map>
#include <numeric>
#include <set>

#include "lig/solvers.hpp"

namespace lig {

namespace {

struct UGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;
  std::vector<std::pair<int, int>> edges;  // a < b
};

UGraph undirected_of(const InfluenceGame& g) {
  UGraph u;
  u.n = g.n();
  u.adj.resize(u.n);
  std::set<std::pair<int, int>> es;
  for (int j = 0; j < g.n(); ++j)
    for (const auto& [i, w] : g.out_arcs(j)) es.insert({std::min(i, j), std::max(i, j)});
  for (const auto& [a, b] : es) {
    u.adj[a].push_back(b);
    u.adj[b].push_back(a);
    u.edges.push_back({a, b});
  }
  return u;
}

std::vector<std::vector<int>> components_of(const UGraph& u, const std::vector<char>& removed) {
  std::vector<std::vector<int>> comps;
  std::vector<char> seen(u.n, 0);
  for (int s = 0; s < u.n; ++s) {
    if (seen[s] || removed[s]) continue;
    std::vector<int> comp{s};
    seen[s] = 1;
    for (std::size_t q = 0; q < comp.size(); ++q)
      for (int v : u.adj[comp[q]])
        if (!seen[v] && !removed[v]) {
          seen[v] = 1;
          comp.push_back(v);
        }
    std::sort(comp.begin(), comp.end());
    comps.push_back(std::move(comp));
  }
  return comps;
}

int bfs_farthest(const UGraph& u, int start) {
  std::vector<int> dist(u.n, -1);
  std::vector<int> order{start};
  dist[start] = 0;
  for (std::size_t q = 0; q < order.size(); ++q)
    for (int v : u.adj[order[q]])
      if (dist[v] < 0) {
        dist[v] = dist[order[q]] + 1;
        order.push_back(v);
      }
  return order.back();
}

// BFS-grown bisection from a pseudo-peripheral node, then boundary swaps
// that reduce the cut while keeping both sides reasonably sized.
std::vector<char> bisect(const UGraph& u) {
  int a = bfs_farthest(u, 0);
  int start = bfs_farthest(u, a);
  std::vector<char> side(u.n, 1);  // 1 = B
  std::vector<int> order{start};
  std::vector<char> seen(u.n, 0);
  seen[start] = 1;
  int half = (u.n + 1) / 2;
  for (std::size_t q = 0; q < order.size() && static_cast<int>(order.size()) < half; ++q)
    for (int v : u.adj[order[q]]) {
      if (seen[v]) continue;
      seen[v] = 1;
      order.push_back(v);
      if (static_cast<int>(order.size()) >= half) break;
    }
  for (int v : order) side[v] = 0;
  int size_a = static_cast<int>(order.size());

  // both sides must survive refinement or the cover cannot separate
  const int min_side = u.n >= 4 ? std::max(2, u.n / 4) : 1;
  for (int pass = 0; pass < 10; ++pass) {
    bool moved = false;
    for (int v = 0; v < u.n; ++v) {
      int same = 0, other = 0;
      for (int w : u.adj[v]) (side[w] == side[v] ? same : other)++;
      if (other <= same) continue;  // moving must strictly reduce the cut
      int cur_a = side[v] == 0 ? size_a : u.n - size_a;
      if (cur_a - 1 < min_side) continue;
      side[v] ^= 1;
      size_a += side[v] == 0 ? +1 : -1;
      moved = true;
    }
    if (!moved) break;
  }
  return side;
}

// Maximum bipartite matching (Kuhn) on the cut edges, then a Konig cover.
std::vector<int> vertex_cover_of_cut(const UGraph& u, const std::vector<char>& side,
                                     const std::vector<std::pair<int, int>>& cut) {
  std::vector<int> lefts, rights;
  std::map<int, int> lid, rid;
  for (const auto& [a, b] : cut) {
    int l = side[a] == 0 ? a : b;
    int r = side[a] == 0 ? b : a;
    if (!lid.count(l)) {
      lid[l] = static_cast<int>(lefts.size());
      lefts.push_back(l);
    }
    if (!rid.count(r)) {
      rid[r] = static_cast<int>(rights.size());
      rights.push_back(r);
    }
  }
  std::vector<std::vector<int>> ladj(lefts.size());
  for (const auto& [a, b] : cut) {
    int l = side[a] == 0 ? a : b;
    int r = side[a] == 0 ? b : a;
    ladj[lid[l]].push_back(rid[r]);
  }
  std::vector<int> match_l(lefts.size(), -1), match_r(rights.size(), -1);
  std::vector<char> used;
  auto try_kuhn = [&](auto&& self, int l) -> bool {
    for (int r : ladj[l]) {
      if (used[r]) continue;
      used[r] = 1;
      if (match_r[r] < 0 || self(self, match_r[r])) {
        match_r[r] = l;
        match_l[l] = r;
        return true;
      }
    }
    return false;
  };
  for (std::size_t l = 0; l < lefts.size(); ++l) {
    used.assign(rights.size(), 0);
    try_kuhn(try_kuhn, static_cast<int>(l));
  }

  // Konig: alternate from unmatched left vertices; cover = (L \ Z) U (R n Z)
  std::vector<char> visit_l(lefts.size(), 0), visit_r(rights.size(), 0);
  std::vector<int> stack;
  for (std::size_t l = 0; l < lefts.size(); ++l)
    if (match_l[l] < 0) {
      visit_l[l] = 1;
      stack.push_back(static_cast<int>(l));
    }
  while (!stack.empty()) {
    int l = stack.back();
    stack.pop_back();
    for (int r : ladj[l]) {
      if (visit_r[r]) continue;
      visit_r[r] = 1;
      int l2 = match_r[r];
      if (l2 >= 0 && !visit_l[l2]) {
        visit_l[l2] = 1;
        stack.push_back(l2);
      }
    }
  }
  std::vector<int> cover;
  for (std::size_t l = 0; l < lefts.size(); ++l)
    if (!visit_l[l]) cover.push_back(lefts[l]);
  for (std::size_t r = 0; r < rights.size(); ++r)
    if (visit_r[r]) cover.push_back(rights[r]);
  std::sort(cover.begin(), cover.end());
  return cover;
}

struct SeparatorPlan {
  Separator sep;
  std::vector<std::pair<int, int>> dropped;  // ignored cut edges (anytime mode)
};

SeparatorPlan plan_separator(const InfluenceGame& game, int drop) {
  SeparatorPlan plan;
  UGraph u = undirected_of(game);
  std::vector<char> removed(u.n, 0);

  auto comps = components_of(u, removed);
  if (game.n() < 3 || comps.size() > 1) {
    plan.sep.components = std::move(comps);
    return plan;  // disconnected or tiny: the empty separator is valid
  }

  std::vector<char> side = bisect(u);
  std::vector<std::pair<int, int>> cut;
  for (const auto& [a, b] : u.edges)
    if (side[a] != side[b]) cut.push_back({a, b});

  if (drop > 0 && !cut.empty()) {
    // ignore the cut edges with the busiest endpoints; they cost the cover most
    std::map<int, int> deg;
    for (const auto& [a, b] : cut) {
      deg[a]++;
      deg[b]++;
    }
    std::vector<std::pair<int, int>> ranked = cut;
    std::stable_sort(ranked.begin(), ranked.end(), [&](const auto& e1, const auto& e2) {
      return deg[e1.first] + deg[e1.second] > deg[e2.first] + deg[e2.second];
    });
    int k = std::min<int>(drop, static_cast<int>(ranked.size()));
    plan.dropped.assign(ranked.begin(), ranked.begin() + k);
    std::set<std::pair<int, int>> gone(plan.dropped.begin(), plan.dropped.end());
    std::vector<std::pair<int, int>> kept;
    for (const auto& e : cut)
      if (!gone.count(e)) kept.push_back(e);
    cut = std::move(kept);
  }

  plan.sep.vertex_set = vertex_cover_of_cut(u, side, cut);
  for (int v : plan.sep.vertex_set) removed[v] = 1;
  if (!plan.dropped.empty()) {
    // components are taken in the graph with the ignored edges removed
    UGraph pruned = u;
    std::set<std::pair<int, int>> gone(plan.dropped.begin(), plan.dropped.end());
    for (auto& nbrs : pruned.adj) nbrs.clear();
    pruned.edges.clear();
    for (const auto& e : u.edges)
      if (!gone.count(e)) {
        pruned.adj[e.first].push_back(e.second);
        pruned.adj[e.second].push_back(e.first);
        pruned.edges.push_back(e);
      }
    plan.sep.components = components_of(pruned, removed);
  } else {
    plan.sep.components = components_of(u, removed);
  }
  return plan;
}

}  // namespace

Separator find_vertex_separator(const InfluenceGame& game, int parts) {
  if (parts != 2) throw InvalidInput("only direct bisection is supported; recurse for more parts");
  return plan_separator(game, 0).sep;
}

DivideConquerResult solve_divide_conquer(const InfluenceGame& game, const SearchConfig& cfg,
                                         int anytime_drop) {
  cfg.validate();
  if (anytime_drop < 0) throw InvalidInput("anytime_drop must be >= 0");
  auto t0 = std::chrono::steady_clock::now();

  SeparatorPlan plan = plan_separator(game, anytime_drop);
  const std::vector<int>& S = plan.sep.vertex_set;
  std::set<std::pair<int, int>> dropped(plan.dropped.begin(), plan.dropped.end());
  std::vector<char> in_s(game.n(), 0);
  for (int v : S) in_s[v] = 1;

  DivideConquerResult res;
  res.exact = anytime_drop == 0;
  res.separator = plan.sep;

  // Per-component subgames on V_i U S: original arcs except those into S
  // (S-nodes are made indifferent: threshold 0, no incoming influence) and
  // the ignored cut edges. Sub-PSNE are keyed by their S-assignment.
  long long budget_left = cfg.max_nodes ? *cfg.max_nodes : 0;
  std::vector<std::map<std::string, std::vector<JointAction>>> keyed;
  for (const auto& comp : plan.sep.components) {
    std::vector<int> nodes = comp;
    nodes.insert(nodes.end(), S.begin(), S.end());
    std::sort(nodes.begin(), nodes.end());
    std::vector<int> local(game.n(), -1);
    for (std::size_t k = 0; k < nodes.size(); ++k) local[nodes[k]] = static_cast<int>(k);

    std::vector<Arc> arcs;
    std::vector<double> b(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) b[k] = in_s[nodes[k]] ? 0.0 : game.threshold(nodes[k]);
    for (int from : nodes)
      for (const auto& [to, w] : game.out_arcs(from)) {
        if (local[to] < 0 || in_s[to]) continue;
        if (dropped.count({std::min(from, to), std::max(from, to)})) continue;
        arcs.push_back({local[from], local[to], w});
      }
    InfluenceGame sub(static_cast<int>(nodes.size()), arcs, std::move(b), {}, game.tie_epsilon());

    SearchConfig sub_cfg = cfg;
    sub_cfg.count_only = false;
    if (cfg.max_nodes) {
      if (budget_left <= 0) {
        res.complete = false;
        break;
      }
      sub_cfg.max_nodes = budget_left;
    }
    EnumerationResult sub_res = enumerate_psne(sub, sub_cfg);
    res.stats.nodes_visited += sub_res.stats.nodes_visited;
    if (cfg.max_nodes) budget_left -= sub_res.stats.nodes_visited;
    res.complete = res.complete && sub_res.complete;

    std::map<std::string, std::vector<JointAction>> by_key;
    for (const JointAction& x : sub_res.psne) {
      std::string key(S.size(), '0');
      for (std::size_t k = 0; k < S.size(); ++k) key[k] = x[local[S[k]]] > 0 ? '+' : '-';
      JointAction part(comp.size());
      for (std::size_t k = 0; k < comp.size(); ++k) part[k] = x[local[comp[k]]];
      by_key[key].push_back(std::move(part));
    }
    keyed.push_back(std::move(by_key));
  }

  if (keyed.size() == plan.sep.components.size()) {
    // outer join on the shared S assignment, then verify in the original game
    std::vector<std::string> keys;
    if (keyed.empty()) {
      keys.emplace_back(S.size(), '-');  // no components: sweep S alone
      for (std::string k(S.size(), '-');;) {
        // all S keys; tiny because this only happens for degenerate splits
        keys.push_back(k);
        std::size_t p = 0;
        while (p < k.size() && k[p] == '+') k[p++] = '-';
        if (p == k.size()) break;
        k[p] = '+';
      }
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    } else {
      for (const auto& [k, v] : keyed[0]) keys.push_back(k);
    }
    for (const std::string& key : keys) {
      bool everywhere = true;
      for (const auto& by_key : keyed)
        if (!by_key.count(key)) {
          everywhere = false;
          break;
        }
      if (!everywhere) continue;
      JointAction x(game.n(), -1);
      for (std::size_t k = 0; k < S.size(); ++k) x[S[k]] = key[k] == '+' ? 1 : -1;
      // cross product over component parts
      std::vector<std::size_t> pick(keyed.size(), 0);
      while (true) {
        for (std::size_t c = 0; c < keyed.size(); ++c) {
          const JointAction& part = keyed[c].at(key)[pick[c]];
          const auto& comp = plan.sep.components[c];
          for (std::size_t k = 0; k < comp.size(); ++k) x[comp[k]] = part[k];
        }
        if (game.is_psne(x)) res.psne.push_back(x);
        std::size_t c = 0;
        while (c < keyed.size() && ++pick[c] == keyed[c].at(key).size()) pick[c++] = 0;
        if (c == keyed.size()) break;
      }
    }
  }

  std::sort(res.psne.begin(), res.psne.end());
  res.psne.erase(std::unique(res.psne.begin(), res.psne.end()), res.psne.end());
  res.stats.psne_found = static_cast<long long>(res.psne.size());
  res.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

}  // namespace lig
