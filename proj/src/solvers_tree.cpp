#include <algorithm>
#include <array>
#include <cmath>

#include "lig/solvers.hpp"

namespace lig {

namespace {

inline int ai(Action a) { return a > 0 ? 1 : 0; }
inline int sigma(double z) { return z > 0 ? +1 : -1; }

struct TreeView {
  std::vector<std::vector<int>> adj;  // undirected, deduped
};

TreeView undirected_view(const InfluenceGame& g) {
  TreeView tv;
  tv.adj.resize(g.n());
  for (int j = 0; j < g.n(); ++j)
    for (const auto& [i, w] : g.out_arcs(j)) {
      tv.adj[j].push_back(i);
      tv.adj[i].push_back(j);
    }
  for (auto& v : tv.adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return tv;
}

}  // namespace

std::optional<JointAction> solve_tree(const InfluenceGame& game) {
  const int n = game.n();
  const double eps = game.tie_epsilon();
  TreeView tv = undirected_view(game);

  // tables[i][x_i][x_parent]; root nodes use root_ok[i][x_i]
  std::vector<std::array<std::array<char, 2>, 2>> table(n, {{{0, 0}, {0, 0}}});
  std::vector<std::array<char, 2>> root_ok(n, {0, 0});
  std::vector<int> parent(n, -1), order;
  std::vector<char> seen(n, 0);
  order.reserve(n);

  JointAction out(n, -1);

  for (int root = 0; root < n; ++root) {
    if (seen[root]) continue;
    // iterative BFS; also detects cycles in the undirected view
    std::size_t comp_begin = order.size();
    seen[root] = 1;
    parent[root] = -1;
    order.push_back(root);
    for (std::size_t q = comp_begin; q < order.size(); ++q) {
      int u = order[q];
      for (int v : tv.adj[u]) {
        if (v == parent[u]) continue;
        if (seen[v]) throw InvalidInput("underlying graph is not a forest");
        seen[v] = 1;
        parent[v] = u;
        order.push_back(v);
      }
    }

    // downstream pass: leaves toward the root
    for (std::size_t q = order.size(); q-- > comp_begin;) {
      int i = order[q];
      for (Action xi : {-1, +1}) {
        bool feasible = true;
        double base = -game.threshold(i);
        for (int c : tv.adj[i]) {
          if (c == parent[i]) continue;
          char br_m = table[c][0][ai(xi)], br_p = table[c][1][ai(xi)];
          double w = game.weight(c, i);
          if (!br_m && !br_p) {
            feasible = false;  // some subtree neighbor has no viable reply
            break;
          }
          if (br_m && br_p) base += w * sigma(xi * w);
          else base += w * (br_p ? +1 : -1);
        }
        if (i == order[comp_begin]) {  // component root: no parent term
          root_ok[i][ai(xi)] = feasible && xi * base >= -eps;
        } else {
          if (!feasible) {
            table[i][ai(xi)][0] = table[i][ai(xi)][1] = 0;
          } else {
            double wp = game.weight(parent[i], i);
            for (Action xp : {-1, +1})
              table[i][ai(xi)][ai(xp)] = xi * (wp * xp + base) >= -eps;
          }
        }
      }
    }

    int rt = order[comp_begin];
    Action xz;
    if (root_ok[rt][0]) xz = -1;
    else if (root_ok[rt][1]) xz = +1;
    else return std::nullopt;

    // upstream pass: replay the witness choices down the component
    out[rt] = static_cast<std::int8_t>(xz);
    for (std::size_t q = comp_begin; q < order.size(); ++q) {
      int i = order[q];
      Action xi = out[i];
      for (int c : tv.adj[i]) {
        if (c == parent[i]) continue;
        char br_m = table[c][0][ai(xi)], br_p = table[c][1][ai(xi)];
        double w = game.weight(c, i);
        Action xc;
        if (br_m && br_p) xc = sigma(xi * w);
        else xc = br_p ? +1 : -1;
        out[c] = static_cast<std::int8_t>(xc);
      }
    }
  }
  return out;
}

SupermodularResult solve_supermodular(const InfluenceGame& game, SupermodularStart start) {
  for (int j = 0; j < game.n(); ++j)
    for (const auto& [i, w] : game.out_arcs(j))
      if (w < 0) throw InvalidInput("supermodular dynamics need nonnegative weights");

  const double eps = game.tie_epsilon();
  const std::int8_t fill = start == SupermodularStart::AllPlusOne ? 1 : -1;
  JointAction x(game.n(), fill);
  JointAction next(game.n());
  for (int round = 0; round <= game.n(); ++round) {
    bool changed = false;
    for (int i = 0; i < game.n(); ++i) {
      double s = -game.threshold(i);
      for (const auto& [j, w] : game.in_arcs(i)) s += w * x[j];
      std::int8_t a = s > eps ? 1 : (s < -eps ? -1 : fill);  // ties hold the start value
      next[i] = a;
      changed = changed || a != x[i];
    }
    if (!changed) return {x, round};
    x.swap(next);
  }
  throw Error("supermodular dynamics failed to fix within n rounds");
}

}  // namespace lig
