#include "lig/influence.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"

#include "lig/detail/subsets.hpp"

namespace lig {

using nlohmann::json;

void GameHypergraph::validate() const {
  if (goal_index < 0 || goal_index >= static_cast<int>(hyperedges.size()))
    throw InvalidInput("goal index out of range");
  std::set<JointAction> seen;
  for (const JointAction& e : hyperedges) {
    if (static_cast<int>(e.size()) != num_players) throw InvalidInput("hyperedge length mismatch");
    if (!seen.insert(e).second) throw InvalidInput("duplicate hyperedge");
  }
}

GoalSpec GoalSpec::target_psne(JointAction x_star) {
  GoalSpec g;
  g.kind_ = Kind::TargetPsne;
  g.target_ = std::move(x_star);
  return g;
}

GoalSpec GoalSpec::max_adopters() {
  GoalSpec g;
  g.kind_ = Kind::MaxAdopters;
  return g;
}

GoalSpec GoalSpec::weighted_adopters(std::vector<double> t) {
  GoalSpec g;
  g.kind_ = Kind::WeightedAdopters;
  g.weights_ = std::move(t);
  return g;
}

double GoalSpec::value(const JointAction& x, const std::vector<char>& in_set) const {
  switch (kind_) {
    case Kind::TargetPsne:
      return x == target_ ? 1.0 : 0.0;
    case Kind::MaxAdopters: {
      double s = 0.0;
      for (auto a : x) s += a;
      return s;
    }
    case Kind::WeightedAdopters: {
      if (weights_.size() != x.size()) throw InvalidInput("goal weight length mismatch");
      double s = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i)
        s += (i < in_set.size() && in_set[i] ? 1.0 : -1.0) * weights_[i] * x[i];
      return s;
    }
  }
  throw InvalidInput("bad goal kind");
}

SetPreference SetPreference::min_cardinality() { return {}; }

SetPreference SetPreference::weighted_nodes(std::vector<double> v) {
  SetPreference p;
  p.kind_ = Kind::WeightedNodes;
  p.weights_ = std::move(v);
  return p;
}

double SetPreference::value(const std::vector<int>& set, int n) const {
  if (kind_ == Kind::MinCardinality) return -static_cast<double>(set.size());
  if (static_cast<int>(weights_.size()) != n) throw InvalidInput("preference weight length mismatch");
  std::vector<char> in(n, 0);
  for (int i : set) in[i] = 1;
  double s = 0.0;
  for (int i = 0; i < n; ++i) s += (in[i] ? 1.0 : -1.0) * weights_[i];
  return s;
}

bool SetPreference::prefers(const std::vector<int>& a, const std::vector<int>& b, int n) const {
  return value(a, n) > value(b, n);
}

std::vector<JointAction> optimal_psne_set(const std::vector<JointAction>& psne, const GoalSpec& goal,
                                          const std::vector<int>& chosen_set) {
  if (psne.empty()) throw InvalidInput("optimal_psne_set needs a nonempty PSNE list");
  std::size_t n = psne.front().size();
  std::vector<char> in(n, 0);
  for (int i : chosen_set) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) throw InvalidInput("chosen set index out of range");
    in[i] = 1;
  }
  if (goal.kind() == GoalSpec::Kind::TargetPsne &&
      std::find(psne.begin(), psne.end(), goal.target()) == psne.end())
    throw InvalidInput("target joint action is not in the PSNE list");
  double best = -1e308;
  std::vector<JointAction> out;
  for (const JointAction& x : psne) {
    double v = goal.value(x, in);
    if (v > best + 1e-12) {
      best = v;
      out.clear();
    }
    if (v >= best - 1e-12) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Fast consistency counting against a fixed goal: each PSNE is reduced to
// the bitmask of positions where it disagrees with the goal, so "agrees
// with the goal on S" is one AND per edge.
struct DiffIndex {
  int n = 0;
  std::vector<std::uint64_t> diff;     // n <= 64 path
  std::vector<std::vector<int>> wide;  // generic path: positions that differ

  DiffIndex(const std::vector<JointAction>& psne, const JointAction& goal) {
    n = static_cast<int>(goal.size());
    if (n <= 64) {
      diff.reserve(psne.size());
      for (const JointAction& e : psne) {
        std::uint64_t m = 0;
        for (int i = 0; i < n; ++i)
          if (e[i] != goal[i]) m |= std::uint64_t{1} << i;
        diff.push_back(m);
      }
    } else {
      wide.reserve(psne.size());
      for (const JointAction& e : psne) {
        std::vector<int> d;
        for (int i = 0; i < n; ++i)
          if (e[i] != goal[i]) d.push_back(i);
        wide.push_back(std::move(d));
      }
    }
  }

  long long count(std::uint64_t picks_mask, const std::vector<char>& picks_wide) const {
    long long c = 0;
    if (!diff.empty() || wide.empty()) {
      for (std::uint64_t d : diff) c += (d & picks_mask) == 0;
    } else {
      for (const auto& d : wide) {
        bool ok = true;
        for (int i : d)
          if (picks_wide[i]) {
            ok = false;
            break;
          }
        c += ok;
      }
    }
    return c;
  }
};

JointAction resolve_goal(const std::vector<JointAction>& psne, const GoalSpec& goal) {
  std::vector<int> everyone(psne.front().size());
  for (std::size_t i = 0; i < everyone.size(); ++i) everyone[i] = static_cast<int>(i);
  // lexicographically smallest maximizer keeps runs reproducible
  return optimal_psne_set(psne, goal, everyone).front();
}

struct Counter {
  const InfluenceGame* game = nullptr;
  CountBackend backend = CountBackend::Hypergraph;
  const SearchConfig* live_cfg = nullptr;
  const DiffIndex* index = nullptr;
  const JointAction* goal = nullptr;

  long long operator()(const std::vector<int>& picks) const {
    if (backend == CountBackend::Hypergraph) {
      std::uint64_t mask = 0;
      std::vector<char> wide;
      if (index->n <= 64) {
        for (int p : picks) mask |= std::uint64_t{1} << p;
      } else {
        wide.assign(index->n, 0);
        for (int p : picks) wide[p] = 1;
      }
      return index->count(mask, wide);
    }
    PartialAssignment partial;
    for (int p : picks) partial.assign(p, (*goal)[p]);
    return count_psne_extensions(*game, partial, *live_cfg);
  }
};

}  // namespace

MostInfluentialResult greedy_most_influential(const InfluenceGame& game,
                                              const std::vector<JointAction>& psne, const GoalSpec& goal,
                                              const SetPreference& pref, CountBackend backend,
                                              const SearchConfig& live_cfg) {
  if (psne.empty()) throw InvalidInput("greedy selection needs a nonempty PSNE list");
  (void)pref;  // the greedy itself is cardinality-driven; h only orders ties elsewhere
  const int n = game.n();
  MostInfluentialResult res;
  res.goal = resolve_goal(psne, goal);
  if (!game.is_psne(res.goal)) throw InvalidInput("goal joint action is not a PSNE of this game");

  DiffIndex index(psne, res.goal);
  Counter count{&game, backend, &live_cfg, &index, &res.goal};

  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i;
  if (count(all) != 1) throw Infeasible("goal outcome is dominated: uniqueness unreachable");

  std::vector<int> picks;
  long long cur = count(picks);
  while (cur > 1) {
    GreedyRound round;
    long long best = cur + 1;
    for (int c = 0; c < n; ++c) {
      if (std::find(picks.begin(), picks.end(), c) != picks.end()) continue;
      picks.push_back(c);
      long long cnt = count(picks);
      picks.pop_back();
      round.candidate_counts.emplace_back(c, cnt);
      if (cnt < best) best = cnt;
    }
    for (const auto& [c, cnt] : round.candidate_counts)
      if (cnt == best) round.tied.push_back(c);
    round.chosen = round.tied.front();  // lowest index wins ties
    if (best >= cur) throw Infeasible("goal outcome is dominated: uniqueness unreachable");
    picks.push_back(round.chosen);
    res.rounds.push_back(std::move(round));
    cur = best;
  }

  res.selected = picks;
  for (int p : picks) res.actions.push_back(res.goal[p]);
  res.consistent_psne = cur;
  return res;
}

namespace {

using detail::for_each_subset_of_size;

struct ExactSweep {
  MostInfluentialResult best;
  std::vector<std::vector<int>> all_best;
  bool found = false;
};

ExactSweep exact_sweep(const InfluenceGame& game, const std::vector<JointAction>& psne,
                       const GoalSpec& goal, const SetPreference& pref, int max_size, int cap,
                       bool collect_all) {
  if (psne.empty()) throw InvalidInput("exact selection needs a nonempty PSNE list");
  const int n = game.n();
  if (n > cap) throw InvalidInput("exact subset sweep cap exceeded");
  if (max_size < 0 || max_size > n) max_size = n;

  ExactSweep sweep;
  sweep.best.goal = resolve_goal(psne, goal);
  if (!game.is_psne(sweep.best.goal)) throw InvalidInput("goal joint action is not a PSNE of this game");
  DiffIndex index(psne, sweep.best.goal);
  Counter count{&game, CountBackend::Hypergraph, nullptr, &index, &sweep.best.goal};

  auto feasible = [&](const std::vector<int>& s) { return count(s) == 1; };

  if (pref.kind() == SetPreference::Kind::MinCardinality) {
    for (int size = 0; size <= max_size; ++size) {
      bool any = false;
      for_each_subset_of_size(n, size, [&](const std::vector<int>& s) {
        if (!feasible(s)) return false;
        if (!any) {
          sweep.best.selected = s;
          sweep.found = any = true;
        }
        if (collect_all) sweep.all_best.push_back(s);
        return !collect_all;  // stop at the first hit unless auditing all
      });
      if (any) break;
    }
  } else {
    // weighted preference: order all subsets up to max_size by h descending
    std::vector<std::vector<int>> subsets;
    for (int size = 0; size <= max_size; ++size)
      for_each_subset_of_size(n, size, [&](const std::vector<int>& s) {
        subsets.push_back(s);
        return false;
      });
    std::stable_sort(subsets.begin(), subsets.end(), [&](const auto& a, const auto& b) {
      return pref.value(a, n) > pref.value(b, n);
    });
    for (const auto& s : subsets) {
      if (!feasible(s)) continue;
      if (!sweep.found) {
        sweep.best.selected = s;
        sweep.found = true;
      }
      if (!collect_all) break;
      if (pref.value(s, n) < pref.value(sweep.best.selected, n) - 1e-12) break;
      sweep.all_best.push_back(s);
    }
  }
  if (!sweep.found) throw Infeasible("no feasible set within the size cutoff");
  for (int p : sweep.best.selected) sweep.best.actions.push_back(sweep.best.goal[p]);
  sweep.best.consistent_psne = 1;
  return sweep;
}

}  // namespace

MostInfluentialResult exact_most_influential(const InfluenceGame& game,
                                             const std::vector<JointAction>& psne, const GoalSpec& goal,
                                             const SetPreference& pref, int max_size, int cap) {
  return exact_sweep(game, psne, goal, pref, max_size, cap, false).best;
}

std::vector<std::vector<int>> exact_most_influential_all(const InfluenceGame& game,
                                                         const std::vector<JointAction>& psne,
                                                         const GoalSpec& goal, const SetPreference& pref,
                                                         int max_size, int cap) {
  return exact_sweep(game, psne, goal, pref, max_size, cap, true).all_best;
}

HittingSetInstance hitting_set_instance(const GameHypergraph& hg) {
  hg.validate();
  HittingSetInstance inst;
  inst.num_nodes = hg.num_players;
  std::set<std::vector<int>> edges;
  std::vector<int> full(hg.num_players);
  for (int i = 0; i < hg.num_players; ++i) full[i] = i;
  edges.insert(full);
  const JointAction& goal = hg.goal();
  for (int e = 0; e < static_cast<int>(hg.hyperedges.size()); ++e) {
    if (e == hg.goal_index) continue;
    std::vector<int> complement;
    for (int i = 0; i < hg.num_players; ++i)
      if (hg.hyperedges[e][i] != goal[i]) complement.push_back(i);
    edges.insert(std::move(complement));
  }
  inst.edges.assign(edges.begin(), edges.end());
  return inst;
}

OptionDag greedy_option_dag(const InfluenceGame& game, const std::vector<JointAction>& psne,
                            const GoalSpec& goal, int max_states) {
  if (psne.empty()) throw InvalidInput("option dag needs a nonempty PSNE list");
  OptionDag dag;
  JointAction resolved = resolve_goal(psne, goal);
  if (!game.is_psne(resolved)) throw InvalidInput("goal joint action is not a PSNE of this game");
  DiffIndex index(psne, resolved);
  Counter count{&game, CountBackend::Hypergraph, nullptr, &index, &resolved};

  std::map<std::vector<int>, int> ids;  // canonical sorted pick set -> node id
  std::vector<std::vector<int>> frontier{{}};
  dag.nodes.push_back({0, 0, {}});
  ids[{}] = 0;

  for (std::size_t q = 0; q < frontier.size(); ++q) {
    std::vector<int> picks = frontier[q];
    int from = ids.at(picks);
    long long cur = count(picks);
    if (cur <= 1) continue;
    long long best = cur + 1;
    std::vector<std::pair<int, long long>> cnts;
    for (int c = 0; c < game.n(); ++c) {
      if (std::find(picks.begin(), picks.end(), c) != picks.end()) continue;
      picks.push_back(c);
      long long cnt = count(picks);
      picks.pop_back();
      cnts.emplace_back(c, cnt);
      best = std::min(best, cnt);
    }
    for (const auto& [c, cnt] : cnts) {
      if (cnt != best) continue;
      std::vector<int> child = picks;
      child.push_back(c);
      std::sort(child.begin(), child.end());
      auto it = ids.find(child);
      if (it == ids.end()) {
        if (static_cast<int>(dag.nodes.size()) >= max_states) {
          dag.truncated = true;
          continue;
        }
        int id = static_cast<int>(dag.nodes.size());
        ids[child] = id;
        dag.nodes.push_back({id, dag.nodes[from].depth + 1, child});
        frontier.push_back(child);
        it = ids.find(child);
      }
      dag.edges.push_back({from, it->second, c});
    }
  }
  return dag;
}

std::string option_dag_to_json(const OptionDag& dag) {
  json nodes = json::array(), edges = json::array();
  for (const auto& nd : dag.nodes)
    nodes.push_back(json{{"id", nd.id}, {"depth", nd.depth}, {"picks", nd.picks}});
  for (const auto& e : dag.edges)
    edges.push_back(json{{"from", e.from}, {"to", e.to}, {"player", e.player}});
  json j{{"nodes", nodes}, {"edges", edges}, {"truncated", dag.truncated}};
  return j.dump(2) + "\n";
}

std::string most_influential_to_json(const MostInfluentialResult& result) {
  json rounds = json::array();
  for (const auto& r : result.rounds) {
    json counts = json::object();
    for (const auto& [c, cnt] : r.candidate_counts) counts[std::to_string(c)] = cnt;
    rounds.push_back(json{{"candidate_counts", counts}, {"chosen", r.chosen}, {"tied", r.tied}});
  }
  std::vector<int> actions(result.actions.begin(), result.actions.end());
  json j{{"selected", result.selected},
         {"actions", actions},
         {"consistent_psne", result.consistent_psne},
         {"rounds", rounds}};
  return j.dump(2) + "\n";
}

}  // namespace lig
