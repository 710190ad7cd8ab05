#include "lig/scenarios.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "json.hpp"

#include "lig/detail/subsets.hpp"

namespace lig {

using nlohmann::json;

void ClotureSpec::validate(int n) const {
  if (quota < 1 || quota > n) throw InvalidInput("quota must lie in [1, n]");
  if (party) {
    std::set<int> seen;
    for (int p : *party) {
      if (p < 0 || p >= n) throw InvalidInput("party member out of range");
      if (!seen.insert(p).second) throw InvalidInput("duplicate party member");
    }
  }
}

bool meets_cloture(const JointAction& x, const ClotureSpec& spec) {
  if (count_plus(x) < spec.quota) return false;
  if (spec.party) {
    int yes = 0;
    for (int p : *spec.party) yes += x[p] > 0;
    if (2 * yes <= static_cast<int>(spec.party->size())) return false;  // strict majority
  }
  return true;
}

std::vector<JointAction> stable_cloture_set(const std::vector<JointAction>& psne,
                                            const ClotureSpec& spec) {
  if (!psne.empty()) spec.validate(static_cast<int>(psne.front().size()));
  std::vector<JointAction> out;
  for (const JointAction& x : psne)
    if (meets_cloture(x, spec)) out.push_back(x);
  return out;
}

namespace {

// Shared engine for filibuster_breakers (sign +1, target C) and
// cloture_preventers (sign -1, target psne \ C).
CoalitionResult solve_coalition(const InfluenceGame& game, const std::vector<JointAction>& psne,
                                const std::vector<JointAction>& target, Action sign, bool exact,
                                int tie_width) {
  if (tie_width < 1) throw InvalidInput("tie_width must be >= 1");
  const int n = game.n();
  for (const JointAction& x : psne) game.check_joint_action(x);
  std::set<JointAction> target_set(target.begin(), target.end());
  for (const JointAction& x : target)
    if (std::find(psne.begin(), psne.end(), x) == psne.end())
      throw InvalidInput("target set must be a subset of the PSNE list");

  auto extensions = [&](const std::vector<int>& v) {
    std::vector<JointAction> p;
    for (const JointAction& x : psne) {
      bool ok = true;
      for (int i : v)
        if (x[i] != sign) {
          ok = false;
          break;
        }
      if (ok) p.push_back(x);
    }
    return p;
  };
  auto outside_count = [&](const std::vector<JointAction>& p) {
    long long c = 0;
    for (const JointAction& x : p) c += !target_set.count(x);
    return c;
  };

  // feasibility needs some target PSNE no outsider dominates (y dominates x
  // when every sign-vote of x is also a sign-vote of y)
  auto dominates = [&](const JointAction& y, const JointAction& x) {
    for (int i = 0; i < n; ++i)
      if (x[i] == sign && y[i] != sign) return false;
    return true;
  };
  std::vector<JointAction> undominated;
  for (const JointAction& x : target) {
    bool dead = false;
    for (const JointAction& y : psne)
      if (!target_set.count(y) && dominates(y, x)) {
        dead = true;
        break;
      }
    if (!dead) undominated.push_back(x);
  }
  if (undominated.empty())
    throw Infeasible("every target outcome is dominated by an outside PSNE");

  CoalitionResult res;
  if (exact) {
    // smallest V with nonempty P(V) inside the target; ties break toward
    // the largest cover, then lexicographically
    for (int size = 0; size <= n && res.cover.empty(); ++size) {
      detail::for_each_subset_of_size(n, size, [&](const std::vector<int>& idx) {
        auto p = extensions(idx);
        if (!p.empty() && outside_count(p) == 0 && p.size() > res.cover.size()) {
          res.players = idx;
          res.cover = std::move(p);
        }
        return false;  // scan the whole size for the best cover
      });
    }
    if (res.cover.empty()) throw Infeasible("no feasible coalition found");
    return res;
  }

  // Greedy: pick the player that minimizes the out-of-target extension
  // count while keeping some undominated target outcome alive.
  std::set<JointAction> undom_set(undominated.begin(), undominated.end());
  std::vector<int> picks;
  auto alive = [&](const std::vector<JointAction>& p) {
    for (const JointAction& x : p)
      if (undom_set.count(x)) return true;
    return false;
  };
  long long outside = outside_count(extensions(picks));
  while (outside > 0) {
    CoalitionRound round;
    long long best = outside + 1;
    for (int c = 0; c < n; ++c) {
      if (std::find(picks.begin(), picks.end(), c) != picks.end()) continue;
      picks.push_back(c);
      auto p = extensions(picks);
      picks.pop_back();
      if (!alive(p)) continue;
      long long cnt = outside_count(p);
      round.outside_counts.emplace_back(c, cnt);
      best = std::min(best, cnt);
    }
    for (const auto& [c, cnt] : round.outside_counts) {
      if (cnt == best && static_cast<int>(round.tied.size()) < tie_width) round.tied.push_back(c);
    }
    if (round.tied.empty() || best >= outside)
      throw Infeasible("coalition heuristic stalled");  // unreachable given the precheck
    round.chosen = round.tied.front();
    picks.push_back(round.chosen);
    res.rounds.push_back(std::move(round));
    outside = best;
  }

  // drop-one minimality test, later picks first
  for (int i = static_cast<int>(picks.size()) - 1; i >= 0; --i) {
    std::vector<int> trial = picks;
    trial.erase(trial.begin() + i);
    auto p = extensions(trial);
    if (!p.empty() && outside_count(p) == 0) picks = std::move(trial);
  }

  std::sort(picks.begin(), picks.end());
  res.players = picks;
  res.cover = extensions(picks);
  return res;
}

}  // namespace

CoalitionResult filibuster_breakers(const InfluenceGame& game, const std::vector<JointAction>& psne,
                                    const std::vector<JointAction>& cloture_set, bool exact,
                                    int tie_width) {
  return solve_coalition(game, psne, cloture_set, +1, exact, tie_width);
}

CoalitionResult cloture_preventers(const InfluenceGame& game, const std::vector<JointAction>& psne,
                                   const std::vector<JointAction>& cloture_set, bool exact,
                                   int tie_width) {
  std::set<JointAction> c_set(cloture_set.begin(), cloture_set.end());
  std::vector<JointAction> outside;
  for (const JointAction& x : psne)
    if (!c_set.count(x)) outside.push_back(x);
  return solve_coalition(game, psne, outside, -1, exact, tie_width);
}

DynamicsOutcome best_response_dynamics(const InfluenceGame& game, const PartialAssignment& forced,
                                       const JointAction& init, int max_rounds) {
  game.check_joint_action(init);
  if (max_rounds < 0) max_rounds = 4 * game.n();
  std::vector<char> is_forced(game.n(), 0);
  for (const auto& [p, a] : forced.entries()) {
    game.check_player(p);
    if (init[p] != a) throw InvalidInput("forced actions must agree with the initial state");
    is_forced[p] = 1;
  }

  const double eps = game.tie_epsilon();
  std::map<JointAction, int> seen{{init, 0}};
  JointAction x = init, next(game.n());
  for (int round = 0; round <= max_rounds; ++round) {
    bool changed = false;
    for (int i = 0; i < game.n(); ++i) {
      if (is_forced[i]) {
        next[i] = x[i];
        continue;
      }
      double f = -game.threshold(i);
      for (const auto& [j, w] : game.in_arcs(i)) f += w * x[j];
      next[i] = f > eps ? 1 : (f < -eps ? -1 : x[i]);  // indifferent players hold
      changed = changed || next[i] != x[i];
    }
    if (!changed) {
      DynamicsOutcome out;
      out.kind = DynamicsOutcome::Kind::FixedPoint;
      out.state = x;
      out.rounds = round;
      out.stable = game.is_psne(x);
      return out;
    }
    auto [it, fresh] = seen.try_emplace(next, round + 1);
    if (!fresh) {
      DynamicsOutcome out;
      out.kind = DynamicsOutcome::Kind::Cycle;
      out.state = next;
      out.first_repeat_round = round + 1;
      out.period = round + 1 - it->second;
      return out;
    }
    x = next;
  }
  throw BudgetExhausted("dynamics hit the round cap without fixing or repeating");
}

namespace {

JointAction forced_start(const JointAction& base, const std::vector<int>& forced) {
  JointAction x = base;
  for (int p : forced) x[p] = 1;
  return x;
}

PartialAssignment forced_partial(const std::vector<int>& forced) {
  PartialAssignment pa;
  for (int p : forced) pa.assign(p, +1);
  return pa;
}

}  // namespace

std::vector<int> diffusion_most_influential(const InfluenceGame& game, int max_rounds) {
  const int n = game.n();
  JointAction all_minus(n, -1);
  std::vector<int> picks;

  auto run = [&](const std::vector<int>& forced, const JointAction& from) {
    return best_response_dynamics(game, forced_partial(forced), forced_start(from, forced), max_rounds);
  };

  JointAction current = all_minus;
  try {
    DynamicsOutcome warm = run({}, all_minus);
    if (warm.kind == DynamicsOutcome::Kind::FixedPoint) {
      current = warm.state;
      if (count_plus(current) == n) return {};  // the dynamics alone spread everywhere
    }
  } catch (const BudgetExhausted&) {
  }

  int best_spread_seen = count_plus(current);
  while (count_plus(current) < n) {
    int best_c = -1, best_spread = -1;
    DynamicsOutcome best_out;
    for (int c = 0; c < n; ++c) {
      if (std::find(picks.begin(), picks.end(), c) != picks.end()) continue;
      std::vector<int> trial = picks;
      trial.push_back(c);
      try {
        DynamicsOutcome out = run(trial, current);
        if (out.kind != DynamicsOutcome::Kind::FixedPoint) continue;  // cycling candidate
        int spread = count_plus(out.state);
        if (spread > best_spread) {
          best_spread = spread;
          best_c = c;
          best_out = out;
        }
      } catch (const BudgetExhausted&) {
      }
    }
    if (best_c < 0)
      throw Infeasible("diffusion heuristic failed: no candidate reaches a fixed point; best spread " +
                       std::to_string(best_spread_seen) + " of " + std::to_string(n));
    picks.push_back(best_c);
    current = best_out.state;
    best_spread_seen = std::max(best_spread_seen, count_plus(current));
    if (static_cast<int>(picks.size()) == n) break;
  }
  if (count_plus(current) < n)
    throw Infeasible("diffusion heuristic failed: best spread " + std::to_string(best_spread_seen) +
                     " of " + std::to_string(n));

  // drop-one pass: a pick is redundant if the rest still spread everywhere
  for (int i = static_cast<int>(picks.size()) - 1; i >= 0; --i) {
    std::vector<int> trial = picks;
    trial.erase(trial.begin() + i);
    try {
      DynamicsOutcome out = run(trial, all_minus);
      if (out.kind == DynamicsOutcome::Kind::FixedPoint && count_plus(out.state) == game.n())
        picks = std::move(trial);
    } catch (const BudgetExhausted&) {
    }
  }
  return picks;
}

std::vector<DiffusionHit> diffusion_filibuster(const InfluenceGame& game, const ClotureSpec& spec,
                                               int k_max, long long eval_budget) {
  spec.validate(game.n());
  if (k_max < 1) throw InvalidInput("k_max must be >= 1");
  const int n = game.n();
  JointAction all_minus(n, -1);
  std::vector<DiffusionHit> hits;

  for (int k = 1; k <= std::min(k_max, n); ++k) {
    bool stable_hit = false;
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      if (--eval_budget < 0) throw BudgetExhausted("diffusion sweep exceeded its evaluation budget");
      try {
        DynamicsOutcome out =
            best_response_dynamics(game, forced_partial(idx), forced_start(all_minus, idx), -1);
        if (out.kind == DynamicsOutcome::Kind::FixedPoint && meets_cloture(out.state, spec)) {
          hits.push_back({idx, out});
          stable_hit = stable_hit || out.stable;
        }
      } catch (const BudgetExhausted&) {
        // a run that never settles is simply not a hit
      }
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (stable_hit) break;
  }
  return hits;
}

std::string coalition_to_json(const CoalitionResult& result, std::size_t cloture_size) {
  json rounds = json::array();
  for (const auto& r : result.rounds) {
    json scores = json::object();
    for (const auto& [c, cnt] : r.outside_counts) scores[std::to_string(c)] = cnt;
    rounds.push_back(json{{"outside_counts", scores}, {"chosen", r.chosen}, {"tied", r.tied}});
  }
  json j{{"selected", result.players},
         {"cover_size", result.cover.size()},
         {"stable_cloture_count", cloture_size},
         {"rounds", rounds}};
  return j.dump(2) + "\n";
}

}  // namespace lig
