#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lig/solvers.hpp"

namespace lig {

// PSNE set viewed as hyperedges over (player, action) nodes; the goal
// hyperedge is the desired stable outcome.
struct GameHypergraph {
  int num_players = 0;
  std::vector<JointAction> hyperedges;  // distinct
  int goal_index = 0;

  void validate() const;
  const JointAction& goal() const { return hyperedges[goal_index]; }
};

// Goal function g over (joint action, chosen set).
class GoalSpec {
 public:
  enum class Kind { TargetPsne, MaxAdopters, WeightedAdopters };

  static GoalSpec target_psne(JointAction x_star);
  static GoalSpec max_adopters();
  static GoalSpec weighted_adopters(std::vector<double> t);

  Kind kind() const { return kind_; }
  const JointAction& target() const { return target_; }
  double value(const JointAction& x, const std::vector<char>& in_set) const;

 private:
  Kind kind_ = Kind::MaxAdopters;
  JointAction target_;
  std::vector<double> weights_;
};

// Set preference h; larger is preferred.
class SetPreference {
 public:
  enum class Kind { MinCardinality, WeightedNodes };

  static SetPreference min_cardinality();
  static SetPreference weighted_nodes(std::vector<double> v);

  Kind kind() const { return kind_; }
  double value(const std::vector<int>& set, int n) const;
  // true when a is strictly preferred to b
  bool prefers(const std::vector<int>& a, const std::vector<int>& b, int n) const;

 private:
  Kind kind_ = Kind::MinCardinality;
  std::vector<double> weights_;
};

// All maximizers of g(., S) over the given PSNE list.
std::vector<JointAction> optimal_psne_set(const std::vector<JointAction>& psne, const GoalSpec& goal,
                                          const std::vector<int>& chosen_set);

enum class CountBackend { Hypergraph, LiveExtensions };

struct GreedyRound {
  std::vector<std::pair<int, long long>> candidate_counts;  // (player, count once fixed)
  int chosen = -1;
  std::vector<int> tied;
};

struct MostInfluentialResult {
  std::vector<int> selected;     // pick order (greedy) or sorted (exact)
  std::vector<Action> actions;   // prescribed action per selected player
  JointAction goal;              // resolved goal PSNE
  std::vector<GreedyRound> rounds;
  long long consistent_psne = 1;
};

// Greedy unique-hyperedge selection: each round fixes the goal-edge
// position that leaves the fewest consistent PSNE (ties to the lowest
// index) until exactly one remains. For the min-cardinality preference the
// result is within a (1 + ln h) factor of optimal. Counts come either from
// the materialized hypergraph or from live extension counting.
MostInfluentialResult greedy_most_influential(const InfluenceGame& game,
                                              const std::vector<JointAction>& psne, const GoalSpec& goal,
                                              const SetPreference& pref,
                                              CountBackend backend = CountBackend::Hypergraph,
                                              const SearchConfig& live_cfg = {});

// Exhaustive reference: sweeps subsets in decreasing h-preference order
// (for min-cardinality, by size then lexicographically) and returns the
// first feasible one. max_size < 0 means the full player count.
MostInfluentialResult exact_most_influential(const InfluenceGame& game,
                                             const std::vector<JointAction>& psne, const GoalSpec& goal,
                                             const SetPreference& pref, int max_size = -1, int cap = 25);

// Every h-optimal feasible set (used to audit "all optimal pairs" claims).
std::vector<std::vector<int>> exact_most_influential_all(const InfluenceGame& game,
                                                         const std::vector<JointAction>& psne,
                                                         const GoalSpec& goal, const SetPreference& pref,
                                                         int max_size = -1, int cap = 25);

// Minimum-hitting-set form of the unique hyperedge problem: nodes are the
// goal-edge positions, one edge per other PSNE holding the positions where
// it disagrees with the goal, plus the full goal edge itself.
struct HittingSetInstance {
  int num_nodes = 0;
  std::vector<std::vector<int>> edges;  // sorted, deduped
};

HittingSetInstance hitting_set_instance(const GameHypergraph& hg);

// Option dag over tied greedy choices; nodes are pick-set states, edges
// carry the player fixed when moving down a level.
struct OptionDag {
  struct Node {
    int id = 0;
    int depth = 0;
    std::vector<int> picks;
  };
  struct Edge {
    int from = 0, to = 0, player = 0;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  bool truncated = false;
};

OptionDag greedy_option_dag(const InfluenceGame& game, const std::vector<JointAction>& psne,
                            const GoalSpec& goal, int max_states = 256);

std::string option_dag_to_json(const OptionDag& dag);
std::string most_influential_to_json(const MostInfluentialResult& result);

}  // namespace lig
