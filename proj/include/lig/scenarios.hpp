#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lig/game.hpp"

namespace lig {

struct ClotureSpec {
  int quota = 0;                           // minimum number of +1 votes
  std::optional<std::vector<int>> party;   // require a strict party majority at +1

  void validate(int n) const;
};

bool meets_cloture(const JointAction& x, const ClotureSpec& spec);

// PSNE with at least quota players at +1 (and, when a party is given, a
// strict majority of party members at +1).
std::vector<JointAction> stable_cloture_set(const std::vector<JointAction>& psne, const ClotureSpec& spec);

struct CoalitionRound {
  std::vector<std::pair<int, long long>> outside_counts;  // (player, |P(V+v) \ C|)
  int chosen = -1;
  std::vector<int> tied;
};

struct CoalitionResult {
  std::vector<int> players;         // minimal forced set V
  std::vector<JointAction> cover;   // P(V), nonempty and inside the target set
  std::vector<CoalitionRound> rounds;  // heuristic mode only
};

// Minimal set V whose forced +1 votes leave only target-set PSNE
// consistent: P(V) = {x in psne : x_i = +1 for i in V} must be nonempty
// and contained in C. Exact mode sweeps subsets by increasing size and
// maximizes |P(V)|; the heuristic greedily minimizes the out-of-C
// extension count, then drops redundant members in reverse pick order.
// Throws Infeasible when every member of C is dominated from outside.
CoalitionResult filibuster_breakers(const InfluenceGame& game, const std::vector<JointAction>& psne,
                                    const std::vector<JointAction>& cloture_set, bool exact,
                                    int tie_width = 8);

// Mirror problem with forced action -1 and target psne \ C.
CoalitionResult cloture_preventers(const InfluenceGame& game, const std::vector<JointAction>& psne,
                                   const std::vector<JointAction>& cloture_set, bool exact,
                                   int tie_width = 8);

struct DynamicsOutcome {
  enum class Kind { FixedPoint, Cycle };
  Kind kind = Kind::FixedPoint;
  JointAction state;           // fixed point, or the first repeated state
  int rounds = 0;              // rounds until the state stopped changing
  int period = 0;              // cycle length (>= 2)
  int first_repeat_round = 0;  // round at which a repeat was detected
  bool stable = false;         // fixed point passes is_psne including forced players
};

// Synchronous best-response dynamics. Forced players never move; everyone
// else switches to their strict best response and holds their action when
// indifferent. Exact state repetition is detected by hashing; exceeding
// max_rounds (default 4n when < 0) throws BudgetExhausted.
DynamicsOutcome best_response_dynamics(const InfluenceGame& game, const PartialAssignment& forced,
                                       const JointAction& init, int max_rounds = -1);

// Greedy adoption-spread heuristic: repeatedly force the candidate whose
// forced adoption spreads +1 the furthest under best-response dynamics,
// until everyone plays +1; a drop-one pass trims the result. Candidates
// whose dynamics cycle score as unusable. Throws Infeasible when no
// candidate makes progress (message carries the best spread reached).
std::vector<int> diffusion_most_influential(const InfluenceGame& game, int max_rounds = -1);

struct DiffusionHit {
  std::vector<int> subset;
  DynamicsOutcome outcome;  // quota-meeting fixed point, stable flag per forced check
};

// Sweeps k-subsets of forced +1 adopters (k = 1..k_max, others start at
// -1) and records every subset whose dynamics reaches a quota-meeting
// fixed point, flagged stable/unstable; stops at the first k with a
// stable hit. eval_budget caps the total number of dynamics runs.
std::vector<DiffusionHit> diffusion_filibuster(const InfluenceGame& game, const ClotureSpec& spec,
                                               int k_max, long long eval_budget = 2000000);

std::string coalition_to_json(const CoalitionResult& result, std::size_t cloture_size);

}  // namespace lig
