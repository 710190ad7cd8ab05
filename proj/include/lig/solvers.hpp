#pragma once

#include <optional>
#include <vector>

#include "lig/game.hpp"

namespace lig {

struct SearchConfig {
  std::optional<long long> max_nodes;  // search-tree visit budget
  bool parallel = false;
  bool count_only = false;
  bool collect_stats = true;
  bool use_propagation = true;
  int threads = 0;  // 0 = hardware concurrency

  void validate() const;
};

struct SearchStats {
  long long nodes_visited = 0;
  long long psne_found = 0;
  double wall_time_ms = 0.0;
};

struct EnumerationResult {
  std::vector<JointAction> psne;  // empty in count-only mode
  long long count = 0;
  SearchStats stats;
  bool complete = true;  // false when the node budget ran out; psne is then a partial set
};

// Backtracking enumeration of all PSNE, lexicographically ordered.
// Branches on the max-outdegree node first, afterwards on the unassigned
// node with the largest |w| into the assigned set; prunes with the
// gamma+/gamma- influence-interval test and (optionally) domain
// propagation after each assignment.
EnumerationResult enumerate_psne(const InfluenceGame& game, const SearchConfig& cfg = {});

// Same search restricted to extensions of a partial assignment.
EnumerationResult enumerate_psne_extensions(const InfluenceGame& game, const PartialAssignment& partial,
                                            const SearchConfig& cfg = {});

// Number of PSNE that agree with the partial assignment. Throws
// BudgetExhausted if the search budget runs out (a truncated count is
// useless).
long long count_psne_extensions(const InfluenceGame& game, const PartialAssignment& partial,
                                const SearchConfig& cfg = {});

// Arc-consistency fixpoint over per-player action domains: an action is
// removed when the influence interval implied by the other players'
// domains forces the opposite sign. Sound: an action consistent with some
// PSNE extension of the input domains is never removed.
DomainVector propagate(const InfluenceGame& game, const DomainVector& domains);

// Message-passing solver for games whose underlying undirected graph is a
// forest (arc weights may be asymmetric). Returns a PSNE iff one exists.
// Runs in O(n * max degree). Throws InvalidInput on cyclic graphs.
std::optional<JointAction> solve_tree(const InfluenceGame& game);

enum class SupermodularStart { AllMinusOne, AllPlusOne };

struct SupermodularResult {
  JointAction fixed_point;
  int rounds = 0;  // synchronous rounds until the state stopped changing
};

// Synchronous best-response dynamics from an extreme profile; requires all
// weights nonnegative. Ties resolve toward the start value, so the
// trajectory is monotone and fixes within n rounds. The two extreme fixed
// points bracket every PSNE componentwise.
SupermodularResult solve_supermodular(const InfluenceGame& game, SupermodularStart start);

struct Separator {
  std::vector<int> vertex_set;               // S, sorted
  std::vector<std::vector<int>> components;  // V_1..V_k, each sorted
};

// Vertex separator of the underlying undirected graph: greedy BFS-grown
// bisection refined by boundary swaps, then the cut's bipartite graph is
// covered via maximum matching (Konig). Quality affects speed only.
Separator find_vertex_separator(const InfluenceGame& game, int parts = 2);

struct DivideConquerResult {
  std::vector<JointAction> psne;
  SearchStats stats;
  bool complete = true;
  bool exact = true;  // false when separator edges were ignored (anytime mode)
  Separator separator;
};

// Splits on a vertex separator, enumerates subgames on V_i U S with the
// S-nodes made indifferent, outer-joins on shared S assignments and
// filters every merged candidate through is_psne on the original game.
// anytime_drop > 0 ignores that many separator edges before covering: the
// output is then a subset of the PSNE set, every element still verified.
DivideConquerResult solve_divide_conquer(const InfluenceGame& game, const SearchConfig& cfg = {},
                                         int anytime_drop = 0);

}  // namespace lig
