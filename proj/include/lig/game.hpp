#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lig/errors.hpp"

namespace lig {

// Binary behaviors are -1 (reject) and +1 (adopt) throughout. The 0/1
// encoding exists only inside the transforms module.
using Action = int;

// Full assignment of {-1,+1} to all players. int8_t keeps large
// equilibrium sets and 1e5-node tree instances cheap; lexicographic
// vector comparison (-1 < +1) is the canonical output order.
using JointAction = std::vector<std::int8_t>;

JointAction joint_action(const std::vector<int>& actions);
std::string to_csv_line(const JointAction& x);
int count_plus(const JointAction& x);

// Nonempty subset of {-1,+1}; also the per-player domain used by
// constraint propagation.
struct ActionSet {
  std::uint8_t bits = 0;  // bit 0: -1 allowed, bit 1: +1 allowed

  static ActionSet both() { return {3}; }
  static ActionSet only(Action a) { return {a > 0 ? std::uint8_t{2} : std::uint8_t{1}}; }
  bool contains(Action a) const { return bits & (a > 0 ? 2 : 1); }
  bool empty() const { return bits == 0; }
  int size() const { return (bits & 1) + ((bits >> 1) & 1); }
  void remove(Action a) { bits &= static_cast<std::uint8_t>(~(a > 0 ? 2 : 1)); }
  Action single() const;  // requires size() == 1
  bool operator==(const ActionSet&) const = default;
};

// Per-player action domains, or a distinguished contradiction state.
struct DomainVector {
  std::vector<ActionSet> domains;
  bool contradiction = false;

  static DomainVector full(int n) { return {std::vector<ActionSet>(n, ActionSet::both()), false}; }
  static DomainVector contradicted(int n) { return {std::vector<ActionSet>(n, ActionSet::both()), true}; }
};

// Assignment of actions to a subset of players, in assignment order.
class PartialAssignment {
 public:
  PartialAssignment() = default;
  void assign(int player, Action a);
  bool has(int player) const;
  Action at(int player) const;
  int size() const { return static_cast<int>(entries_.size()); }
  const std::vector<std::pair<int, std::int8_t>>& entries() const { return entries_; }

 private:
  std::vector<std::pair<int, std::int8_t>> entries_;
};

struct Arc {
  int from = 0;
  int to = 0;
  double weight = 0.0;
};

// n-player binary-action game given by an influence-weight matrix W
// (zero diagonal; entry (j,i) is j's influence factor on i) and a
// threshold vector b. Player i's influence function is
// sum_j w_ji x_j - b_i and its payoff is x_i times that. Immutable
// after construction and safe to share across threads.
class InfluenceGame {
 public:
  InfluenceGame(int n, const std::vector<Arc>& arcs, std::vector<double> thresholds,
                std::vector<std::string> labels = {}, double tie_epsilon = 0.0);

  int n() const { return n_; }
  double threshold(int i) const { return thresholds_[i]; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  double tie_epsilon() const { return tie_epsilon_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int i) const;

  double weight(int from, int to) const;
  // Incoming arcs of i as (source, weight); outgoing as (target, weight).
  const std::vector<std::pair<int, double>>& in_arcs(int i) const { return in_[i]; }
  const std::vector<std::pair<int, double>>& out_arcs(int j) const { return out_[j]; }
  int num_arcs() const { return num_arcs_; }
  std::vector<Arc> arcs() const;  // sorted by (from, to)

  double influence(int i, const JointAction& x) const;
  double payoff(int i, const JointAction& x) const;
  ActionSet best_responses(int i, const JointAction& x) const;
  bool is_psne(const JointAction& x) const;

  void check_player(int i) const;
  void check_joint_action(const JointAction& x) const;

 private:
  int n_;
  double tie_epsilon_;
  int num_arcs_ = 0;
  std::vector<double> thresholds_;
  std::vector<std::string> labels_;
  std::vector<std::vector<std::pair<int, double>>> in_, out_;
  std::vector<double> dense_;  // row-major (from, to), only kept for n <= 64
};

inline constexpr int kDenseLimit = 64;
inline constexpr int kBruteForceCap = 25;

// Exhaustive oracles. Every solver in the library is tested against
// these. Gray-code sweep, so cost is O(2^n * avg degree).
std::vector<JointAction> brute_force_psne(const InfluenceGame& game, int cap = kBruteForceCap);
long long brute_force_psne_count(const InfluenceGame& game, int cap = kBruteForceCap);
long long brute_force_extension_count(const InfluenceGame& game, const PartialAssignment& partial,
                                      int cap = kBruteForceCap);

}  // namespace lig
