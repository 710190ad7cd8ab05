#include "lig/game.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

namespace lig {

JointAction joint_action(const std::vector<int>& actions) {
  JointAction x(actions.size());
  for (std::size_t i = 0; i < actions.size(); ++i) {
    if (actions[i] != -1 && actions[i] != 1) throw InvalidInput("actions must be -1 or +1");
    x[i] = static_cast<std::int8_t>(actions[i]);
  }
  return x;
}

std::string to_csv_line(const JointAction& x) {
  std::string s;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) s += ',';
    s += (x[i] > 0 ? "1" : "-1");
  }
  return s;
}

int count_plus(const JointAction& x) {
  int c = 0;
  for (auto a : x) c += a > 0;
  return c;
}

Action ActionSet::single() const {
  if (size() != 1) throw InvalidInput("ActionSet::single on non-singleton");
  return bits == 2 ? +1 : -1;
}

void PartialAssignment::assign(int player, Action a) {
  if (a != -1 && a != 1) throw InvalidInput("partial assignment action must be -1 or +1");
  if (has(player)) throw InvalidInput("player assigned twice in partial assignment");
  entries_.emplace_back(player, static_cast<std::int8_t>(a));
}

bool PartialAssignment::has(int player) const {
  for (const auto& [p, a] : entries_)
    if (p == player) return true;
  return false;
}

Action PartialAssignment::at(int player) const {
  for (const auto& [p, a] : entries_)
    if (p == player) return a;
  throw InvalidInput("player not present in partial assignment");
}

InfluenceGame::InfluenceGame(int n, const std::vector<Arc>& arcs, std::vector<double> thresholds,
                             std::vector<std::string> labels, double tie_epsilon)
    : n_(n), tie_epsilon_(tie_epsilon), thresholds_(std::move(thresholds)), labels_(std::move(labels)) {
  if (n_ < 1) throw InvalidInput("game needs at least one player");
  if (static_cast<int>(thresholds_.size()) != n_) throw InvalidInput("thresholds length must equal n");
  if (!labels_.empty() && static_cast<int>(labels_.size()) != n_)
    throw InvalidInput("labels length must equal n when given");
  if (!(tie_epsilon_ >= 0.0)) throw InvalidInput("tie_epsilon must be nonnegative");

  in_.resize(n_);
  out_.resize(n_);
  if (n_ <= kDenseLimit) dense_.assign(static_cast<std::size_t>(n_) * n_, 0.0);
  for (const Arc& a : arcs) {
    if (a.from < 0 || a.from >= n_ || a.to < 0 || a.to >= n_) throw InvalidInput("arc endpoint out of range");
    if (a.from == a.to) {
      if (a.weight != 0.0) throw InvalidInput("nonzero self-arc");
      continue;
    }
    if (a.weight == 0.0) continue;
    if (!dense_.empty()) {
      double& cell = dense_[static_cast<std::size_t>(a.from) * n_ + a.to];
      if (cell != 0.0) throw InvalidInput("duplicate arc");
      cell = a.weight;
    }
    in_[a.to].emplace_back(a.from, a.weight);
    out_[a.from].emplace_back(a.to, a.weight);
    ++num_arcs_;
  }
  for (auto& v : in_) std::sort(v.begin(), v.end());
  for (auto& v : out_) std::sort(v.begin(), v.end());
  if (dense_.empty()) {
    for (int i = 0; i < n_; ++i)
      for (std::size_t k = 1; k < in_[i].size(); ++k)
        if (in_[i][k].first == in_[i][k - 1].first) throw InvalidInput("duplicate arc");
  }
}

std::string InfluenceGame::label(int i) const {
  check_player(i);
  if (!labels_.empty()) return labels_[i];
  return "p" + std::to_string(i);
}

double InfluenceGame::weight(int from, int to) const {
  check_player(from);
  check_player(to);
  if (!dense_.empty()) return dense_[static_cast<std::size_t>(from) * n_ + to];
  const auto& v = in_[to];
  auto it = std::lower_bound(v.begin(), v.end(), std::make_pair(from, -1e308));
  if (it != v.end() && it->first == from) return it->second;
  return 0.0;
}

std::vector<Arc> InfluenceGame::arcs() const {
  std::vector<Arc> res;
  res.reserve(num_arcs_);
  for (int j = 0; j < n_; ++j)
    for (const auto& [i, w] : out_[j]) res.push_back({j, i, w});
  return res;
}

void InfluenceGame::check_player(int i) const {
  if (i < 0 || i >= n_) throw InvalidInput("player index out of range");
}

void InfluenceGame::check_joint_action(const JointAction& x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidInput("joint action length must equal n");
  for (auto a : x)
    if (a != -1 && a != 1) throw InvalidInput("joint action entries must be -1 or +1");
}

double InfluenceGame::influence(int i, const JointAction& x) const {
  check_player(i);
  check_joint_action(x);
  double s = 0.0;
  for (const auto& [j, w] : in_[i]) s += w * x[j];
  return s - thresholds_[i];
}

double InfluenceGame::payoff(int i, const JointAction& x) const { return x[i] * influence(i, x); }

ActionSet InfluenceGame::best_responses(int i, const JointAction& x) const {
  double f = influence(i, x);
  if (f > tie_epsilon_) return ActionSet::only(+1);
  if (f < -tie_epsilon_) return ActionSet::only(-1);
  return ActionSet::both();
}

bool InfluenceGame::is_psne(const JointAction& x) const {
  check_joint_action(x);
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    for (const auto& [j, w] : in_[i]) s += w * x[j];
    if (x[i] * (s - thresholds_[i]) < -tie_epsilon_) return false;
  }
  return true;
}

namespace {

// Gray-code sweep over all joint actions of the free players, keeping the
// per-player influence sums and an unhappy-player counter incremental.
// Visits masks so that consecutive masks differ in exactly one free player.
template <typename OnPsne>
void gray_sweep(const InfluenceGame& game, const std::vector<int>& free_players,
                const PartialAssignment& fixed, OnPsne&& on_psne) {
  const int n = game.n();
  const double eps = game.tie_epsilon();
  JointAction x(n, -1);
  for (const auto& [p, a] : fixed.entries()) x[p] = a;

  std::vector<double> s(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (const auto& [j, w] : game.in_arcs(i)) s[i] += w * x[j];

  auto happy = [&](int i) { return x[i] * (s[i] - game.threshold(i)) >= -eps; };
  int unhappy = 0;
  std::vector<char> is_unhappy(n, 0);
  for (int i = 0; i < n; ++i) {
    is_unhappy[i] = !happy(i);
    unhappy += is_unhappy[i];
  }

  auto refresh = [&](int i) {
    char u = !happy(i);
    unhappy += u - is_unhappy[i];
    is_unhappy[i] = u;
  };

  const int k = static_cast<int>(free_players.size());
  const std::uint64_t total = k >= 64 ? 0 : (std::uint64_t{1} << k);
  if (unhappy == 0) on_psne(x);
  for (std::uint64_t m = 1; m < total; ++m) {
    int bit = std::countr_zero(m);
    int p = free_players[bit];
    x[p] = static_cast<std::int8_t>(-x[p]);
    for (const auto& [i, w] : game.out_arcs(p)) {
      s[i] += 2.0 * x[p] * w;
      refresh(i);
    }
    refresh(p);
    if (unhappy == 0) on_psne(x);
  }
}

std::vector<int> free_players_of(const InfluenceGame& game, const PartialAssignment& fixed) {
  std::vector<char> taken(game.n(), 0);
  for (const auto& [p, a] : fixed.entries()) {
    game.check_player(p);
    if (taken[p]) throw InvalidInput("player assigned twice in partial assignment");
    taken[p] = 1;
  }
  std::vector<int> free;
  for (int i = 0; i < game.n(); ++i)
    if (!taken[i]) free.push_back(i);
  return free;
}

void check_cap(std::size_t free_count, int cap) {
  if (static_cast<int>(free_count) > cap)
    throw InvalidInput("brute-force cap exceeded: " + std::to_string(free_count) + " free players > cap " +
                       std::to_string(cap));
}

}  // namespace

std::vector<JointAction> brute_force_psne(const InfluenceGame& game, int cap) {
  PartialAssignment empty;
  auto free = free_players_of(game, empty);
  check_cap(free.size(), cap);
  std::vector<JointAction> out;
  gray_sweep(game, free, empty, [&](const JointAction& x) { out.push_back(x); });
  std::sort(out.begin(), out.end());
  return out;
}

long long brute_force_psne_count(const InfluenceGame& game, int cap) {
  PartialAssignment empty;
  auto free = free_players_of(game, empty);
  check_cap(free.size(), cap);
  long long c = 0;
  gray_sweep(game, free, empty, [&](const JointAction&) { ++c; });
  return c;
}

long long brute_force_extension_count(const InfluenceGame& game, const PartialAssignment& partial, int cap) {
  auto free = free_players_of(game, partial);
  check_cap(free.size(), cap);
  long long c = 0;
  gray_sweep(game, free, partial, [&](const JointAction&) { ++c; });
  return c;
}

}  // namespace lig
