#include <algorithm>
#include <atomic>
#include <cassert>
#include <chrono>
#include <cmath>
#include <deque>
#include <future>
#include <thread>

#include "lig/solvers.hpp"

namespace lig {

void SearchConfig::validate() const {
  if (max_nodes && *max_nodes < 1) throw InvalidInput("search budget must be >= 1");
  if (threads < 0) throw InvalidInput("threads must be >= 0");
}

namespace {

// Influence interval of player i implied by the current domains.
void influence_bounds(const InfluenceGame& g, const std::vector<ActionSet>& dom, int i, double& lo,
                      double& hi) {
  lo = hi = -g.threshold(i);
  for (const auto& [j, w] : g.in_arcs(i)) {
    if (dom[j].size() == 2) {
      lo -= std::abs(w);
      hi += std::abs(w);
    } else {
      double c = w * dom[j].single();
      lo += c;
      hi += c;
    }
  }
}

// Domain fixpoint with an optional undo trail. seeds name the players whose
// domains just changed; an empty list means sweep every player once.
// Returns false on contradiction.
bool propagate_domains(const InfluenceGame& g, std::vector<ActionSet>& dom,
                       std::vector<std::pair<int, std::uint8_t>>* trail, const std::vector<int>& seeds) {
  std::deque<int> targets;
  std::vector<char> pending(g.n(), 0);
  auto push = [&](int i) {
    if (!pending[i]) {
      pending[i] = 1;
      targets.push_back(i);
    }
  };
  if (seeds.empty()) {
    for (int i = 0; i < g.n(); ++i) push(i);
  } else {
    for (int j : seeds) {
      push(j);
      for (const auto& [i, w] : g.out_arcs(j)) push(i);
    }
  }

  const double eps = g.tie_epsilon();
  while (!targets.empty()) {
    int i = targets.front();
    targets.pop_front();
    pending[i] = 0;
    if (dom[i].empty()) return false;
    double lo, hi;
    influence_bounds(g, dom, i, lo, hi);
    Action removed = 0;
    if (hi < -eps && dom[i].contains(+1)) removed = +1;
    else if (lo > eps && dom[i].contains(-1)) removed = -1;
    if (removed == 0) continue;
    if (trail) trail->emplace_back(i, dom[i].bits);
    dom[i].remove(removed);
    if (dom[i].empty()) return false;
    push(i);
    for (const auto& [t, w] : g.out_arcs(i)) push(t);
  }
  return true;
}

// Branch-node choice given the assigned set: max outdegree for the first
// pick, afterwards the largest |w| into the assigned set. Ties break to
// the lowest index. Kept as a free function so parallel prefix splitting
// replays the exact same rule.
int select_branch_node(const InfluenceGame& g, const std::vector<std::int8_t>& action, int num_assigned,
                       const std::vector<double>& sel_score) {
  int best = -1;
  if (num_assigned == 0) {
    std::size_t best_deg = 0;
    for (int i = 0; i < g.n(); ++i)
      if (best < 0 || g.out_arcs(i).size() > best_deg) {
        best = i;
        best_deg = g.out_arcs(i).size();
      }
    return best;
  }
  double best_score = -1.0;
  for (int i = 0; i < g.n(); ++i)
    if (action[i] == 0 && sel_score[i] > best_score) {
      best = i;
      best_score = sel_score[i];
    }
  return best;
}

struct Frame {
  int player = -1;
  std::size_t trail_mark = 0;
  std::vector<std::pair<int, double>> score_restore;
};

// One backtracking searcher over a (possibly seeded) subtree.
class Searcher {
 public:
  Searcher(const InfluenceGame& g, const SearchConfig& cfg, std::atomic<long long>* budget)
      : g_(g),
        cfg_(cfg),
        budget_(budget),
        eps_(g.tie_epsilon()),
        assigned_sum_(g.n(), 0.0),
        unassigned_abs_(g.n(), 0.0),
        action_(g.n(), 0),
        sel_score_(g.n(), 0.0),
        dom_(g.n(), ActionSet::both()) {
    for (int i = 0; i < g_.n(); ++i)
      for (const auto& [j, w] : g_.in_arcs(i)) unassigned_abs_[i] += std::abs(w);
  }

  // Applies a forced prefix; false if it is already inconsistent.
  bool seed(const PartialAssignment& partial) {
    for (const auto& [p, a] : partial.entries()) {
      g_.check_player(p);
      if (cfg_.use_propagation && !dom_[p].contains(a)) return false;
      if (!assign(p, a)) return false;
      if (cfg_.use_propagation && !propagate_after(p)) return false;
    }
    return true;
  }

  void run() {
    if (cfg_.use_propagation && !propagate_domains(g_, dom_, &trail_, {})) return;
    search();
  }

  const std::vector<std::int8_t>& action() const { return action_; }
  const std::vector<double>& sel_score() const { return sel_score_; }
  int num_assigned() const { return num_assigned_; }

  long long visited = 0;
  long long found = 0;
  bool truncated = false;
  std::vector<JointAction> results;

 private:
  bool out_of_budget() {
    if (!budget_) return false;
    if (budget_->fetch_sub(1, std::memory_order_relaxed) <= 0) {
      truncated = true;
      return true;
    }
    return false;
  }

  // gamma+/gamma- interval test for an assigned player
  bool gamma_ok(int j) const {
    double gp = assigned_sum_[j] + unassigned_abs_[j];
    double gm = assigned_sum_[j] - unassigned_abs_[j];
    double b = g_.threshold(j);
    if (gm > b + eps_ && action_[j] == -1) return false;
    if (gp < b - eps_ && action_[j] == +1) return false;
    return true;
  }

  bool assign(int k, Action a) {
    ++visited;
    frames_.push_back({k, trail_.size(), {}});
    Frame& fr = frames_.back();
    action_[k] = static_cast<std::int8_t>(a);
    ++num_assigned_;
    bool ok = true;
    for (const auto& [i, w] : g_.out_arcs(k)) {
      assigned_sum_[i] += a * w;
      unassigned_abs_[i] -= std::abs(w);
      if (action_[i] != 0 && !gamma_ok(i)) ok = false;
    }
    for (const auto& [j, w] : g_.in_arcs(k)) {
      if (action_[j] == 0 && std::abs(w) > sel_score_[j]) {
        fr.score_restore.emplace_back(j, sel_score_[j]);
        sel_score_[j] = std::abs(w);
      }
    }
    if (ok) ok = gamma_ok(k);
    if (ok && cfg_.use_propagation && dom_[k].bits != ActionSet::only(a).bits) {
      trail_.emplace_back(k, dom_[k].bits);
      dom_[k] = ActionSet::only(a);
    }
    return ok;
  }

  bool propagate_after(int k) { return propagate_domains(g_, dom_, &trail_, {k}); }

  void unassign() {
    Frame fr = std::move(frames_.back());
    frames_.pop_back();
    int k = fr.player;
    Action a = action_[k];
    for (const auto& [i, w] : g_.out_arcs(k)) {
      assigned_sum_[i] -= a * w;
      unassigned_abs_[i] += std::abs(w);
    }
    for (auto it = fr.score_restore.rbegin(); it != fr.score_restore.rend(); ++it)
      sel_score_[it->first] = it->second;
    while (trail_.size() > fr.trail_mark) {
      dom_[trail_.back().first].bits = trail_.back().second;
      trail_.pop_back();
    }
    action_[k] = 0;
    --num_assigned_;
  }

  void record_leaf() {
    ++found;
    if (!cfg_.count_only) {
      JointAction x(g_.n());
      for (int i = 0; i < g_.n(); ++i) x[i] = action_[i];
      assert(g_.is_psne(x));
      results.push_back(std::move(x));
    }
  }

  void branch_order(int j, Action order[2]) const {
    // forced sign first; the opposite branch then dies on its own gamma test
    double lo = assigned_sum_[j] - unassigned_abs_[j] - g_.threshold(j);
    if (lo > eps_) {
      order[0] = +1;
      order[1] = -1;
    } else {
      order[0] = -1;
      order[1] = +1;
    }
  }

  void search() {
    if (truncated) return;
    if (num_assigned_ == g_.n()) {
      record_leaf();
      return;
    }
    int j = select_branch_node(g_, action_, num_assigned_, sel_score_);
    Action order[2];
    branch_order(j, order);
    for (Action a : {order[0], order[1]}) {
      if (cfg_.use_propagation && !dom_[j].contains(a)) continue;
      if (out_of_budget()) return;
      bool ok = assign(j, a);
      if (ok && cfg_.use_propagation) ok = propagate_after(j);
      if (ok) search();
      unassign();
      if (truncated) return;
    }
  }

  const InfluenceGame& g_;
  const SearchConfig cfg_;
  std::atomic<long long>* budget_;
  double eps_;
  std::vector<double> assigned_sum_, unassigned_abs_;
  std::vector<std::int8_t> action_;
  std::vector<double> sel_score_;
  std::vector<ActionSet> dom_;
  std::vector<std::pair<int, std::uint8_t>> trail_;
  std::vector<Frame> frames_;
  int num_assigned_ = 0;
};

// Splits the top levels of the search tree into seed prefixes for workers,
// replaying the searcher's own selection rule so subtrees are disjoint and
// exhaustive.
std::vector<PartialAssignment> split_prefixes(const InfluenceGame& g, const PartialAssignment& base,
                                              int target) {
  std::vector<PartialAssignment> level{base};
  while (static_cast<int>(level.size()) < target) {
    std::vector<PartialAssignment> next;
    bool grew = false;
    for (const auto& pa : level) {
      if (pa.size() >= g.n()) {
        next.push_back(pa);
        continue;
      }
      std::vector<std::int8_t> action(g.n(), 0);
      std::vector<double> score(g.n(), 0.0);
      for (const auto& [p, a] : pa.entries()) action[p] = a;
      for (int i = 0; i < g.n(); ++i) {
        if (action[i] != 0) continue;
        for (const auto& [t, w] : g.out_arcs(i))
          if (action[t] != 0) score[i] = std::max(score[i], std::abs(w));
      }
      int pick = select_branch_node(g, action, pa.size(), score);
      for (Action a : {-1, +1}) {
        PartialAssignment ext = pa;
        ext.assign(pick, a);
        next.push_back(std::move(ext));
      }
      grew = true;
    }
    level = std::move(next);
    if (!grew) break;
  }
  return level;
}

}  // namespace

EnumerationResult enumerate_psne_extensions(const InfluenceGame& game, const PartialAssignment& partial,
                                            const SearchConfig& cfg) {
  cfg.validate();
  auto t0 = std::chrono::steady_clock::now();
  EnumerationResult res;

  std::atomic<long long> budget{cfg.max_nodes ? *cfg.max_nodes : 0};
  std::atomic<long long>* budget_ptr = cfg.max_nodes ? &budget : nullptr;

  int workers = 1;
  if (cfg.parallel) {
    workers = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
  }

  if (workers == 1) {
    Searcher s(game, cfg, budget_ptr);
    if (s.seed(partial)) s.run();
    res.stats.nodes_visited = s.visited;
    res.count = s.found;
    res.complete = !s.truncated;
    res.psne = std::move(s.results);
  } else {
    auto prefixes = split_prefixes(game, partial, 2 * workers);
    std::vector<std::future<Searcher>> futs;
    futs.reserve(prefixes.size());
    for (const auto& pre : prefixes)
      futs.push_back(std::async(std::launch::async, [&game, &cfg, budget_ptr, pre]() {
        Searcher s(game, cfg, budget_ptr);
        if (s.seed(pre)) s.run();
        return s;
      }));
    res.complete = true;
    for (auto& f : futs) {
      Searcher s = f.get();
      res.stats.nodes_visited += s.visited;
      res.count += s.found;
      res.complete = res.complete && !s.truncated;
      res.psne.insert(res.psne.end(), std::make_move_iterator(s.results.begin()),
                      std::make_move_iterator(s.results.end()));
    }
  }

  std::sort(res.psne.begin(), res.psne.end());
  if (!cfg.count_only) res.count = static_cast<long long>(res.psne.size());
  res.stats.psne_found = res.count;
  res.stats.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return res;
}

EnumerationResult enumerate_psne(const InfluenceGame& game, const SearchConfig& cfg) {
  return enumerate_psne_extensions(game, PartialAssignment{}, cfg);
}

long long count_psne_extensions(const InfluenceGame& game, const PartialAssignment& partial,
                                const SearchConfig& cfg) {
  SearchConfig c = cfg;
  c.count_only = true;
  EnumerationResult res = enumerate_psne_extensions(game, partial, c);
  if (!res.complete) throw BudgetExhausted("search budget exhausted while counting extensions");
  return res.count;
}

DomainVector propagate(const InfluenceGame& game, const DomainVector& domains) {
  if (static_cast<int>(domains.domains.size()) != game.n())
    throw InvalidInput("domain vector length must equal n");
  if (domains.contradiction) return domains;
  DomainVector out = domains;
  for (const ActionSet& d : out.domains)
    if (d.empty()) throw InvalidInput("non-contradiction domains must be nonempty");
  if (!propagate_domains(game, out.domains, nullptr, {})) out.contradiction = true;
  return out;
}

}  // namespace lig
