// Command-line front end: file-based, reproducible workflows over the
// influence-game library. Every invocation writes a manifest next to its
// primary output. Exit codes: 0 ok, 2 infeasible, 3 budget exhausted,
// 4 bad input.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "lig/fixtures.hpp"
#include "lig/game_io.hpp"
#include "lig/genlearn.hpp"
#include "lig/influence.hpp"
#include "lig/reductions.hpp"
#include "lig/scenarios.hpp"
#include "lig/solvers.hpp"
#include "lig/transforms.hpp"

using nlohmann::json;
using namespace lig;

namespace {

std::uint64_t fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

// One manifest per invocation: the command, its full configuration, and a
// content hash per artifact. Re-running the same configuration must
// reproduce every artifact byte for byte.
struct Manifest {
  json config = json::object();
  std::vector<std::pair<std::string, std::string>> artifacts;
  std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();

  void emit(const std::string& path, const std::string& content) {
    write_file(path, content);
    artifacts.emplace_back(path, hex64(fnv1a(content)));
  }

  void write(const std::string& command, const std::string& anchor_path) {
    json files = json::object();
    for (const auto& [p, h] : artifacts) files[p] = h;
    json m{{"command", command},
           {"config", config},
           {"artifacts", files},
           {"wall_time_ms",
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count()}};
    write_file(anchor_path + ".manifest.json", m.dump(2) + "\n");
  }
};

json stats_json(const SearchStats& stats) {
  return json{{"nodes_visited", stats.nodes_visited},
              {"psne_found", stats.psne_found},
              {"wall_time_ms", stats.wall_time_ms}};
}

std::string psne_lines(const std::vector<JointAction>& psne) {
  std::string out;
  for (const JointAction& x : psne) {
    out += to_csv_line(x);
    out += '\n';
  }
  return out;
}

std::vector<JointAction> psne_from_lines(const std::string& text, int n) {
  std::vector<JointAction> out;
  std::string line;
  std::istringstream in(text);
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream ls(line);
    std::string cell;
    std::vector<int> acts;
    while (std::getline(ls, cell, ',')) acts.push_back(std::stoi(cell));
    if (static_cast<int>(acts.size()) != n) throw InvalidInput("equilibrium line length mismatch");
    out.push_back(joint_action(acts));
  }
  return out;
}

double mean(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

double ci95(const std::vector<double>& v) {
  if (v.size() < 2) return 0.0;
  double m = mean(v), ss = 0;
  for (double x : v) ss += (x - m) * (x - m);
  double sd = std::sqrt(ss / static_cast<double>(v.size() - 1));
  return 1.96 * sd / std::sqrt(static_cast<double>(v.size()));
}

struct SolveOptions {
  std::string method = "auto";
  bool count_only = false;
  std::optional<long long> budget;
  int threads = 1;
  int anytime_drop = 0;
};

bool is_forest(const InfluenceGame& g) {
  std::vector<int> parent(g.n());
  for (int i = 0; i < g.n(); ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::set<std::pair<int, int>> seen;
  for (const Arc& a : g.arcs()) {
    int lo = std::min(a.from, a.to), hi = std::max(a.from, a.to);
    if (!seen.insert({lo, hi}).second) continue;
    int ra = find(lo), rb = find(hi);
    if (ra == rb) return false;
    parent[ra] = rb;
  }
  return true;
}

bool all_nonnegative(const InfluenceGame& g) {
  for (const Arc& a : g.arcs())
    if (a.weight < 0) return false;
  return true;
}

int cmd_generate(const std::string& family, int n, int m, double p, double flip_p, std::uint64_t seed,
                 const std::string& out) {
  Manifest manifest;
  manifest.config = {{"family", family}, {"n", n},           {"m", m},
                     {"p", p},           {"flip_p", flip_p}, {"seed", seed}};
  InfluenceGame g = [&] {
    if (family == "erdos-renyi") return gen_erdos_renyi(n, p, seed);
    if (family == "uniform") return gen_uniform_random(n, p, flip_p, seed);
    if (family == "pref-attach") return gen_pref_attach(n, m, flip_p, seed);
    if (family == "supreme-court") return fixtures::supreme_court();
    throw InvalidInput("unknown family: " + family);
  }();
  manifest.emit(out, game_to_json(g));
  manifest.write("generate", out);
  return 0;
}

int cmd_solve(const std::string& game_path, const SolveOptions& opt, const std::string& out) {
  InfluenceGame g = load_game(game_path);
  Manifest manifest;
  manifest.config = {{"game", game_path},
                     {"method", opt.method},
                     {"count_only", opt.count_only},
                     {"budget", opt.budget ? json(*opt.budget) : json()},
                     {"threads", opt.threads},
                     {"anytime_drop", opt.anytime_drop}};

  std::string method = opt.method;
  if (method == "auto") {
    if (is_forest(g)) method = "tree";
    else if (all_nonnegative(g)) method = "supermodular";
    else method = "backtrack";
  }

  SearchConfig cfg;
  cfg.max_nodes = opt.budget;
  cfg.count_only = opt.count_only;
  cfg.threads = opt.threads;
  cfg.parallel = opt.threads != 1;

  std::vector<JointAction> psne;
  SearchStats stats;
  bool complete = true;
  if (method == "backtrack") {
    auto res = enumerate_psne(g, cfg);
    psne = std::move(res.psne);
    stats = res.stats;
    complete = res.complete;
    stats.psne_found = res.count;
  } else if (method == "dnc") {
    auto res = solve_divide_conquer(g, cfg, opt.anytime_drop);
    psne = std::move(res.psne);
    stats = res.stats;
    complete = res.complete;
  } else if (method == "tree") {
    if (!is_forest(g)) throw InvalidInput("tree method needs a forest-structured game");
    auto got = solve_tree(g);
    if (got) psne.push_back(*got);
    stats.psne_found = static_cast<long long>(psne.size());
  } else if (method == "supermodular") {
    if (!all_nonnegative(g)) throw InvalidInput("supermodular method needs nonnegative weights");
    auto lo = solve_supermodular(g, SupermodularStart::AllMinusOne);
    auto hi = solve_supermodular(g, SupermodularStart::AllPlusOne);
    psne.push_back(lo.fixed_point);
    if (hi.fixed_point != lo.fixed_point) psne.push_back(hi.fixed_point);
    std::sort(psne.begin(), psne.end());
    stats.psne_found = static_cast<long long>(psne.size());
  } else {
    throw InvalidInput("unknown method: " + method);
  }

  json stats_out = stats_json(stats);
  stats_out["method"] = method;
  stats_out["complete"] = complete;
  if (opt.count_only) {
    json count{{"count", stats.psne_found}, {"stats", stats_out}};
    manifest.emit(out, count.dump(2) + "\n");
  } else {
    manifest.emit(out, psne_lines(psne));
    manifest.emit(out + ".stats.json", stats_out.dump(2) + "\n");
  }
  manifest.write("solve", out);
  if (!complete) {
    std::cerr << "search budget exhausted: results are partial\n";
    return 3;
  }
  return 0;
}

GoalSpec parse_goal(const std::string& goal, int n) {
  if (goal == "max-adopters") return GoalSpec::max_adopters();
  if (goal.rfind("target=", 0) == 0) {
    auto rows = psne_from_lines(read_file(goal.substr(7)), n);
    if (rows.size() != 1) throw InvalidInput("target file must hold exactly one joint action line");
    return GoalSpec::target_psne(rows[0]);
  }
  if (goal.rfind("weighted=", 0) == 0) {
    json j = json::parse(read_file(goal.substr(9)));
    return GoalSpec::weighted_adopters(j.get<std::vector<double>>());
  }
  throw InvalidInput("bad --goal: " + goal);
}

SetPreference parse_pref(const std::string& pref) {
  if (pref == "min-card") return SetPreference::min_cardinality();
  if (pref.rfind("weighted=", 0) == 0) {
    json j = json::parse(read_file(pref.substr(9)));
    return SetPreference::weighted_nodes(j.get<std::vector<double>>());
  }
  throw InvalidInput("bad --pref: " + pref);
}

int cmd_influential(const std::string& game_path, const std::string& goal_arg,
                    const std::string& pref_arg, bool exact, bool explore_ties, bool live_counts,
                    const std::string& psne_path, const std::string& out) {
  InfluenceGame g = load_game(game_path);
  Manifest manifest;
  manifest.config = {{"game", game_path}, {"goal", goal_arg},            {"pref", pref_arg},
                     {"exact", exact},    {"explore_ties", explore_ties}, {"psne", psne_path},
                     {"live_counts", live_counts}};

  std::vector<JointAction> psne;
  if (!psne_path.empty()) psne = psne_from_lines(read_file(psne_path), g.n());
  else psne = enumerate_psne(g).psne;
  if (psne.empty()) throw Infeasible("the game has no PSNE");

  GoalSpec goal = parse_goal(goal_arg, g.n());
  SetPreference pref = parse_pref(pref_arg);

  MostInfluentialResult res =
      exact ? exact_most_influential(g, psne, goal, pref)
            : greedy_most_influential(
                  g, psne, goal, pref,
                  live_counts ? CountBackend::LiveExtensions : CountBackend::Hypergraph);
  manifest.emit(out, most_influential_to_json(res));
  if (explore_ties) manifest.emit(out + ".dag.json", option_dag_to_json(greedy_option_dag(g, psne, goal)));
  manifest.write("influential", out);
  return 0;
}

int cmd_scenario(const std::string& game_path, const std::string& mode, int quota,
                 const std::string& party_path, bool exact, int k_max, const std::string& psne_path,
                 const std::string& out) {
  InfluenceGame g = load_game(game_path);
  Manifest manifest;
  manifest.config = {{"game", game_path},   {"mode", mode},   {"quota", quota},
                     {"party", party_path}, {"exact", exact}, {"k_max", k_max}};

  ClotureSpec spec{quota, std::nullopt};
  if (!party_path.empty()) spec.party = json::parse(read_file(party_path)).get<std::vector<int>>();
  spec.validate(g.n());

  std::vector<JointAction> psne;
  if (!psne_path.empty()) psne = psne_from_lines(read_file(psne_path), g.n());
  else psne = enumerate_psne(g).psne;
  auto cloture = stable_cloture_set(psne, spec);

  if (mode == "break" || mode == "prevent") {
    CoalitionResult res = mode == "break" ? filibuster_breakers(g, psne, cloture, exact)
                                          : cloture_preventers(g, psne, cloture, exact);
    manifest.emit(out, coalition_to_json(res, cloture.size()));
  } else if (mode == "diffusion") {
    auto hits = diffusion_filibuster(g, spec, k_max);
    json rows = json::array();
    for (const auto& h : hits)
      rows.push_back(json{{"subset", h.subset},
                          {"stable", h.outcome.stable},
                          {"rounds", h.outcome.rounds},
                          {"state", to_csv_line(h.outcome.state)}});
    json report{{"stable_cloture_count", cloture.size()}, {"hits", rows}};
    manifest.emit(out, report.dump(2) + "\n");
  } else {
    throw InvalidInput("bad --mode: " + mode);
  }
  manifest.write("scenario", out);
  return 0;
}

int cmd_learn(const std::string& votes_path, double lambda, const std::string& out) {
  VoteMatrix votes = votes_from_csv(read_file(votes_path));
  Manifest manifest;
  manifest.config = {{"votes", votes_path}, {"lambda", lambda}};
  LearnConfig cfg;
  cfg.l2_lambda = lambda;
  LearnResult res = learn_lig(votes, cfg);
  manifest.emit(out, game_to_json(res.game));
  json report{{"converged", res.converged},
              {"grad_norms", res.grad_norms},
              {"iterations", res.iterations},
              {"representation_rate", psne_representation_rate(res.game, votes)}};
  manifest.emit(out + ".report.json", report.dump(2) + "\n");
  manifest.write("learn", out);
  if (!res.converged) std::cerr << "warning: some per-player fits did not converge\n";
  return 0;
}

int cmd_bench(const std::string& suite, int n, int trials, std::uint64_t seed, const std::string& out) {
  Manifest manifest;
  manifest.config = {{"suite", suite}, {"n", n}, {"trials", trials}, {"seed", seed}};
  std::string csv;

  if (suite == "uniform") {
    csv = "p,trials,avg_psne,ci95_psne,avg_visits_per_eq,ci95_visits_per_eq,avg_time_ms\n";
    for (double p : {0.0, 0.125, 0.25, 0.375, 0.5, 0.625, 0.75, 0.875, 1.0}) {
      std::vector<double> counts, visits_per_eq, times;
      for (int t = 0; t < trials; ++t) {
        InfluenceGame g = gen_uniform_random(n, 0.5, p, seed + static_cast<std::uint64_t>(t));
        auto res = enumerate_psne(g);
        if (res.count == 0) continue;  // games without equilibria are not averaged
        counts.push_back(static_cast<double>(res.count));
        visits_per_eq.push_back(static_cast<double>(res.stats.nodes_visited) /
                                static_cast<double>(res.count));
        times.push_back(res.stats.wall_time_ms);
      }
      char line[256];
      std::snprintf(line, sizeof line, "%g,%zu,%.4f,%.4f,%.2f,%.2f,%.3f\n", p, counts.size(),
                    mean(counts), ci95(counts), mean(visits_per_eq), ci95(visits_per_eq), mean(times));
      csv += line;
    }
  } else if (suite == "greedy-vs-exact") {
    csv = "p,trials,avg_greedy,ci95_greedy,avg_exact,ci95_exact,pct_equal,pct_within1,pct_within2\n";
    for (double p : {0.0, 0.5, 1.0}) {
      std::vector<double> gs, es;
      int eq = 0, w1 = 0, w2 = 0, used = 0;
      for (int t = 0; t < trials; ++t) {
        InfluenceGame g = gen_uniform_random(n, 0.5, p, seed + static_cast<std::uint64_t>(t));
        auto psne = enumerate_psne(g).psne;
        if (psne.empty()) continue;
        ++used;
        auto greedy =
            greedy_most_influential(g, psne, GoalSpec::max_adopters(), SetPreference::min_cardinality());
        auto exact =
            exact_most_influential(g, psne, GoalSpec::max_adopters(), SetPreference::min_cardinality(),
                                   static_cast<int>(greedy.selected.size()), 64);
        gs.push_back(static_cast<double>(greedy.selected.size()));
        es.push_back(static_cast<double>(exact.selected.size()));
        eq += greedy.selected.size() == exact.selected.size();
        w1 += greedy.selected.size() <= exact.selected.size() + 1;
        w2 += greedy.selected.size() <= exact.selected.size() + 2;
      }
      char line[256];
      std::snprintf(line, sizeof line, "%g,%d,%.4f,%.4f,%.4f,%.4f,%.1f,%.1f,%.1f\n", p, used, mean(gs),
                    ci95(gs), mean(es), ci95(es), 100.0 * eq / std::max(1, used),
                    100.0 * w1 / std::max(1, used), 100.0 * w2 / std::max(1, used));
      csv += line;
    }
  } else if (suite == "pref-attach") {
    csv = "n,trials,avg_psne,ci95_psne,avg_time_ms\n";
    for (int size : {n, n + 5, n + 10, n + 15}) {
      std::vector<double> counts, times;
      for (int t = 0; t < trials; ++t) {
        InfluenceGame g = gen_pref_attach(size, 3, 1.0, seed + static_cast<std::uint64_t>(t));
        auto res = enumerate_psne(g);
        counts.push_back(static_cast<double>(res.count));
        times.push_back(res.stats.wall_time_ms);
      }
      char line[256];
      std::snprintf(line, sizeof line, "%d,%d,%.4f,%.4f,%.3f\n", size, trials, mean(counts), ci95(counts),
                    mean(times));
      csv += line;
    }
  } else {
    throw InvalidInput("unknown bench suite: " + suite);
  }
  manifest.emit(out, csv);
  manifest.write("bench", out);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"linear influence games: equilibria, influence, and coalition analysis"};
  app.require_subcommand(1);

  std::string family = "uniform", gen_out;
  int gen_n = 25, gen_m = 3;
  double gen_p = 0.5, gen_flip = 0.5;
  std::uint64_t gen_seed = 1;
  auto* gen = app.add_subcommand("generate", "write a synthetic or fixture game");
  gen->add_option("--family", family, "erdos-renyi | uniform | pref-attach | supreme-court");
  gen->add_option("--n", gen_n, "player count");
  gen->add_option("--m", gen_m, "attachments per node (pref-attach)");
  gen->add_option("--p", gen_p, "edge/arc probability");
  gen->add_option("--flip-p", gen_flip, "probability of a -1 weight");
  gen->add_option("--seed", gen_seed, "rng seed");
  gen->add_option("--out", gen_out, "output game JSON")->required();

  std::string solve_game, solve_out;
  SolveOptions solve_opt;
  long long budget_flag = -1;
  auto* solve = app.add_subcommand("solve", "enumerate or count PSNE");
  solve->add_option("--game", solve_game, "game JSON")->required();
  solve->add_option("--method", solve_opt.method, "auto | backtrack | tree | supermodular | dnc");
  solve->add_flag("--count-only", solve_opt.count_only, "emit a count instead of equilibria");
  solve->add_option("--budget", budget_flag, "search-tree node budget");
  solve->add_option("--threads", solve_opt.threads, "worker cap (0 = all, 1 = sequential)");
  solve->add_option("--anytime-drop", solve_opt.anytime_drop, "separator edges to ignore (dnc)");
  solve->add_option("--out", solve_out, "output file")->required();

  std::string infl_game, infl_goal = "max-adopters", infl_pref = "min-card", infl_psne, infl_out;
  bool infl_exact = false, infl_ties = false, infl_live = false;
  auto* infl = app.add_subcommand("influential", "most influential node selection");
  infl->add_option("--game", infl_game, "game JSON")->required();
  infl->add_option("--goal", infl_goal, "target=<file> | max-adopters | weighted=<file>");
  infl->add_option("--pref", infl_pref, "min-card | weighted=<file>");
  infl->add_flag("--exact", infl_exact, "exhaustive subset sweep instead of the greedy");
  infl->add_flag("--explore-ties", infl_ties, "emit the tied-alternatives dag");
  infl->add_flag("--live-counts", infl_live, "count extensions on the fly instead of materializing");
  infl->add_option("--psne", infl_psne, "precomputed equilibrium file (one CSV line each)");
  infl->add_option("--out", infl_out, "result JSON")->required();

  std::string scen_game, scen_mode = "break", scen_party, scen_psne, scen_out;
  int scen_quota = 60, scen_kmax = 2;
  bool scen_exact = false;
  auto* scen = app.add_subcommand("scenario", "filibuster/cloture coalition analysis");
  scen->add_option("--game", scen_game, "game JSON")->required();
  scen->add_option("--mode", scen_mode, "break | prevent | diffusion");
  scen->add_option("--quota", scen_quota, "votes needed for cloture");
  scen->add_option("--party", scen_party, "JSON list of party member indices");
  scen->add_flag("--exact", scen_exact, "exhaustive coalition sweep");
  scen->add_option("--k-max", scen_kmax, "max forced-set size (diffusion)");
  scen->add_option("--psne", scen_psne, "precomputed equilibrium file");
  scen->add_option("--out", scen_out, "report JSON")->required();

  std::string learn_votes, learn_out;
  double learn_lambda = 0.1;
  auto* learn = app.add_subcommand("learn", "fit a game from a vote matrix CSV");
  learn->add_option("--votes", learn_votes, "votes CSV")->required();
  learn->add_option("--lambda", learn_lambda, "L2 strength");
  learn->add_option("--out", learn_out, "output game JSON")->required();

  std::string bench_suite = "uniform", bench_out;
  int bench_n = 25, bench_trials = 100;
  std::uint64_t bench_seed = 1;
  auto* bench = app.add_subcommand("bench", "batch sweeps with confidence intervals");
  bench->add_option("--suite", bench_suite, "uniform | greedy-vs-exact | pref-attach");
  bench->add_option("--n", bench_n, "player count");
  bench->add_option("--trials", bench_trials, "games per setting");
  bench->add_option("--seed", bench_seed, "rng seed");
  bench->add_option("--out", bench_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 4;
  }

  try {
    if (gen->parsed()) return cmd_generate(family, gen_n, gen_m, gen_p, gen_flip, gen_seed, gen_out);
    if (solve->parsed()) {
      if (budget_flag >= 0) solve_opt.budget = budget_flag;
      return cmd_solve(solve_game, solve_opt, solve_out);
    }
    if (infl->parsed())
      return cmd_influential(infl_game, infl_goal, infl_pref, infl_exact, infl_ties, infl_live,
                             infl_psne, infl_out);
    if (scen->parsed())
      return cmd_scenario(scen_game, scen_mode, scen_quota, scen_party, scen_exact, scen_kmax,
                          scen_psne, scen_out);
    if (learn->parsed()) return cmd_learn(learn_votes, learn_lambda, learn_out);
    if (bench->parsed()) return cmd_bench(bench_suite, bench_n, bench_trials, bench_seed, bench_out);
  } catch (const Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const BudgetExhausted& e) {
    std::cerr << "budget exhausted: " << e.what() << "\n";
    return 3;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 4;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
