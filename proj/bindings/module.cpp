// Python bindings for the main library operations. Joint actions cross the
// boundary as plain lists of -1/+1 ints; partial assignments as
// {player: action} dicts.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "lig/fixtures.hpp"
#include "lig/game_io.hpp"
#include "lig/genlearn.hpp"
#include "lig/influence.hpp"
#include "lig/reductions.hpp"
#include "lig/scenarios.hpp"
#include "lig/solvers.hpp"
#include "lig/transforms.hpp"

namespace py = pybind11;
using namespace lig;

namespace {

JointAction to_action(const std::vector<int>& x) { return joint_action(x); }

std::vector<int> from_action(const JointAction& x) { return {x.begin(), x.end()}; }

std::vector<std::vector<int>> from_actions(const std::vector<JointAction>& xs) {
  std::vector<std::vector<int>> out;
  out.reserve(xs.size());
  for (const JointAction& x : xs) out.push_back(from_action(x));
  return out;
}

std::vector<JointAction> to_actions(const std::vector<std::vector<int>>& xs) {
  std::vector<JointAction> out;
  out.reserve(xs.size());
  for (const auto& x : xs) out.push_back(to_action(x));
  return out;
}

PartialAssignment to_partial(const std::map<int, int>& entries) {
  PartialAssignment pa;
  for (const auto& [p, a] : entries) pa.assign(p, a);
  return pa;
}

SearchConfig make_config(std::optional<long long> budget, bool parallel, int threads,
                         bool use_propagation) {
  SearchConfig cfg;
  cfg.max_nodes = budget;
  cfg.parallel = parallel;
  cfg.threads = threads;
  cfg.use_propagation = use_propagation;
  return cfg;
}

GoalSpec make_goal(const py::object& goal) {
  if (py::isinstance<py::str>(goal)) {
    std::string name = goal.cast<std::string>();
    if (name == "max-adopters") return GoalSpec::max_adopters();
    throw InvalidInput("unknown goal: " + name);
  }
  auto pair = goal.cast<std::pair<std::string, py::object>>();
  if (pair.first == "target") return GoalSpec::target_psne(to_action(pair.second.cast<std::vector<int>>()));
  if (pair.first == "weighted")
    return GoalSpec::weighted_adopters(pair.second.cast<std::vector<double>>());
  throw InvalidInput("unknown goal kind: " + pair.first);
}

SetPreference make_pref(const py::object& pref) {
  if (py::isinstance<py::str>(pref)) {
    std::string name = pref.cast<std::string>();
    if (name == "min-card") return SetPreference::min_cardinality();
    throw InvalidInput("unknown preference: " + name);
  }
  auto pair = pref.cast<std::pair<std::string, std::vector<double>>>();
  if (pair.first == "weighted") return SetPreference::weighted_nodes(pair.second);
  throw InvalidInput("unknown preference kind: " + pair.first);
}

py::dict stats_dict(const SearchStats& s) {
  py::dict d;
  d["nodes_visited"] = s.nodes_visited;
  d["psne_found"] = s.psne_found;
  d["wall_time_ms"] = s.wall_time_ms;
  return d;
}

}  // namespace

PYBIND11_MODULE(_liginf, m) {
  m.doc() = "linear influence games: equilibria, most-influential sets, coalition analysis";

  py::register_exception<Infeasible>(m, "Infeasible");
  py::register_exception<BudgetExhausted>(m, "BudgetExhausted");
  py::register_exception<InvalidInput>(m, "InvalidInputError", PyExc_ValueError);

  py::class_<InfluenceGame>(m, "InfluenceGame")
      .def(py::init([](int n, const std::vector<std::tuple<int, int, double>>& arcs,
                       const std::vector<double>& thresholds, const std::vector<std::string>& labels,
                       double tie_epsilon) {
             std::vector<Arc> as;
             as.reserve(arcs.size());
             for (const auto& [j, i, w] : arcs) as.push_back({j, i, w});
             return InfluenceGame(n, as, thresholds, labels, tie_epsilon);
           }),
           py::arg("n"), py::arg("arcs"), py::arg("thresholds"),
           py::arg("labels") = std::vector<std::string>{}, py::arg("tie_epsilon") = 0.0)
      .def_property_readonly("n", &InfluenceGame::n)
      .def_property_readonly("labels", &InfluenceGame::labels)
      .def_property_readonly("thresholds", &InfluenceGame::thresholds)
      .def_property_readonly("tie_epsilon", &InfluenceGame::tie_epsilon)
      .def("weight", &InfluenceGame::weight, py::arg("source"), py::arg("target"))
      .def("arcs",
           [](const InfluenceGame& g) {
             std::vector<std::tuple<int, int, double>> out;
             for (const Arc& a : g.arcs()) out.emplace_back(a.from, a.to, a.weight);
             return out;
           })
      .def("influence",
           [](const InfluenceGame& g, int i, const std::vector<int>& x) {
             return g.influence(i, to_action(x));
           })
      .def("payoff",
           [](const InfluenceGame& g, int i, const std::vector<int>& x) {
             return g.payoff(i, to_action(x));
           })
      .def("best_responses",
           [](const InfluenceGame& g, int i, const std::vector<int>& x) {
             ActionSet s = g.best_responses(i, to_action(x));
             std::vector<int> out;
             if (s.contains(-1)) out.push_back(-1);
             if (s.contains(+1)) out.push_back(+1);
             return out;
           })
      .def("is_psne",
           [](const InfluenceGame& g, const std::vector<int>& x) { return g.is_psne(to_action(x)); })
      .def("to_json", [](const InfluenceGame& g) { return game_to_json(g); })
      .def_static("from_json", [](const std::string& text) { return game_from_json(text); })
      .def("save", [](const InfluenceGame& g, const std::string& path) { save_game(g, path); })
      .def_static("load", [](const std::string& path) { return load_game(path); })
      .def("__repr__", [](const InfluenceGame& g) {
        return "InfluenceGame(n=" + std::to_string(g.n()) + ", arcs=" + std::to_string(g.num_arcs()) +
               ")";
      });

  m.def(
      "brute_force_psne",
      [](const InfluenceGame& g, int cap) { return from_actions(brute_force_psne(g, cap)); },
      py::arg("game"), py::arg("cap") = kBruteForceCap);
  m.def(
      "brute_force_extension_count",
      [](const InfluenceGame& g, const std::map<int, int>& partial, int cap) {
        return brute_force_extension_count(g, to_partial(partial), cap);
      },
      py::arg("game"), py::arg("partial"), py::arg("cap") = kBruteForceCap);

  m.def(
      "enumerate_psne",
      [](const InfluenceGame& g, std::optional<long long> budget, bool parallel, int threads,
         bool use_propagation) {
        auto res = enumerate_psne(g, make_config(budget, parallel, threads, use_propagation));
        return py::make_tuple(from_actions(res.psne), stats_dict(res.stats), res.complete);
      },
      py::arg("game"), py::arg("budget") = std::nullopt, py::arg("parallel") = false,
      py::arg("threads") = 0, py::arg("use_propagation") = true);
  m.def(
      "count_psne_extensions",
      [](const InfluenceGame& g, const std::map<int, int>& partial, std::optional<long long> budget) {
        return count_psne_extensions(g, to_partial(partial), make_config(budget, false, 1, true));
      },
      py::arg("game"), py::arg("partial"), py::arg("budget") = std::nullopt);
  m.def(
      "solve_tree",
      [](const InfluenceGame& g) -> std::optional<std::vector<int>> {
        auto got = solve_tree(g);
        if (!got) return std::nullopt;
        return from_action(*got);
      },
      py::arg("game"));
  m.def(
      "solve_supermodular",
      [](const InfluenceGame& g, const std::string& start) {
        auto res = solve_supermodular(g, start == "plus" ? SupermodularStart::AllPlusOne
                                                         : SupermodularStart::AllMinusOne);
        return py::make_tuple(from_action(res.fixed_point), res.rounds);
      },
      py::arg("game"), py::arg("start"));
  m.def(
      "find_vertex_separator",
      [](const InfluenceGame& g) {
        Separator s = find_vertex_separator(g);
        return py::make_tuple(s.vertex_set, s.components);
      },
      py::arg("game"));
  m.def(
      "solve_divide_conquer",
      [](const InfluenceGame& g, int anytime_drop) {
        auto res = solve_divide_conquer(g, {}, anytime_drop);
        return py::make_tuple(from_actions(res.psne), res.exact);
      },
      py::arg("game"), py::arg("anytime_drop") = 0);
  m.def(
      "propagate",
      [](const InfluenceGame& g, const std::map<int, int>& fixed) {
        DomainVector dom = DomainVector::full(g.n());
        for (const auto& [p, a] : fixed) dom.domains.at(p) = ActionSet::only(a);
        DomainVector out = propagate(g, dom);
        if (out.contradiction) return py::make_tuple(py::none(), false);
        std::vector<std::vector<int>> doms;
        for (const ActionSet& d : out.domains) {
          std::vector<int> acts;
          if (d.contains(-1)) acts.push_back(-1);
          if (d.contains(+1)) acts.push_back(+1);
          doms.push_back(acts);
        }
        return py::make_tuple(py::cast(doms), true);
      },
      py::arg("game"), py::arg("fixed"));

  m.def("lig_to_polymatrix_json",
        [](const InfluenceGame& g) { return polymatrix_to_json(lig_to_polymatrix(g)); });
  m.def("polymatrix_json_to_lig",
        [](const std::string& text) { return polymatrix_to_lig(polymatrix_from_json(text)); });
  m.def(
      "detect_potential",
      [](const InfluenceGame& g) {
        PotentialKind kind = detect_potential(g);
        const char* name = kind.variant == PotentialVariant::SymmetricExact ? "symmetric-exact"
                           : kind.variant == PotentialVariant::IndiscriminateOrdinal
                               ? "indiscriminate-ordinal"
                               : "none";
        return py::make_tuple(name, kind.rho, kind.delta);
      },
      py::arg("game"));
  m.def(
      "potential_value",
      [](const InfluenceGame& g, const std::vector<int>& x) {
        return potential_value(g, detect_potential(g), to_action(x));
      },
      py::arg("game"), py::arg("x"));

  m.def(
      "gadget_3sat_game",
      [](int num_vars, const std::vector<std::vector<int>>& clauses, double epsilon) {
        CnfFormula f;
        f.num_vars = num_vars;
        for (const auto& cl : clauses) {
          if (cl.size() != 3) throw InvalidInput("every clause needs exactly 3 literals");
          std::array<Literal, 3> lits;
          for (int i = 0; i < 3; ++i) {
            if (cl[i] == 0) throw InvalidInput("literals are nonzero 1-based ints");
            lits[i] = {std::abs(cl[i]) - 1, cl[i] < 0};
          }
          f.clauses.push_back(lits);
        }
        return zero_one_to_pm1(gadget_3sat(f, epsilon));
      },
      py::arg("num_vars"), py::arg("clauses"), py::arg("epsilon") = 0.5);
  m.def(
      "gadget_knapsack_star_game",
      [](const std::vector<long long>& weights, long long capacity) {
        return zero_one_to_pm1(gadget_knapsack_star({weights, capacity}));
      },
      py::arg("weights"), py::arg("capacity"));

  m.def(
      "greedy_most_influential",
      [](const InfluenceGame& g, const std::vector<std::vector<int>>& psne, const py::object& goal,
         const py::object& pref, bool live_counts) {
        auto res = greedy_most_influential(g, to_actions(psne), make_goal(goal), make_pref(pref),
                                           live_counts ? CountBackend::LiveExtensions
                                                       : CountBackend::Hypergraph);
        return py::make_tuple(res.selected, std::vector<int>(res.actions.begin(), res.actions.end()),
                              from_action(res.goal));
      },
      py::arg("game"), py::arg("psne"), py::arg("goal") = "max-adopters",
      py::arg("pref") = "min-card", py::arg("live_counts") = false);
  m.def(
      "exact_most_influential",
      [](const InfluenceGame& g, const std::vector<std::vector<int>>& psne, const py::object& goal,
         const py::object& pref, int max_size) {
        auto res = exact_most_influential(g, to_actions(psne), make_goal(goal), make_pref(pref), max_size);
        return py::make_tuple(res.selected, std::vector<int>(res.actions.begin(), res.actions.end()),
                              from_action(res.goal));
      },
      py::arg("game"), py::arg("psne"), py::arg("goal") = "max-adopters",
      py::arg("pref") = "min-card", py::arg("max_size") = -1);

  m.def(
      "stable_cloture_set",
      [](const std::vector<std::vector<int>>& psne, int quota, std::optional<std::vector<int>> party) {
        return from_actions(stable_cloture_set(to_actions(psne), {quota, std::move(party)}));
      },
      py::arg("psne"), py::arg("quota"), py::arg("party") = std::nullopt);
  m.def(
      "filibuster_breakers",
      [](const InfluenceGame& g, const std::vector<std::vector<int>>& psne,
         const std::vector<std::vector<int>>& cloture, bool exact) {
        auto res = filibuster_breakers(g, to_actions(psne), to_actions(cloture), exact);
        return py::make_tuple(res.players, from_actions(res.cover));
      },
      py::arg("game"), py::arg("psne"), py::arg("cloture"), py::arg("exact") = false);
  m.def(
      "cloture_preventers",
      [](const InfluenceGame& g, const std::vector<std::vector<int>>& psne,
         const std::vector<std::vector<int>>& cloture, bool exact) {
        auto res = cloture_preventers(g, to_actions(psne), to_actions(cloture), exact);
        return py::make_tuple(res.players, from_actions(res.cover));
      },
      py::arg("game"), py::arg("psne"), py::arg("cloture"), py::arg("exact") = false);
  m.def(
      "best_response_dynamics",
      [](const InfluenceGame& g, const std::map<int, int>& forced, const std::vector<int>& init,
         int max_rounds) {
        DynamicsOutcome out = best_response_dynamics(g, to_partial(forced), to_action(init), max_rounds);
        py::dict d;
        d["kind"] = out.kind == DynamicsOutcome::Kind::FixedPoint ? "fixed-point" : "cycle";
        d["state"] = from_action(out.state);
        d["rounds"] = out.rounds;
        d["period"] = out.period;
        d["stable"] = out.stable;
        return d;
      },
      py::arg("game"), py::arg("forced"), py::arg("init"), py::arg("max_rounds") = -1);
  m.def("diffusion_most_influential",
        [](const InfluenceGame& g) { return diffusion_most_influential(g); });
  m.def(
      "diffusion_filibuster",
      [](const InfluenceGame& g, int quota, int k_max) {
        auto hits = diffusion_filibuster(g, {quota, std::nullopt}, k_max);
        std::vector<py::dict> out;
        for (const auto& h : hits) {
          py::dict d;
          d["subset"] = h.subset;
          d["state"] = from_action(h.outcome.state);
          d["stable"] = h.outcome.stable;
          out.push_back(d);
        }
        return out;
      },
      py::arg("game"), py::arg("quota"), py::arg("k_max"));

  m.def("gen_erdos_renyi", &gen_erdos_renyi, py::arg("n"), py::arg("edge_p"), py::arg("seed"));
  m.def("gen_uniform_random", &gen_uniform_random, py::arg("n"), py::arg("arc_p"), py::arg("flip_p"),
        py::arg("seed"));
  m.def("gen_pref_attach", &gen_pref_attach, py::arg("n"), py::arg("m"), py::arg("flip_p"),
        py::arg("seed"));

  m.def(
      "learn_lig",
      [](const std::vector<std::vector<int>>& instances, const std::vector<std::string>& labels,
         double l2_lambda, int max_iters, double tolerance) {
        VoteMatrix votes{to_actions(instances), labels};
        LearnConfig cfg;
        cfg.l2_lambda = l2_lambda;
        cfg.max_iters = max_iters;
        cfg.tolerance = tolerance;
        LearnResult res = learn_lig(votes, cfg);
        return py::make_tuple(res.game, res.converged, res.grad_norms);
      },
      py::arg("instances"), py::arg("labels") = std::vector<std::string>{},
      py::arg("l2_lambda") = 0.1, py::arg("max_iters") = 5000, py::arg("tolerance") = 1e-8);
  m.def(
      "psne_representation_rate",
      [](const InfluenceGame& g, const std::vector<std::vector<int>>& instances) {
        return psne_representation_rate(g, {to_actions(instances), {}});
      },
      py::arg("game"), py::arg("instances"));
  m.def(
      "ingest_votes",
      [](const std::vector<std::vector<int>>& raw) {
        return from_actions(ingest_votes(raw).instances);
      },
      py::arg("raw"));

  m.def("supreme_court", &fixtures::supreme_court);
}
