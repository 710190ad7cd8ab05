#include "lig/reductions.hpp"

#include <map>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lig {

using nlohmann::json;

void CnfFormula::validate() const {
  if (num_vars < 1) throw InvalidInput("formula needs at least one variable");
  for (const auto& cl : clauses)
    for (const Literal& l : cl)
      if (l.var < 0 || l.var >= num_vars) throw InvalidInput("literal variable out of range");
}

bool CnfFormula::is_monotone() const {
  for (const auto& cl : clauses)
    for (const Literal& l : cl)
      if (l.negated) return false;
  return true;
}

CnfFormula cnf_from_dimacs(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  CnfFormula f;
  int declared_clauses = -1;
  bool header = false;
  std::vector<Literal> current;
  while (in >> tok) {
    if (tok == "c") {
      std::string rest;
      std::getline(in, rest);
      continue;
    }
    if (tok == "p") {
      std::string kind;
      if (!(in >> kind >> f.num_vars >> declared_clauses) || kind != "cnf")
        throw InvalidInput("bad DIMACS header");
      header = true;
      continue;
    }
    if (!header) throw InvalidInput("DIMACS clauses before header");
    long lit;
    try {
      lit = std::stol(tok);
    } catch (...) {
      throw InvalidInput("bad DIMACS literal: " + tok);
    }
    if (lit == 0) {
      if (current.size() != 3) throw InvalidInput("every clause must have exactly 3 literals");
      f.clauses.push_back({current[0], current[1], current[2]});
      current.clear();
    } else {
      current.push_back({static_cast<int>(std::labs(lit)) - 1, lit < 0});
    }
  }
  if (!current.empty()) throw InvalidInput("unterminated DIMACS clause");
  if (declared_clauses >= 0 && declared_clauses != f.num_clauses())
    throw InvalidInput("DIMACS clause count mismatch");
  f.validate();
  return f;
}

std::string cnf_to_dimacs(const CnfFormula& formula) {
  std::ostringstream out;
  out << "p cnf " << formula.num_vars << ' ' << formula.num_clauses() << '\n';
  for (const auto& cl : formula.clauses) {
    for (const Literal& l : cl) out << (l.negated ? -(l.var + 1) : l.var + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

void KnapsackInstance::validate() const {
  if (weights.empty()) throw InvalidInput("knapsack instance needs at least one item");
  for (long long a : weights)
    if (a < 1) throw InvalidInput("item weights must be positive integers");
  if (capacity < 0) throw InvalidInput("capacity must be nonnegative");
}

KnapsackInstance knapsack_from_json(const std::string& text) {
  try {
    json j = json::parse(text);
    KnapsackInstance inst{j.at("weights").get<std::vector<long long>>(), j.at("capacity").get<long long>()};
    inst.validate();
    return inst;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad knapsack JSON: ") + e.what());
  }
}

std::string knapsack_to_json(const KnapsackInstance& instance) {
  json j{{"weights", instance.weights}, {"capacity", instance.capacity}};
  return j.dump(2) + "\n";
}

namespace {
void check_epsilon(double epsilon) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw InvalidInput("epsilon must lie in (0, 1)");
}
}  // namespace

ZeroOneGame gadget_3sat(const CnfFormula& formula, double epsilon) {
  formula.validate();
  check_epsilon(epsilon);
  const int n = formula.num_vars, m = formula.num_clauses();
  // repeated literals are legal; parallel arcs merge by summing weights
  std::map<std::pair<int, int>, double> weight;
  std::vector<double> b(n + m, 0.0);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (int k = 0; k < m; ++k) labels.push_back("c" + std::to_string(k + 1));

  for (int k = 0; k < m; ++k) {
    const int ck = n + k;
    double clause_b = 1.0 - epsilon;
    for (const Literal& lit : formula.clauses[k]) {
      const double l = lit.negated ? 0.0 : 1.0;
      clause_b -= 1.0 - l;
      weight[{ck, lit.var}] += 1.0 - 2.0 * l;  // clause -> variable
      weight[{lit.var, ck}] += 2.0 * l - 1.0;  // variable -> clause
      b[lit.var] += 1.0 - 2.0 * l;
    }
    b[ck] = clause_b;
  }
  std::vector<Arc> arcs;
  for (const auto& [key, w] : weight) arcs.push_back({key.first, key.second, w});
  return {InfluenceGame(n + m, arcs, std::move(b), std::move(labels))};
}

OneInThreeGadget gadget_one_in_three(const CnfFormula& formula, double epsilon,
                                     OneInThreeVariant variant) {
  formula.validate();
  if (!formula.is_monotone()) throw InvalidInput("one-in-three gadget needs a monotone formula");
  for (const auto& cl : formula.clauses)
    if (cl[0].var == cl[1].var || cl[0].var == cl[2].var || cl[1].var == cl[2].var)
      throw InvalidInput("one-in-three clauses need three distinct variables");
  check_epsilon(epsilon);
  const int n = formula.num_vars, m = formula.num_clauses();

  std::vector<Arc> arcs;
  std::vector<double> b(n + m, 0.0);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i + 1));
  for (int k = 0; k < m; ++k) {
    labels.push_back("c" + std::to_string(k + 1));
    b[n + k] = epsilon;
  }

  std::set<std::pair<int, int>> cooccur;
  for (int k = 0; k < m; ++k) {
    for (const Literal& lit : formula.clauses[k]) arcs.push_back({lit.var, n + k, 1.0});
    for (const Literal& lu : formula.clauses[k])
      for (const Literal& lv : formula.clauses[k])
        if (lu.var != lv.var) cooccur.insert({lu.var, lv.var});
  }
  for (const auto& [u, v] : cooccur) arcs.push_back({u, v, -1.0});

  std::vector<int> designated;
  switch (variant) {
    case OneInThreeVariant::Basic: {
      for (int k = 0; k < m; ++k) designated.push_back(n + k);
      return {{InfluenceGame(n + m, arcs, std::move(b), std::move(labels))}, std::move(designated), m, -1,
              -1};
    }
    case OneInThreeVariant::ExtraPlayers: {
      // m-1 dedicated fan-out players per clause, threshold epsilon each
      int next = n + m;
      b.resize(n + m + static_cast<std::size_t>(m) * (m - 1), epsilon);
      for (int k = 0; k < m; ++k)
        for (int r = 0; r < m - 1; ++r) {
          labels.push_back("e" + std::to_string(next - n - m + 1));
          arcs.push_back({n + k, next, 1.0});
          ++next;
        }
      for (int k = 0; k < m; ++k) designated.push_back(n + k);
      for (int p = n + m; p < next; ++p) designated.push_back(p);
      return {{InfluenceGame(next, arcs, std::move(b), std::move(labels))}, std::move(designated),
              static_cast<long long>(m) * m, -1, -1};
    }
    case OneInThreeVariant::VerificationPlayers: {
      const int all_sat = n + m, none_sat = n + m + 1;
      const int first_extra = n + m + 2;
      const long long extras = static_cast<long long>(m) * m;
      b.resize(first_extra + extras, epsilon);
      b[all_sat] = m - epsilon;
      b[none_sat] = -epsilon;
      labels.push_back("all_sat");
      labels.push_back("none_sat");
      for (long long e = 0; e < extras; ++e) labels.push_back("e" + std::to_string(e + 1));
      for (int k = 0; k < m; ++k) {
        arcs.push_back({n + k, all_sat, 1.0});
        arcs.push_back({n + k, none_sat, -1.0});
      }
      for (long long e = 0; e < extras; ++e) {
        arcs.push_back({all_sat, first_extra + static_cast<int>(e), 1.0});
        arcs.push_back({none_sat, first_extra + static_cast<int>(e), 1.0});
        designated.push_back(first_extra + static_cast<int>(e));
      }
      return {{InfluenceGame(first_extra + static_cast<int>(extras), arcs, std::move(b), std::move(labels))},
              std::move(designated), extras, all_sat, none_sat};
    }
  }
  throw InvalidInput("bad one-in-three variant");
}

ZeroOneGame gadget_knapsack_star(const KnapsackInstance& instance) {
  instance.validate();
  const int n = static_cast<int>(instance.weights.size());
  std::vector<Arc> arcs;
  std::vector<double> b(n + 1, 1.0);
  // hub threshold -W forces the hub on whenever the load fits; at W = 0 that
  // value leaves the hub indifferent at the empty pick, so nudge it below
  // zero (same feasible set: item weights are integers)
  b[0] = instance.capacity > 0 ? -static_cast<double>(instance.capacity) : -0.5;
  std::vector<std::string> labels{"hub"};
  for (int i = 1; i <= n; ++i) {
    labels.push_back("item" + std::to_string(i));
    arcs.push_back({0, i, 1.0});
    arcs.push_back({i, 0, -static_cast<double>(instance.weights[i - 1])});
  }
  return {InfluenceGame(n + 1, arcs, std::move(b), std::move(labels))};
}

}  // namespace lig
