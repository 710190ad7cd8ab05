#pragma once

#include <array>
#include <string>
#include <vector>

#include "lig/transforms.hpp"

namespace lig {

struct Literal {
  int var = 0;        // 0-based variable index
  bool negated = false;
};

// 3-CNF formula; every clause has exactly three distinct variables.
// Monotone formulas carry no negations.
struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;

  void validate() const;
  bool is_monotone() const;
  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// DIMACS-style reader ("p cnf <vars> <clauses>" header, clauses as
// whitespace-separated nonzero literals terminated by 0, 'c' comments).
CnfFormula cnf_from_dimacs(const std::string& text);
std::string cnf_to_dimacs(const CnfFormula& formula);

struct KnapsackInstance {
  std::vector<long long> weights;  // all >= 1
  long long capacity = 0;          // >= 0

  void validate() const;
};

// JSON schema: {"weights": [int, ...], "capacity": int}
KnapsackInstance knapsack_from_json(const std::string& text);
std::string knapsack_to_json(const KnapsackInstance& instance);

// Clause/variable game whose PSNE are in bijection with the satisfying
// assignments of the formula: variable players first (0..n-1), then one
// player per clause. The graph is bipartite. {0,1} action semantics.
ZeroOneGame gadget_3sat(const CnfFormula& formula, double epsilon = 0.5);

enum class OneInThreeVariant { Basic, ExtraPlayers, VerificationPlayers };

struct OneInThreeGadget {
  ZeroOneGame game;
  // Basic: the clause players. ExtraPlayers: clause plus fan-out players,
  // with k = m^2 the "at least k play 1" threshold. VerificationPlayers:
  // the m^2 designated players behind the two verifiers.
  std::vector<int> designated;
  long long k = 0;
  int all_satisfied_verifier = -1;   // VerificationPlayers only
  int none_satisfied_verifier = -1;  // VerificationPlayers only
};

OneInThreeGadget gadget_one_in_three(const CnfFormula& formula, double epsilon,
                                     OneInThreeVariant variant);

// Star-shaped counting gadget: hub plays 1 in every PSNE and the PSNE
// count equals the number of item subsets within capacity.
ZeroOneGame gadget_knapsack_star(const KnapsackInstance& instance);

}  // namespace lig
