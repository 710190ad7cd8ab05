#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "lig/game.hpp"

namespace lig {

// 2-action polymatrix game: player i's payoff is the sum over j != i of a
// partial payoff alpha_ji(x_j, x_i). Tables are 2x2, indexed with -1 first
// and +1 second in both coordinates.
class PolymatrixGame {
 public:
  explicit PolymatrixGame(int n);

  int n() const { return n_; }
  // alpha_{from,to}(x_from, x_to)
  double alpha(int from, int to, Action x_from, Action x_to) const;
  void set_alpha(int from, int to, Action x_from, Action x_to, double value);
  double payoff(int i, const JointAction& x) const;
  bool is_psne(const JointAction& x) const;
  std::vector<JointAction> brute_force_psne(int cap = kBruteForceCap) const;

 private:
  int n_;
  // table[(from*n+to)][idx(x_from)*2+idx(x_to)], diagonal unused
  std::vector<std::array<double, 4>> tables_;
};

// Polymatrix JSON schema:
//   {"n": int, "tables": [[j, i, [[a_mm, a_mp], [a_pm, a_pp]]], ...]}
// where the first table row/column is action -1 (m) and the second +1 (p),
// the outer index is x_j and the inner x_i. Absent tables are all zero.
std::string polymatrix_to_json(const PolymatrixGame& pm);
PolymatrixGame polymatrix_from_json(const std::string& text);

// An influence game whose actions are read as {0,1} instead of {-1,+1}
// (only hardness gadgets produce these). Convert with zero_one_to_pm1
// before handing it to any solver.
struct ZeroOneGame {
  InfluenceGame game;
};

// PSNE-preserving conversions.
PolymatrixGame lig_to_polymatrix(const InfluenceGame& game);       // needs n >= 2
InfluenceGame polymatrix_to_lig(const PolymatrixGame& pm);         // needs n >= 2
InfluenceGame zero_one_to_pm1(const ZeroOneGame& game01);
// x is a PSNE of the 0/1 game iff 2x-1 is a PSNE of the converted game.
JointAction zero_one_action_to_pm1(const std::vector<int>& x01);

enum class PotentialVariant { SymmetricExact, IndiscriminateOrdinal, NoneDetected };

struct PotentialKind {
  PotentialVariant variant = PotentialVariant::NoneDetected;
  // IndiscriminateOrdinal only: common sign rho and per-player deltas.
  int rho = 0;
  std::vector<double> delta;
};

// Checks symmetry first (exact potential beats ordinal when both apply),
// then the indiscriminate structure w_ij = delta_i != 0 with all deltas
// sharing one sign. Tolerance is absolute.
PotentialKind detect_potential(const InfluenceGame& game, double tolerance = 1e-12);

// Evaluates the potential for the detected variant; PSNE of the game are
// exactly the weak local maxima of this function over unilateral flips.
double potential_value(const InfluenceGame& game, const PotentialKind& kind, const JointAction& x);

}  // namespace lig
