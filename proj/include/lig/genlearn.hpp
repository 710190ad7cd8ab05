#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "lig/game.hpp"

namespace lig {

struct VoteMatrix {
  std::vector<JointAction> instances;
  std::vector<std::string> labels;

  void validate() const;
  int n() const { return instances.empty() ? 0 : static_cast<int>(instances.front().size()); }
};

struct LearnConfig {
  double l2_lambda = 0.1;
  int max_iters = 5000;
  double tolerance = 1e-8;  // on the gradient norm
  double init_step = 1.0;
  double backtrack = 0.5;

  void validate() const;
};

struct LearnResult {
  InfluenceGame game;
  bool converged = true;
  std::vector<double> grad_norms;  // final gradient norm per player
  std::vector<int> iterations;     // iterations used per player
};

// Independent L2-regularized logistic regression per player: column i of W
// and b_i parameterize P(x_i = +1 | x_-i) = sigmoid(sum_j w_ji x_j - b_i),
// fitted by gradient descent with backtracking (the mean-NLL objective
// decreases monotonically). Non-convergence is flagged, not thrown.
LearnResult learn_lig(const VoteMatrix& votes, const LearnConfig& cfg = {});

// Fraction of voting instances that are PSNE of the game.
double psne_representation_rate(const InfluenceGame& game, const VoteMatrix& votes);

enum class VoteCode { Yes, No, Majority };

// Roll-call encoding: 1,3,4,5 -> yes; 2 -> no; 6,7 -> the majority of the
// other resolved votes in the instance (ties resolve to yes); 8 has no
// mapping and is rejected.
const std::map<int, VoteCode>& default_vote_code_map();

VoteMatrix ingest_votes(const std::vector<std::vector<int>>& raw,
                        const std::map<int, VoteCode>& code_map = default_vote_code_map(),
                        std::vector<std::string> labels = {});

// CSV with a header row of player labels; data rows hold either raw codes
// or direct -1/+1 votes (detected from the value range).
VoteMatrix votes_from_csv(const std::string& text);
std::string votes_to_csv(const VoteMatrix& votes);

// Random game families. All are pure functions of their configuration and
// seed (per-node RNG streams, so output is platform independent).
//
// Undirected edges appear with probability edge_p as two opposing arcs;
// each node's (threshold, incoming weights) vector is drawn uniformly from
// the unit sphere (|b_i|^2 + sum_j w_ji^2 = 1) with independent signs.
InfluenceGame gen_erdos_renyi(int n, double edge_p, std::uint64_t seed);

// Each ordered pair gets an arc with probability arc_p, weighted -1 with
// the flip probability and +1 otherwise; thresholds are 0.
InfluenceGame gen_uniform_random(int n, double arc_p, double flip_p, std::uint64_t seed);

// Triangle seed, then each new node attaches bidirectionally to
// min(m, existing) distinct nodes sampled proportionally to degree; both
// directions share one +-1 weight per the flip probability; thresholds 0.
InfluenceGame gen_pref_attach(int n, int m, double flip_p, std::uint64_t seed);

}  // namespace lig
