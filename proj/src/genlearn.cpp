#include "lig/genlearn.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lig/rng.hpp"

namespace lig {

void VoteMatrix::validate() const {
  if (instances.empty()) throw InvalidInput("vote matrix needs at least one instance");
  std::size_t n = instances.front().size();
  if (n < 1) throw InvalidInput("vote matrix needs at least one player");
  for (const JointAction& row : instances) {
    if (row.size() != n) throw InvalidInput("vote matrix rows must have uniform length");
    for (auto a : row)
      if (a != -1 && a != 1) throw InvalidInput("votes must be -1 or +1");
  }
  if (!labels.empty() && labels.size() != n) throw InvalidInput("label count must match player count");
}

void LearnConfig::validate() const {
  if (!(l2_lambda > 0.0)) throw InvalidInput("l2_lambda must be positive");
  if (max_iters < 1) throw InvalidInput("max_iters must be >= 1");
  if (!(tolerance > 0.0)) throw InvalidInput("tolerance must be positive");
  if (!(init_step > 0.0) || !(backtrack > 0.0) || !(backtrack < 1.0))
    throw InvalidInput("bad step schedule");
}

namespace {

// theta = (weights into player i..., b_i); features are the other players'
// votes with the threshold entering negatively.
struct PlayerFit {
  std::vector<double> theta;
  double grad_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

PlayerFit fit_player(const VoteMatrix& votes, int i, const LearnConfig& cfg) {
  const int n = votes.n();
  const int m = static_cast<int>(votes.instances.size());
  const int dim = n;  // n-1 weights plus the threshold
  std::vector<double> theta(dim, 0.0), grad(dim), trial(dim);

  auto eval = [&](const std::vector<double>& th, std::vector<double>* g) {
    if (g) std::fill(g->begin(), g->end(), 0.0);
    double nll = 0.0;
    for (const JointAction& row : votes.instances) {
      double f = -th[dim - 1];
      int k = 0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        f += th[k++] * row[j];
      }
      double yf = row[i] * f;
      // log(1 + exp(-yf)) evaluated stably
      nll += yf > 0 ? std::log1p(std::exp(-yf)) : -yf + std::log1p(std::exp(yf));
      if (g) {
        double coef = -row[i] / (1.0 + std::exp(yf));  // d nll / d f
        int kk = 0;
        for (int j = 0; j < n; ++j) {
          if (j == i) continue;
          (*g)[kk++] += coef * row[j];
        }
        (*g)[dim - 1] -= coef;
      }
    }
    nll /= m;
    double reg = 0.0;
    for (int d = 0; d < dim; ++d) reg += th[d] * th[d];
    nll += 0.5 * cfg.l2_lambda * reg;
    if (g)
      for (int d = 0; d < dim; ++d) (*g)[d] = (*g)[d] / m + cfg.l2_lambda * th[d];
    return nll;
  };

  PlayerFit fit;
  double obj = eval(theta, &grad);
  for (int it = 0; it < cfg.max_iters; ++it) {
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    fit.grad_norm = std::sqrt(gnorm2);
    fit.iterations = it;
    if (fit.grad_norm < cfg.tolerance) {
      fit.converged = true;
      break;
    }
    // backtracking line search with an Armijo test; the objective never
    // increases, and a step-floor stall ends the fit
    double step = cfg.init_step;
    bool stalled = false;
    while (true) {
      for (int d = 0; d < dim; ++d) trial[d] = theta[d] - step * grad[d];
      double cand = eval(trial, nullptr);
      if (cand <= obj - 0.5 * step * gnorm2) {
        theta.swap(trial);
        obj = cand;
        break;
      }
      if (step < 1e-18) {
        stalled = true;
        break;
      }
      step *= cfg.backtrack;
    }
    if (stalled) break;
    obj = eval(theta, &grad);
  }
  if (!fit.converged) {
    double gnorm2 = 0.0;
    for (double g : grad) gnorm2 += g * g;
    fit.grad_norm = std::sqrt(gnorm2);
    fit.iterations = cfg.max_iters;
    fit.converged = fit.grad_norm < cfg.tolerance;
  }
  fit.theta = std::move(theta);
  return fit;
}

}  // namespace

LearnResult learn_lig(const VoteMatrix& votes, const LearnConfig& cfg) {
  votes.validate();
  cfg.validate();
  const int n = votes.n();
  if (n < 2) throw InvalidInput("learning needs at least two players");

  std::vector<Arc> arcs;
  std::vector<double> b(n, 0.0);
  std::vector<double> grad_norms(n);
  std::vector<int> iterations(n);
  bool converged = true;

  for (int i = 0; i < n; ++i) {
    PlayerFit fit = fit_player(votes, i, cfg);
    int k = 0;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (fit.theta[k] != 0.0) arcs.push_back({j, i, fit.theta[k]});
      ++k;
    }
    b[i] = fit.theta[n - 1];
    grad_norms[i] = fit.grad_norm;
    iterations[i] = fit.iterations;
    converged = converged && fit.converged;
  }
  return {InfluenceGame(n, arcs, std::move(b), votes.labels), converged, std::move(grad_norms),
          std::move(iterations)};
}

double psne_representation_rate(const InfluenceGame& game, const VoteMatrix& votes) {
  votes.validate();
  if (votes.n() != game.n()) throw InvalidInput("vote matrix width must match the game");
  long long hits = 0;
  for (const JointAction& row : votes.instances) hits += game.is_psne(row);
  return static_cast<double>(hits) / static_cast<double>(votes.instances.size());
}

const std::map<int, VoteCode>& default_vote_code_map() {
  static const std::map<int, VoteCode> map{
      {1, VoteCode::Yes}, {2, VoteCode::No},       {3, VoteCode::Yes}, {4, VoteCode::Yes},
      {5, VoteCode::Yes}, {6, VoteCode::Majority}, {7, VoteCode::Majority}};
  return map;
}

VoteMatrix ingest_votes(const std::vector<std::vector<int>>& raw, const std::map<int, VoteCode>& code_map,
                        std::vector<std::string> labels) {
  if (raw.empty()) throw InvalidInput("vote table is empty");
  const std::size_t n = raw.front().size();
  VoteMatrix out;
  out.labels = std::move(labels);
  for (const auto& row : raw) {
    if (row.size() != n) throw InvalidInput("vote table must be rectangular");
    JointAction x(n, 0);
    int resolved_sum = 0;
    std::vector<std::size_t> majority_slots;
    for (std::size_t j = 0; j < n; ++j) {
      auto it = code_map.find(row[j]);
      if (it == code_map.end()) throw InvalidInput("unknown vote code " + std::to_string(row[j]));
      switch (it->second) {
        case VoteCode::Yes:
          x[j] = 1;
          resolved_sum += 1;
          break;
        case VoteCode::No:
          x[j] = -1;
          resolved_sum -= 1;
          break;
        case VoteCode::Majority:
          majority_slots.push_back(j);
          break;
      }
    }
    if (majority_slots.size() == n) throw InvalidInput("all-majority vote row is unresolvable");
    for (std::size_t j : majority_slots) x[j] = resolved_sum >= 0 ? 1 : -1;  // ties go to yes
    out.instances.push_back(std::move(x));
  }
  out.validate();
  return out;
}

VoteMatrix votes_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidInput("empty votes CSV");
  auto split = [](const std::string& s) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ls(s);
    while (std::getline(ls, cell, ',')) {
      while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
      std::size_t start = cell.find_first_not_of(' ');
      out.push_back(start == std::string::npos ? "" : cell.substr(start));
    }
    return out;
  };
  std::vector<std::string> labels = split(line);
  std::vector<std::vector<int>> rows;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split(line);
    if (cells.size() != labels.size()) throw InvalidInput("ragged votes CSV row");
    std::vector<int> row;
    for (const std::string& c : cells) {
      try {
        row.push_back(std::stoi(c));
      } catch (...) {
        throw InvalidInput("bad vote value: " + c);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw InvalidInput("votes CSV has no data rows");

  bool direct = true;
  for (const auto& row : rows)
    for (int v : row)
      if (v != -1 && v != 1) direct = false;
  if (direct) {
    VoteMatrix out;
    out.labels = labels;
    for (const auto& row : rows) {
      JointAction x(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) x[j] = static_cast<std::int8_t>(row[j]);
      out.instances.push_back(std::move(x));
    }
    out.validate();
    return out;
  }
  return ingest_votes(rows, default_vote_code_map(), labels);
}

std::string votes_to_csv(const VoteMatrix& votes) {
  std::ostringstream out;
  for (std::size_t j = 0; j < votes.labels.size(); ++j) out << (j ? "," : "") << votes.labels[j];
  out << '\n';
  for (const JointAction& row : votes.instances) out << to_csv_line(row) << '\n';
  return out.str();
}

InfluenceGame gen_erdos_renyi(int n, double edge_p, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (edge_p < 0.0 || edge_p > 1.0) throw InvalidInput("edge_p must lie in [0, 1]");
  Rng topo = Rng::stream(seed, 1);
  std::vector<std::vector<int>> incoming(n);
  for (int a = 0; a < n; ++a)
    for (int c = a + 1; c < n; ++c)
      if (topo.bernoulli(edge_p)) {
        incoming[a].push_back(c);
        incoming[c].push_back(a);
      }

  std::vector<Arc> arcs;
  std::vector<double> b(n);
  for (int i = 0; i < n; ++i) {
    Rng node = Rng::stream(seed, 2, static_cast<std::uint64_t>(i));
    // magnitudes: normalized |gaussian| vector, so b_i^2 + sum w_ji^2 = 1
    std::vector<double> mags(incoming[i].size() + 1);
    double norm2 = 0.0;
    for (double& v : mags) {
      v = std::abs(node.gaussian());
      norm2 += v * v;
    }
    double norm = std::sqrt(norm2);
    if (norm == 0.0) {
      mags.assign(mags.size(), 0.0);
      mags[0] = 1.0;
      norm = 1.0;
    }
    b[i] = mags[0] / norm * (node.bernoulli(0.5) ? 1.0 : -1.0);
    for (std::size_t k = 0; k < incoming[i].size(); ++k) {
      double w = mags[k + 1] / norm * (node.bernoulli(0.5) ? 1.0 : -1.0);
      arcs.push_back({incoming[i][k], i, w});
    }
  }
  return InfluenceGame(n, arcs, std::move(b));
}

InfluenceGame gen_uniform_random(int n, double arc_p, double flip_p, std::uint64_t seed) {
  if (n < 1) throw InvalidInput("n must be >= 1");
  if (arc_p < 0.0 || arc_p > 1.0 || flip_p < 0.0 || flip_p > 1.0)
    throw InvalidInput("probabilities must lie in [0, 1]");
  std::vector<Arc> arcs;
  for (int i = 0; i < n; ++i) {
    Rng node = Rng::stream(seed, 3, static_cast<std::uint64_t>(i));
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      if (node.bernoulli(arc_p)) arcs.push_back({i, j, node.bernoulli(flip_p) ? -1.0 : 1.0});
    }
  }
  return InfluenceGame(n, arcs, std::vector<double>(n, 0.0));
}

InfluenceGame gen_pref_attach(int n, int m, double flip_p, std::uint64_t seed) {
  if (n < 3) throw InvalidInput("preferential attachment needs n >= 3");
  if (m < 1) throw InvalidInput("m must be >= 1");
  if (flip_p < 0.0 || flip_p > 1.0) throw InvalidInput("flip_p must lie in [0, 1]");

  Rng rng = Rng::stream(seed, 4);
  std::vector<Arc> arcs;
  std::vector<int> degree(n, 0);
  auto link = [&](int a, int c) {
    double w = rng.bernoulli(flip_p) ? -1.0 : 1.0;  // both directions share the weight
    arcs.push_back({a, c, w});
    arcs.push_back({c, a, w});
    degree[a]++;
    degree[c]++;
  };
  link(0, 1);
  link(0, 2);
  link(1, 2);

  for (int t = 3; t < n; ++t) {
    int want = std::min(m, t);
    std::vector<int> chosen;
    while (static_cast<int>(chosen.size()) < want) {
      long long total = 0;
      for (int v = 0; v < t; ++v)
        if (std::find(chosen.begin(), chosen.end(), v) == chosen.end()) total += degree[v];
      long long roll = static_cast<long long>(rng.below(static_cast<std::uint64_t>(total)));
      for (int v = 0; v < t; ++v) {
        if (std::find(chosen.begin(), chosen.end(), v) != chosen.end()) continue;
        roll -= degree[v];
        if (roll < 0) {
          chosen.push_back(v);
          break;
        }
      }
    }
    for (int v : chosen) link(t, v);
  }
  return InfluenceGame(n, arcs, std::vector<double>(n, 0.0));
}

}  // namespace lig
