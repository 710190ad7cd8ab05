#include "lig/transforms.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace lig {

using nlohmann::json;

namespace {
inline int idx(Action a) { return a > 0 ? 1 : 0; }
}  // namespace

PolymatrixGame::PolymatrixGame(int n) : n_(n) {
  if (n_ < 1) throw InvalidInput("polymatrix game needs at least one player");
  tables_.assign(static_cast<std::size_t>(n_) * n_, {0.0, 0.0, 0.0, 0.0});
}

double PolymatrixGame::alpha(int from, int to, Action x_from, Action x_to) const {
  if (from < 0 || from >= n_ || to < 0 || to >= n_ || from == to)
    throw InvalidInput("bad polymatrix pair");
  return tables_[static_cast<std::size_t>(from) * n_ + to][idx(x_from) * 2 + idx(x_to)];
}

void PolymatrixGame::set_alpha(int from, int to, Action x_from, Action x_to, double value) {
  if (from < 0 || from >= n_ || to < 0 || to >= n_ || from == to)
    throw InvalidInput("bad polymatrix pair");
  tables_[static_cast<std::size_t>(from) * n_ + to][idx(x_from) * 2 + idx(x_to)] = value;
}

double PolymatrixGame::payoff(int i, const JointAction& x) const {
  if (static_cast<int>(x.size()) != n_) throw InvalidInput("joint action length must equal n");
  double s = 0.0;
  for (int j = 0; j < n_; ++j)
    if (j != i) s += tables_[static_cast<std::size_t>(j) * n_ + i][idx(x[j]) * 2 + idx(x[i])];
  return s;
}

bool PolymatrixGame::is_psne(const JointAction& x) const {
  JointAction y = x;
  for (int i = 0; i < n_; ++i) {
    double ui = payoff(i, x);
    y[i] = static_cast<std::int8_t>(-x[i]);
    double alt = payoff(i, y);
    y[i] = x[i];
    if (ui < alt) return false;
  }
  return true;
}

std::vector<JointAction> PolymatrixGame::brute_force_psne(int cap) const {
  if (n_ > cap) throw InvalidInput("brute-force cap exceeded");
  std::vector<JointAction> out;
  for (std::uint64_t m = 0; m < (std::uint64_t{1} << n_); ++m) {
    JointAction x(n_);
    for (int i = 0; i < n_; ++i) x[i] = (m >> i) & 1 ? 1 : -1;
    if (is_psne(x)) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string polymatrix_to_json(const PolymatrixGame& pm) {
  json tables = json::array();
  for (int j = 0; j < pm.n(); ++j)
    for (int i = 0; i < pm.n(); ++i) {
      if (i == j) continue;
      json t = {{pm.alpha(j, i, -1, -1), pm.alpha(j, i, -1, +1)},
                {pm.alpha(j, i, +1, -1), pm.alpha(j, i, +1, +1)}};
      tables.push_back(json::array({j, i, t}));
    }
  json j{{"n", pm.n()}, {"tables", tables}};
  return j.dump(2) + "\n";
}

PolymatrixGame polymatrix_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad polymatrix JSON: ") + e.what());
  }
  try {
    PolymatrixGame pm(j.at("n").get<int>());
    for (const auto& entry : j.at("tables")) {
      if (!entry.is_array() || entry.size() != 3) throw InvalidInput("each table must be [j, i, 2x2]");
      int from = entry[0].get<int>(), to = entry[1].get<int>();
      const auto& t = entry[2];
      if (!t.is_array() || t.size() != 2 || t[0].size() != 2 || t[1].size() != 2)
        throw InvalidInput("polymatrix table must be 2x2");
      pm.set_alpha(from, to, -1, -1, t[0][0].get<double>());
      pm.set_alpha(from, to, -1, +1, t[0][1].get<double>());
      pm.set_alpha(from, to, +1, -1, t[1][0].get<double>());
      pm.set_alpha(from, to, +1, +1, t[1][1].get<double>());
    }
    return pm;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad polymatrix JSON: ") + e.what());
  }
}

PolymatrixGame lig_to_polymatrix(const InfluenceGame& game) {
  const int n = game.n();
  if (n < 2) throw InvalidInput("polymatrix form needs n >= 2");
  PolymatrixGame pm(n);
  for (int i = 0; i < n; ++i) {
    const double share = game.threshold(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double w = game.weight(j, i);
      for (Action xj : {-1, +1})
        for (Action xi : {-1, +1}) pm.set_alpha(j, i, xj, xi, xi * w * xj - xi * share);
    }
  }
  return pm;
}

InfluenceGame polymatrix_to_lig(const PolymatrixGame& pm) {
  const int n = pm.n();
  if (n < 2) throw InvalidInput("polymatrix form needs n >= 2");
  std::vector<Arc> arcs;
  std::vector<double> b(n, 0.0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double app = pm.alpha(j, i, +1, +1), amp = pm.alpha(j, i, -1, +1);
      const double apm = pm.alpha(j, i, +1, -1), amm = pm.alpha(j, i, -1, -1);
      const double w = 0.25 * (app - amp - apm + amm);
      if (w != 0.0) arcs.push_back({j, i, w});
      b[i] -= 0.25 * (app + amp - apm - amm);
    }
  }
  return InfluenceGame(n, arcs, std::move(b));
}

InfluenceGame zero_one_to_pm1(const ZeroOneGame& game01) {
  const InfluenceGame& g = game01.game;
  std::vector<Arc> arcs;
  std::vector<double> b(g.n());
  for (int i = 0; i < g.n(); ++i) {
    double half_in = 0.0;
    for (const auto& [j, w] : g.in_arcs(i)) {
      arcs.push_back({j, i, w / 2.0});
      half_in += w / 2.0;
    }
    b[i] = g.threshold(i) - half_in;
  }
  return InfluenceGame(g.n(), arcs, std::move(b), g.labels(), g.tie_epsilon());
}

JointAction zero_one_action_to_pm1(const std::vector<int>& x01) {
  JointAction x(x01.size());
  for (std::size_t i = 0; i < x01.size(); ++i) {
    if (x01[i] != 0 && x01[i] != 1) throw InvalidInput("0/1 action entries must be 0 or 1");
    x[i] = static_cast<std::int8_t>(2 * x01[i] - 1);
  }
  return x;
}

PotentialKind detect_potential(const InfluenceGame& game, double tolerance) {
  const int n = game.n();
  bool symmetric = true;
  for (int i = 0; i < n && symmetric; ++i)
    for (const auto& [j, w] : game.in_arcs(i))
      if (std::abs(w - game.weight(i, j)) > tolerance) {
        symmetric = false;
        break;
      }
  if (symmetric) return {PotentialVariant::SymmetricExact, 0, {}};

  if (n >= 2) {
    std::vector<double> delta(n, 0.0);
    bool ok = true;
    for (int i = 0; i < n && ok; ++i) {
      delta[i] = game.weight(i, i == 0 ? 1 : 0);
      if (std::abs(delta[i]) <= tolerance) {
        ok = false;
        break;
      }
      for (int j = 0; j < n; ++j)
        if (j != i && std::abs(game.weight(i, j) - delta[i]) > tolerance) {
          ok = false;
          break;
        }
    }
    if (ok) {
      int rho = delta[0] > 0 ? +1 : -1;
      for (double d : delta)
        if ((d > 0 ? +1 : -1) != rho) {
          ok = false;
          break;
        }
      if (ok) return {PotentialVariant::IndiscriminateOrdinal, rho, std::move(delta)};
    }
  }
  return {PotentialVariant::NoneDetected, 0, {}};
}

double potential_value(const InfluenceGame& game, const PotentialKind& kind, const JointAction& x) {
  game.check_joint_action(x);
  switch (kind.variant) {
    case PotentialVariant::SymmetricExact: {
      double phi = 0.0;
      for (int t = 0; t < game.n(); ++t) {
        double s = 0.0;
        for (const auto& [i, w] : game.in_arcs(t)) s += x[i] * w / 2.0;
        phi += x[t] * (s - game.threshold(t));
      }
      return phi;
    }
    case PotentialVariant::IndiscriminateOrdinal: {
      double lin = 0.0, cross = 0.0;
      for (int i = 0; i < game.n(); ++i) {
        lin += kind.delta[i] * x[i];
        cross += game.threshold(i) * kind.delta[i] * x[i];
      }
      return kind.rho * (lin * lin - 2.0 * cross);
    }
    case PotentialVariant::NoneDetected:
      throw InvalidInput("no potential detected for this game");
  }
  throw InvalidInput("bad potential kind");
}

}  // namespace lig
