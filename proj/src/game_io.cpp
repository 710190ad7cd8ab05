#include "lig/game_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lig {

using nlohmann::json;

std::string game_to_json(const InfluenceGame& game) {
  json j;
  j["n"] = game.n();
  if (!game.labels().empty()) j["labels"] = game.labels();
  j["thresholds"] = game.thresholds();
  json arcs = json::array();
  for (const Arc& a : game.arcs()) arcs.push_back(json::array({a.from, a.to, a.weight}));
  j["arcs"] = arcs;
  return j.dump(2) + "\n";
}

InfluenceGame game_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad game JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("thresholds") || !j.contains("arcs"))
    throw InvalidInput("game JSON needs keys n, thresholds, arcs");
  try {
    int n = j.at("n").get<int>();
    auto thresholds = j.at("thresholds").get<std::vector<double>>();
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    std::vector<Arc> arcs;
    for (const auto& a : j.at("arcs")) {
      if (!a.is_array() || a.size() != 3) throw InvalidInput("each arc must be [from, to, weight]");
      arcs.push_back({a[0].get<int>(), a[1].get<int>(), a[2].get<double>()});
    }
    return InfluenceGame(n, arcs, std::move(thresholds), std::move(labels));
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("bad game JSON: ") + e.what());
  }
}

void save_game(const InfluenceGame& game, const std::string& path) { write_file(path, game_to_json(game)); }

InfluenceGame load_game(const std::string& path) { return game_from_json(read_file(path)); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << content;
}

}  // namespace lig
