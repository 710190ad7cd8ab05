#pragma once

#include <string>

#include "lig/game.hpp"

namespace lig {

// Game JSON schema:
//   {"n": int, "labels": [str], "thresholds": [float], "arcs": [[j, i, w], ...]}
// Indices are 0-based, an arc [j, i, w] carries j's influence factor w on i,
// and absent arcs mean weight 0. "labels" may be omitted. Nonzero self-arcs
// are rejected.
std::string game_to_json(const InfluenceGame& game);
InfluenceGame game_from_json(const std::string& text);
void save_game(const InfluenceGame& game, const std::string& path);
InfluenceGame load_game(const std::string& path);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace lig
