#pragma once

#include <array>

#include "lig/game.hpp"

namespace lig::fixtures {

// LIG learned from the 1994-2004 natural court's SCDB voting records
// (Rehnquist court). Row i of the raw table lists the influence factors
// player i receives from the column players; the diagonal holds the
// thresholds.
inline constexpr int kSupremeCourtSize = 9;
extern const std::array<const char*, kSupremeCourtSize> kSupremeCourtJustices;
const std::array<std::array<double, kSupremeCourtSize>, kSupremeCourtSize>& supreme_court_table();
InfluenceGame supreme_court();

}  // namespace lig::fixtures
