#include "lig/fixtures.hpp"

namespace lig::fixtures {

const std::array<const char*, kSupremeCourtSize> kSupremeCourtJustices = {
    "Scalia", "Thomas", "Rehnquist", "OConnor", "Kennedy", "Breyer", "Souter", "Ginsburg", "Stevens"};

const std::array<std::array<double, kSupremeCourtSize>, kSupremeCourtSize>& supreme_court_table() {
  static const std::array<std::array<double, kSupremeCourtSize>, kSupremeCourtSize> table = {{
      {0.0120, 0.4282, 0.0317, 0.0717, 0.0721, 0.0772, -0.0321, 0.1362, -0.1388},
      {0.2930, -0.1020, 0.1245, -0.0010, 0.0183, -0.1497, 0.0839, -0.1311, 0.0965},
      {0.0671, 0.1762, -0.0834, 0.0973, 0.1254, 0.0921, -0.0861, 0.1336, -0.1388},
      {0.0580, 0.1073, 0.1045, -0.2522, -0.0537, 0.2313, 0.0325, -0.1245, -0.0359},
      {0.0666, 0.1236, 0.1863, -0.0255, -0.2634, 0.0548, -0.1115, -0.0149, 0.1532},
      {0.1009, -0.2191, 0.0570, 0.2208, -0.0061, -0.0209, 0.0627, 0.1102, 0.2023},
      {0.0368, 0.1192, -0.0476, 0.0762, -0.0338, 0.1429, -0.0619, 0.2783, 0.2034},
      {0.0779, -0.1000, 0.1613, -0.0962, -0.0089, 0.1199, 0.1999, -0.0381, 0.1978},
      {-0.1379, 0.1088, -0.1721, -0.0568, 0.1053, 0.1374, 0.0932, 0.1274, -0.0611},
  }};
  return table;
}

InfluenceGame supreme_court() {
  const auto& t = supreme_court_table();
  std::vector<Arc> arcs;
  std::vector<double> b(kSupremeCourtSize);
  for (int i = 0; i < kSupremeCourtSize; ++i) {
    b[i] = t[i][i];
    for (int j = 0; j < kSupremeCourtSize; ++j)
      if (j != i) arcs.push_back({j, i, t[i][j]});
  }
  std::vector<std::string> labels(kSupremeCourtJustices.begin(), kSupremeCourtJustices.end());
  return InfluenceGame(kSupremeCourtSize, arcs, std::move(b), std::move(labels));
}

}  // namespace lig::fixtures
