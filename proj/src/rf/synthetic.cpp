#include "cicrdbo/rf/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "cicrdbo/rng.hpp"

namespace cicrdbo::rf {

namespace {

// Log-space location of Fresh, Milk, Grocery, Frozen, Detergents_Paper,
// Delicatessen for channel 1 and channel 2.
constexpr double kLogMean[2][6] = {
    {9.2, 7.6, 7.9, 7.9, 5.9, 6.8},
    {8.5, 8.9, 9.3, 7.1, 8.6, 7.1},
};
constexpr double kLogSd = 1.0;

}  // namespace

Dataset synthetic_wholesale(std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> labels;
  labels.insert(labels.end(), 298, 0);
  labels.insert(labels.end(), 142, 1);
  rng.shuffle(labels);

  std::vector<double> regions;
  regions.insert(regions.end(), 77, 1.0);
  regions.insert(regions.end(), 47, 2.0);
  regions.insert(regions.end(), 316, 3.0);
  rng.shuffle(regions);

  Dataset data;
  data.feature_names = kWholesaleFeatures;
  data.categorical_mask.assign(kWholesaleFeatures.size(), false);
  data.categorical_mask[0] = true;
  data.labels = labels;
  for (std::size_t r = 0; r < labels.size(); ++r) {
    data.values.push_back(regions[r]);
    for (std::size_t f = 0; f < 6; ++f) {
      const double v = std::exp(kLogMean[labels[r]][f] + kLogSd * rng.normal());
      data.values.push_back(std::max(3.0, std::round(v)));
    }
  }
  return data;
}

void write_wholesale_csv(std::ostream& out, const Dataset& data) {
  out << "Channel,Region,Fresh,Milk,Grocery,Frozen,Detergents_Paper,Delicassen\n";
  for (std::size_t r = 0; r < data.rows(); ++r) {
    out << (data.labels[r] + 1);
    for (double v : data.row(r)) out << ',' << static_cast<long long>(v);
    out << '\n';
  }
}

Dataset synthetic_parity(std::size_t rows, std::size_t noise_features, double label_noise,
                         std::uint64_t seed) {
  Rng rng(seed);
  Dataset data;
  const std::size_t cols = 3 + noise_features;
  for (std::size_t c = 0; c < cols; ++c) data.feature_names.push_back("x" + std::to_string(c));
  data.categorical_mask.assign(cols, false);
  for (std::size_t r = 0; r < rows; ++r) {
    int parity = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = rng.uniform(-1.0, 1.0);
      if (c < 3 && v > 0.0) parity ^= 1;
      data.values.push_back(v);
    }
    if (rng.uniform() < label_noise) parity ^= 1;
    data.labels.push_back(parity);
  }
  return data;
}

}  // namespace cicrdbo::rf
