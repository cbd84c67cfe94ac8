#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>

#include "cicrdbo/rf/dataset.hpp"

namespace cicrdbo::rf {

/// Synthetic table with the wholesale-customers schema.
///
/// 440 rows with exactly 298/142 Channel rows and 77/47/316 Region rows.
/// Spending columns are integer-rounded log-normal draws whose location
/// depends on the channel. Only for exercising the pipeline; it carries no
/// information about the real data.
Dataset synthetic_wholesale(std::uint64_t seed);

// Writes `data` (wholesale schema, unencoded) as CSV with the public header
// spelling, Channel first.
void write_wholesale_csv(std::ostream& out, const Dataset& data);

/// Label = parity of the signs of the first three features, flipped with
/// probability `label_noise`. Remaining features are pure noise. No model of
/// depth <= 2 can represent the three-way interaction.
Dataset synthetic_parity(std::size_t rows, std::size_t noise_features, double label_noise,
                         std::uint64_t seed);

}  // namespace cicrdbo::rf
