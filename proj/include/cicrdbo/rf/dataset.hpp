#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace cicrdbo::rf {

/// Dense binary-classification table stored row-major.
struct Dataset {
  std::vector<double> values;  // rows() * cols() entries
  std::vector<int> labels;     // 0 or 1
  std::vector<std::string> feature_names;
  std::vector<bool> categorical_mask;

  std::size_t rows() const { return labels.size(); }
  std::size_t cols() const { return feature_names.size(); }
  double at(std::size_t r, std::size_t c) const { return values[r * cols() + c]; }
  std::span<const double> row(std::size_t r) const {
    return {values.data() + r * cols(), cols()};
  }

  // Rows in the given order; duplicates allowed.
  Dataset subset(std::span<const std::size_t> rows) const;
  std::array<std::size_t, 2> class_counts() const;

  // Throws TrainingError on shape mismatch, non-binary labels or non-finite values.
  void validate() const;
};

// Feature columns of the wholesale-customers table, in storage order.
// "Delicassen" in the public file is normalised to "Delicatessen".
inline const std::vector<std::string> kWholesaleFeatures{
    "Region", "Fresh", "Milk", "Grocery", "Frozen", "Detergents_Paper", "Delicatessen"};

/// Reads the wholesale-customers CSV.
///
/// Channel (1 or 2) becomes the label (0 or 1); the seven other columns become
/// features in kWholesaleFeatures order with Region flagged categorical.
/// Columns may appear in any order; unknown extra columns are ignored.
/// Throws SchemaError naming a missing column and ParseError with the 1-based
/// data row index for a non-numeric cell or a Channel outside {1, 2}.
Dataset load_dataset(const std::filesystem::path& path);
Dataset parse_dataset(std::istream& in);

// Expands each categorical column into 0/1 indicators, one per distinct value
// (ascending), named "<column>=<value>". Non-categorical columns keep their order.
Dataset one_hot_encode(const Dataset& data);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Per-class shuffle, then the first round(ratio * n_class) rows of each class go
// to train. Throws DomainError unless 0 < train_ratio < 1.
Split stratified_split(const Dataset& data, double train_ratio, std::uint64_t seed);

// Held-out row indices of each of k stratified folds. Every fold's held-out
// and training parts contain both classes; a draw violating that is repeated
// once with a derived seed, then TrainingError is thrown.
std::vector<std::vector<std::size_t>> stratified_folds(const Dataset& data, std::size_t k,
                                                       std::uint64_t seed);

}  // namespace cicrdbo::rf
