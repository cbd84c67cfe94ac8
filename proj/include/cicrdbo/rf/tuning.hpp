#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cicrdbo/engine.hpp"
#include "cicrdbo/rf/dataset.hpp"
#include "cicrdbo/rf/forest.hpp"
#include "cicrdbo/rf/metrics.hpp"

namespace cicrdbo::rf {

// Stand-in for an untuned forest: 100 trees, depth 10, split 2, fraction 0.33.
RfHyperparams default_hyperparams();

/// Unit-box encoding of the forest hyperparameters.
///
/// Coordinates are clamped to [0, 1] and mapped affinely; integer fields use
/// round-half-up:
///   n_trees = round(10 + 290 u1), max_depth = round(2 + 18 u2),
///   min_samples_split = round(2 + 8 u3), feature_fraction = 0.1 + 0.9 u4.
/// Throws DomainError unless the position has 4 finite coordinates.
RfHyperparams decode_hyperparams(std::span<const double> position);

// Inverse of decode_hyperparams for values inside the tuning ranges.
Position encode_hyperparams(const RfHyperparams& hp);

// Mean held-out AUC over stratified k folds. Forests are seeded with
// forest_seed so the score is a deterministic function of its arguments.
double cross_validated_auc(const Dataset& train, const RfHyperparams& hp,
                           const std::vector<std::vector<std::size_t>>& folds,
                           std::uint64_t forest_seed);

struct TuneOptions {
  std::size_t cv_folds = 5;
  double train_ratio = 0.7;
  std::uint64_t data_seed = 0;  // split, folds and forest seeds
};

struct TuneResult {
  std::string algorithm;
  RfHyperparams best;
  double cv_auc = 0.0;
  ClassificationMetrics test_metrics;
  double default_cv_auc = 0.0;
  std::size_t distinct_evaluations = 0;
  RunRecord run;
};

/// Hyperparameter search for the forest.
///
/// One-hot encodes categorical columns, splits train/test, and minimises the
/// negative mean CV AUC on the training split with the configured optimizer
/// over the 4-dimensional unit box. The default configuration is injected as
/// the first initial individual, so cv_auc >= default_cv_auc always. The best
/// configuration is retrained on the whole training split and scored on the
/// held-out test split.
TuneResult tune(const Dataset& data, const OptimizerConfig& config, const TuneOptions& options = {});

struct TableRow {
  std::string model;
  ClassificationMetrics metrics;
};

// Test-split metrics of a forest trained on the training split with `hp`.
ClassificationMetrics holdout_metrics(const Dataset& data, const RfHyperparams& hp,
                                      const TuneOptions& options);

}  // namespace cicrdbo::rf
