#pragma once

#include <cstddef>
#include <span>

#include "cicrdbo/rf/dataset.hpp"
#include "cicrdbo/rf/forest.hpp"

namespace cicrdbo::rf {

struct ClassificationMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
};

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;
};

// A score counts as a positive prediction when score >= threshold.
ConfusionCounts confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold = 0.5);

// Precision, recall and F1 of the positive class; each is 0 when its
// denominator is 0. The auc field is left at 0.
ClassificationMetrics threshold_metrics(const ConfusionCounts& counts);

// Mann-Whitney rank statistic with average ranks for ties, so tied
// positive/negative pairs contribute 1/2. Returns 0.5 when a class is absent.
double roc_auc(std::span<const double> scores, std::span<const int> labels);

ClassificationMetrics compute_metrics(std::span<const double> scores, std::span<const int> labels,
                                      double threshold = 0.5);

// Throws TrainingError on an empty test set.
ClassificationMetrics evaluate_model(const ForestModel& model, const Dataset& test,
                                     double threshold = 0.5);

}  // namespace cicrdbo::rf
