#include "cicrdbo/rf/metrics.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

#include "cicrdbo/errors.hpp"

namespace cicrdbo::rf {

ConfusionCounts confusion(std::span<const double> scores, std::span<const int> labels,
                          double threshold) {
  if (scores.size() != labels.size()) throw DomainError("scores and labels differ in length");
  ConfusionCounts c;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    const bool predicted = scores[i] >= threshold;
    const bool actual = labels[i] == 1;
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  }
  return c;
}

ClassificationMetrics threshold_metrics(const ConfusionCounts& c) {
  auto ratio = [](std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
  };
  ClassificationMetrics m;
  m.precision = ratio(c.tp, c.tp + c.fp);
  m.recall = ratio(c.tp, c.tp + c.fn);
  const double denom = m.precision + m.recall;
  m.f1 = denom > 0.0 ? 2.0 * m.precision * m.recall / denom : 0.0;
  return m;
}

double roc_auc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DomainError("scores and labels differ in length");
  const std::size_t n = scores.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  double positive_rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j < n && scores[order[j]] == scores[order[i]]) ++j;
    const double avg_rank = 0.5 * static_cast<double>(i + 1 + j);  // mean of ranks i+1..j
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) {
        positive_rank_sum += avg_rank;
        ++n_pos;
      }
    }
    i = j;
  }
  const std::size_t n_neg = n - n_pos;
  if (n_pos == 0 || n_neg == 0) return 0.5;
  const double np = static_cast<double>(n_pos);
  const double u = positive_rank_sum - np * (np + 1.0) / 2.0;
  return std::clamp(u / (np * static_cast<double>(n_neg)), 0.0, 1.0);
}

ClassificationMetrics compute_metrics(std::span<const double> scores, std::span<const int> labels,
                                      double threshold) {
  ClassificationMetrics m = threshold_metrics(confusion(scores, labels, threshold));
  m.auc = roc_auc(scores, labels);
  return m;
}

ClassificationMetrics evaluate_model(const ForestModel& model, const Dataset& test,
                                     double threshold) {
  if (test.rows() == 0) throw TrainingError("cannot evaluate on an empty test set");
  const std::vector<double> scores = model.predict_proba(test);
  return compute_metrics(scores, test.labels, threshold);
}

}  // namespace cicrdbo::rf
