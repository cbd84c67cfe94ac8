#include "cicrdbo/rf/tuning.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

#include "cicrdbo/errors.hpp"

namespace cicrdbo::rf {

RfHyperparams default_hyperparams() { return {100, 10, 2, 0.33}; }

namespace {

std::size_t round_half_up(double v) { return static_cast<std::size_t>(std::floor(v + 0.5)); }

Dataset prepare(const Dataset& data) {
  const bool has_categorical =
      std::find(data.categorical_mask.begin(), data.categorical_mask.end(), true) !=
      data.categorical_mask.end();
  return has_categorical ? one_hot_encode(data) : data;
}

constexpr std::uint64_t kFoldStream = 1;
constexpr std::uint64_t kForestStream = 2;

}  // namespace

RfHyperparams decode_hyperparams(std::span<const double> position) {
  if (position.size() != 4) throw DomainError("hyperparameter position must have 4 coordinates");
  double u[4];
  for (std::size_t i = 0; i < 4; ++i) {
    if (!std::isfinite(position[i])) throw DomainError("non-finite hyperparameter coordinate");
    u[i] = std::clamp(position[i], 0.0, 1.0);
  }
  RfHyperparams hp;
  hp.n_trees = round_half_up(10.0 + u[0] * 290.0);
  hp.max_depth = round_half_up(2.0 + u[1] * 18.0);
  hp.min_samples_split = round_half_up(2.0 + u[2] * 8.0);
  hp.feature_fraction = 0.1 + u[3] * 0.9;
  return hp;
}

Position encode_hyperparams(const RfHyperparams& hp) {
  hp.validate_search_range();
  return {(static_cast<double>(hp.n_trees) - 10.0) / 290.0,
          (static_cast<double>(hp.max_depth) - 2.0) / 18.0,
          (static_cast<double>(hp.min_samples_split) - 2.0) / 8.0,
          (hp.feature_fraction - 0.1) / 0.9};
}

double cross_validated_auc(const Dataset& train, const RfHyperparams& hp,
                           const std::vector<std::vector<std::size_t>>& folds,
                           std::uint64_t forest_seed) {
  if (folds.empty()) throw DomainError("no folds given");
  double sum = 0.0;
  for (std::size_t k = 0; k < folds.size(); ++k) {
    std::vector<bool> held(train.rows(), false);
    for (std::size_t r : folds[k]) held[r] = true;
    std::vector<std::size_t> fit_rows;
    for (std::size_t r = 0; r < train.rows(); ++r) {
      if (!held[r]) fit_rows.push_back(r);
    }
    const Dataset fit = train.subset(fit_rows);
    const Dataset check = train.subset(folds[k]);
    const ForestModel model = train_forest(fit, hp, derive_seed(forest_seed, k));
    sum += roc_auc(model.predict_proba(check), check.labels);
  }
  return sum / static_cast<double>(folds.size());
}

ClassificationMetrics holdout_metrics(const Dataset& data, const RfHyperparams& hp,
                                      const TuneOptions& options) {
  const Split split = stratified_split(prepare(data), options.train_ratio, options.data_seed);
  const ForestModel model = train_forest(split.train, hp, derive_seed(options.data_seed, kForestStream));
  return evaluate_model(model, split.test);
}

TuneResult tune(const Dataset& data, const OptimizerConfig& config, const TuneOptions& options) {
  config.validate();
  const Split split = stratified_split(prepare(data), options.train_ratio, options.data_seed);
  const auto folds =
      stratified_folds(split.train, options.cv_folds, derive_seed(options.data_seed, kFoldStream));
  const std::uint64_t forest_seed = derive_seed(options.data_seed, kForestStream);
  const std::size_t n_features = split.train.cols();

  // Memoised on the decoded values that change the trained forest.
  using Key = std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>;
  struct Cache {
    std::mutex mutex;
    std::map<Key, double> scores;
  };
  auto cache = std::make_shared<Cache>();
  const Dataset& train = split.train;
  auto fitness = [&, cache](std::span<const double> u) {
    const RfHyperparams hp = decode_hyperparams(u);
    const Key key{hp.n_trees, hp.max_depth, hp.min_samples_split, hp.features_per_split(n_features)};
    {
      std::lock_guard lock(cache->mutex);
      if (auto it = cache->scores.find(key); it != cache->scores.end()) return it->second;
    }
    const double score = -cross_validated_auc(train, hp, folds, forest_seed);
    std::lock_guard lock(cache->mutex);
    cache->scores.emplace(key, score);
    return score;
  };

  const Objective objective("rf_cv_auc", SearchBox::uniform(4, 0.0, 1.0), fitness, -1.0);
  const Position injected = encode_hyperparams(default_hyperparams());

  TuneResult result;
  result.algorithm = to_string(config.algorithm);
  result.default_cv_auc = -objective.evaluate(injected);
  result.run = run_optimizer(config, objective, std::span<const Position>(&injected, 1));
  result.best = decode_hyperparams(result.run.final_best_position);
  result.cv_auc = -result.run.final_best_fitness;
  result.distinct_evaluations = cache->scores.size();

  const ForestModel model = train_forest(split.train, result.best, forest_seed);
  result.test_metrics = evaluate_model(model, split.test);
  return result;
}

}  // namespace cicrdbo::rf
