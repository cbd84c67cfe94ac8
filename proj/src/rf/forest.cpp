#include "cicrdbo/rf/forest.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <thread>

#include "cicrdbo/errors.hpp"
#include "cicrdbo/rng.hpp"

namespace cicrdbo::rf {

std::size_t RfHyperparams::features_per_split(std::size_t n_features) const {
  const auto m = static_cast<std::size_t>(
      std::ceil(feature_fraction * static_cast<double>(n_features) - 1e-12));
  return std::clamp<std::size_t>(m, 1, std::max<std::size_t>(n_features, 1));
}

void RfHyperparams::validate_search_range() const {
  if (n_trees < 10 || n_trees > 300) throw DomainError("n_trees must lie in [10, 300]");
  if (max_depth < 2 || max_depth > 20) throw DomainError("max_depth must lie in [2, 20]");
  if (min_samples_split < 2 || min_samples_split > 10) {
    throw DomainError("min_samples_split must lie in [2, 10]");
  }
  if (!(feature_fraction >= 0.1 && feature_fraction <= 1.0)) {
    throw DomainError("feature_fraction must lie in [0.1, 1]");
  }
}

double gini_impurity(std::size_t n0, std::size_t n1) {
  if (n0 + n1 == 0) throw DomainError("gini impurity of an empty node");
  const double n = static_cast<double>(n0 + n1);
  const double p0 = static_cast<double>(n0) / n;
  const double p1 = static_cast<double>(n1) / n;
  return 1.0 - p0 * p0 - p1 * p1;
}

double DecisionTree::predict_proba(std::span<const double> row) const {
  std::size_t i = 0;
  while (nodes_[i].feature >= 0) {
    const Node& n = nodes_[i];
    i = row[static_cast<std::size_t>(n.feature)] <= n.threshold ? n.left : n.right;
  }
  return nodes_[i].probability;
}

std::size_t DecisionTree::depth() const {
  if (nodes_.empty()) return 0;
  std::vector<std::size_t> depth(nodes_.size(), 0);
  std::size_t deepest = 0;
  // Children are always stored after their parent.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, depth[i]);
    if (nodes_[i].feature >= 0) {
      depth[nodes_[i].left] = depth[i] + 1;
      depth[nodes_[i].right] = depth[i] + 1;
    }
  }
  return deepest;
}

// Grows one tree over a column-major copy of the training matrix.
class TreeBuilder {
 public:
  TreeBuilder(const std::vector<double>& columns, const std::vector<int>& labels,
              std::size_t n_features, const RfHyperparams& hp, std::uint64_t tree_seed)
      : columns_(columns),
        labels_(labels),
        n_rows_(labels.size()),
        n_features_(n_features),
        hp_(hp),
        mtry_(hp.features_per_split(n_features)),
        node_seed_(derive_seed(tree_seed, 0x6E6F6465ULL)),
        importance_(n_features, 0.0) {}

  DecisionTree build(std::vector<std::uint32_t> samples) {
    DecisionTree tree;
    grow(tree, std::move(samples), 0, 1);
    return tree;
  }

  const std::vector<double>& importance() const { return importance_; }

 private:
  struct Candidate {
    int feature = -1;
    double threshold = 0.0;
    double child_impurity = 0.0;  // n_left * g_left + n_right * g_right
  };

  double value(std::size_t feature, std::uint32_t row) const {
    return columns_[feature * n_rows_ + row];
  }

  std::vector<std::size_t> sample_features(std::uint64_t path) const {
    Rng rng(derive_seed(node_seed_, path));
    std::vector<std::size_t> all(n_features_);
    std::iota(all.begin(), all.end(), std::size_t{0});
    for (std::size_t i = 0; i < mtry_; ++i) {
      std::swap(all[i], all[i + rng.index(n_features_ - i)]);
    }
    all.resize(mtry_);
    std::sort(all.begin(), all.end());
    return all;
  }

  Candidate best_split(const std::vector<std::uint32_t>& samples, std::uint64_t path) {
    const std::size_t n = samples.size();
    std::size_t total1 = 0;
    for (auto s : samples) total1 += static_cast<std::size_t>(labels_[s]);

    Candidate best;
    double best_score = std::numeric_limits<double>::infinity();
    std::vector<std::pair<double, int>> sorted(n);
    for (std::size_t f : sample_features(path)) {
      for (std::size_t i = 0; i < n; ++i) sorted[i] = {value(f, samples[i]), labels_[samples[i]]};
      std::sort(sorted.begin(), sorted.end());
      std::size_t left1 = 0;
      for (std::size_t i = 0; i + 1 < n; ++i) {
        left1 += static_cast<std::size_t>(sorted[i].second);
        if (sorted[i].first == sorted[i + 1].first) continue;
        const std::size_t nl = i + 1;
        const std::size_t nr = n - nl;
        const std::size_t right1 = total1 - left1;
        const double score = static_cast<double>(nl) * gini_impurity(nl - left1, left1) +
                             static_cast<double>(nr) * gini_impurity(nr - right1, right1);
        if (score < best_score) {
          best_score = score;
          double mid = 0.5 * (sorted[i].first + sorted[i + 1].first);
          if (!(mid < sorted[i + 1].first)) mid = sorted[i].first;
          best = {static_cast<int>(f), mid, score};
        }
      }
    }
    return best;
  }

  std::uint32_t grow(DecisionTree& tree, std::vector<std::uint32_t> samples, std::size_t depth,
                     std::uint64_t path) {
    const auto id = static_cast<std::uint32_t>(tree.nodes_.size());
    tree.nodes_.emplace_back();

    std::size_t n1 = 0;
    for (auto s : samples) n1 += static_cast<std::size_t>(labels_[s]);
    const std::size_t n = samples.size();
    tree.nodes_[id].probability = static_cast<double>(n1) / static_cast<double>(n);

    const bool pure = n1 == 0 || n1 == n;
    if (pure || depth >= hp_.max_depth || n < hp_.min_samples_split) return id;

    const Candidate split = best_split(samples, path);
    if (split.feature < 0) return id;

    std::vector<std::uint32_t> left;
    std::vector<std::uint32_t> right;
    for (auto s : samples) {
      (value(static_cast<std::size_t>(split.feature), s) <= split.threshold ? left : right)
          .push_back(s);
    }
    importance_[static_cast<std::size_t>(split.feature)] +=
        static_cast<double>(n) * gini_impurity(n - n1, n1) - split.child_impurity;
    samples.clear();
    samples.shrink_to_fit();

    const std::uint32_t l = grow(tree, std::move(left), depth + 1, path * 2);
    const std::uint32_t r = grow(tree, std::move(right), depth + 1, path * 2 + 1);
    auto& node = tree.nodes_[id];
    node.feature = split.feature;
    node.threshold = split.threshold;
    node.left = l;
    node.right = r;
    return id;
  }

  const std::vector<double>& columns_;
  const std::vector<int>& labels_;
  std::size_t n_rows_;
  std::size_t n_features_;
  RfHyperparams hp_;
  std::size_t mtry_;
  std::uint64_t node_seed_;
  std::vector<double> importance_;
};

ForestModel::ForestModel(std::vector<DecisionTree> trees, std::vector<double> importance)
    : trees_(std::move(trees)), importance_(std::move(importance)) {}

double ForestModel::predict_proba(std::span<const double> row) const {
  double sum = 0.0;
  for (const auto& t : trees_) sum += t.predict_proba(row);
  return trees_.empty() ? 0.0 : sum / static_cast<double>(trees_.size());
}

std::vector<double> ForestModel::predict_proba(const Dataset& data) const {
  std::vector<double> out(data.rows());
  for (std::size_t r = 0; r < data.rows(); ++r) out[r] = predict_proba(data.row(r));
  return out;
}

ForestModel train_forest(const Dataset& train, const RfHyperparams& hp, std::uint64_t seed,
                         const TrainOptions& options) {
  train.validate();
  if (train.rows() == 0) throw TrainingError("training set is empty");
  const auto counts = train.class_counts();
  if (counts[0] == 0 || counts[1] == 0) throw TrainingError("training set contains a single class");
  if (hp.n_trees == 0) throw DomainError("forest needs at least one tree");
  if (hp.min_samples_split < 2) throw DomainError("min_samples_split must be at least 2");
  if (hp.max_depth > 60) throw DomainError("max_depth above 60 is not supported");
  if (!(hp.feature_fraction > 0.0 && hp.feature_fraction <= 1.0)) {
    throw DomainError("feature_fraction must lie in (0, 1]");
  }

  const std::size_t n_rows = train.rows();
  const std::size_t n_features = train.cols();
  std::vector<double> columns(n_rows * n_features);
  for (std::size_t r = 0; r < n_rows; ++r) {
    for (std::size_t c = 0; c < n_features; ++c) columns[c * n_rows + r] = train.at(r, c);
  }

  std::vector<DecisionTree> trees(hp.n_trees);
  std::vector<std::vector<double>> importances(hp.n_trees);
  auto grow_tree = [&](std::size_t t) {
    const std::uint64_t tree_seed = derive_seed(seed, t);
    std::vector<std::uint32_t> samples(n_rows);
    if (options.bootstrap) {
      Rng rng(tree_seed);
      for (auto& s : samples) s = static_cast<std::uint32_t>(rng.index(n_rows));
    } else {
      std::iota(samples.begin(), samples.end(), 0U);
    }
    TreeBuilder builder(columns, train.labels, n_features, hp, tree_seed);
    trees[t] = builder.build(std::move(samples));
    importances[t] = builder.importance();
  };

  std::size_t threads = options.threads == 0 ? std::thread::hardware_concurrency() : options.threads;
  threads = std::clamp<std::size_t>(threads, 1, hp.n_trees);
  if (threads == 1) {
    for (std::size_t t = 0; t < hp.n_trees; ++t) grow_tree(t);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < threads; ++w) {
      pool.emplace_back([&] {
        for (std::size_t t = next++; t < hp.n_trees; t = next++) grow_tree(t);
      });
    }
  }

  std::vector<double> importance(n_features, 0.0);
  for (const auto& imp : importances) {
    for (std::size_t f = 0; f < n_features; ++f) importance[f] += imp[f];
  }
  const double total = std::accumulate(importance.begin(), importance.end(), 0.0);
  if (total > 0.0) {
    for (double& v : importance) v /= total;
  }
  return ForestModel(std::move(trees), std::move(importance));
}

double accuracy(const ForestModel& model, const Dataset& data, double threshold) {
  if (data.rows() == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t r = 0; r < data.rows(); ++r) {
    const int predicted = model.predict_proba(data.row(r)) >= threshold ? 1 : 0;
    hits += predicted == data.labels[r] ? 1 : 0;
  }
  return static_cast<double>(hits) / static_cast<double>(data.rows());
}

}  // namespace cicrdbo::rf
